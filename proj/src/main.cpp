#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ict/cone_analytic.hpp"

using nlohmann::json;
using namespace ict;

namespace {

struct run_config {
  std::string file;
  std::string perversity_name = "middle";
  std::string section = "circle";
  std::string ladder_file;
  std::string format = "table";
  std::string bc = "rel", ext = "plus";
  double r = 1, l = 1, l1 = 0, l2 = 0, nu = 0.5, alpha = 0.5;
  std::vector<double> L = {2 * 3.141592653589793, 2 * 3.141592653589793};
  std::vector<double> hpoly;
  double tol = 1e-6, cutoff = 1e4;
  bool relative = false, zeta = false;
  size_t count = 5;
};

double env_tol(double fallback) {
  if (const char* s = std::getenv("ICT_DEFAULT_TOL")) return std::atof(s);
  return fallback;
}

perversity make_perversity(const std::string& name, int n) {
  if (name == "middle") return perversity::lower_middle(n);
  if (name == "middle-c") return perversity::lower_middle(n).complement();
  if (name == "zero") return perversity::zero(n);
  if (name == "top") return perversity::top(n);
  throw invalid_perversity("unknown perversity '" + name + "'");
}

section_spectrum make_spectrum(const run_config& c) {
  if (c.section == "circle") return circle_spectrum(c.r, c.cutoff);
  if (c.section == "torus") {
    if (c.L.size() != 2) throw validation_error("torus needs two side lengths");
    return flat_torus_spectrum(c.L[0], c.L[1], c.cutoff);
  }
  if (c.section == "ladder") {
    std::ifstream in(c.ladder_file);
    if (!in) throw validation_error("cannot open ladder file " + c.ladder_file);
    json j = json::parse(in);
    section_spectrum S;
    S.kind = section_spectrum::custom;
    S.m = j.at("m").get<int>();
    S.har = j.at("har").get<std::vector<long>>();
    S.chi = j.value("chi", 0L);
    for (auto& deg : j.at("cex")) {
      std::vector<spectrum_line> lad;
      for (auto& e : deg) lad.push_back({e.at(0).get<double>(), e.at(1).get<long>()});
      S.cex.push_back(std::move(lad));
    }
    S.validate();
    return S;
  }
  throw validation_error("unknown section '" + c.section + "'");
}

cone_geometry make_geometry(const run_config& c) {
  cone_geometry G;
  G.S = make_spectrum(c);
  G.l = c.l;
  G.prof.c = c.hpoly;
  G.validate();
  return G;
}

json config_json(const run_config& c) {
  json j;
  j["tol"] = c.tol;
  j["cutoff"] = c.cutoff;
  if (!c.file.empty()) j["file"] = c.file;
  return j;
}

chain_complex section_of_file(const cw_complex& K) {
  auto it = K.subcomplexes.find("base");
  if (it == K.subcomplexes.end()) return make_chain_complex(K);
  std::set<std::string> ids(it->second.begin(), it->second.end());
  return subcomplex_inclusion(K, ids).source;
}

void emit(const run_config& c, const json& j, const std::string& table) {
  if (c.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << table;
}

std::string group_str(const homology_group& g) {
  std::string s = "rank " + std::to_string(g.rank);
  if (!g.torsion.empty()) {
    s += ", torsion";
    for (auto& t : g.torsion) s += " " + t.get_str();
  }
  return s;
}

int cmd_homology(const run_config& c) {
  cw_complex K = load_complex(c.file);
  chain_complex C = make_chain_complex(K);
  auto h = homology(C);
  json j = {{"schema", 1}, {"command", "homology"}, {"config", config_json(c)}};
  std::string tab;
  for (int q = 0; q <= C.top; ++q) {
    json g = {{"degree", q}, {"rank", h[q].rank}};
    for (auto& t : h[q].torsion) g["torsion"].push_back(t.get_str());
    j["groups"].push_back(g);
    tab += "H_" + std::to_string(q) + ": " + group_str(h[q]) + "\n";
  }
  emit(c, j, tab);
  return 0;
}

int cmd_ihomology(const run_config& c) {
  cw_complex K = load_complex(c.file);
  chain_complex W = section_of_file(K);
  perversity p = make_perversity(c.perversity_name, W.top + 1);
  auto X = intersection_cone_complex(W, p, c.relative);
  auto h = intersection_homology(X);  // throws closed_form_mismatch on failure
  json j = {{"schema", 1},
            {"command", "ihomology"},
            {"config", config_json(c)},
            {"perversity", c.perversity_name},
            {"relative", c.relative},
            {"cutoff_degree", X.a},
            {"closed_form", "PASS"}};
  std::string tab;
  for (int q = 0; q <= X.C.top; ++q) {
    json g = {{"degree", q}, {"rank", h[q].rank}};
    for (auto& t : h[q].torsion) g["torsion"].push_back(t.get_str());
    j["groups"].push_back(g);
    tab += "IH_" + std::to_string(q) + ": " + group_str(h[q]) + "\n";
  }
  tab += "closed form: PASS\n";
  emit(c, j, tab);
  return 0;
}

int cmd_itorsion(const run_config& c) {
  cw_complex K = load_complex(c.file);
  chain_complex W = section_of_file(K);
  perversity p = make_perversity(c.perversity_name, W.top + 1);
  auto res = intersection_torsion_cone(W, p, c.relative);  // throws on mismatch
  json j = {{"schema", 1},
            {"command", "itorsion"},
            {"config", config_json(c)},
            {"perversity", c.perversity_name},
            {"relative", c.relative},
            {"closed_form_rat", res.closed_form.rat.get_str()},
            {"direct_rat", res.direct.rat.get_str()},
            {"log_value", res.direct.log_value()},
            {"agree", res.agree}};
  std::string tab = "closed form: " + res.closed_form.rat.get_str() +
                    "\ndirect:      " + res.direct.rat.get_str() +
                    "\nagree: " + (res.agree ? "yes" : "no") + "\n";
  emit(c, j, tab);
  return 0;
}

json breakdown_json(const torsion_breakdown& B) {
  return {{"t0_t1_reg", B.t0_t1},       {"t2", B.t2},
          {"t3", B.t3},                 {"chi_term", B.chi_term},
          {"log_T_global", B.log_T_global}, {"closed_form", B.closed_form},
          {"chi", B.chi},               {"error_bound", B.error},
          {"perversity", B.perv == middle::lower ? "middle" : "middle-c"}};
}

int cmd_cone_analytic(const run_config& c) {
  cone_geometry G = make_geometry(c);
  middle p = c.perversity_name == "middle-c" ? middle::upper : middle::lower;
  torsion_breakdown B = c.l2 > 0 ? frustum_global_torsion(G, c.l1, c.l2, p)
                                 : cone_global_torsion(G, p);
  json j = {{"schema", 1},
            {"command", "cone-analytic"},
            {"config", config_json(c)},
            {"section", c.section},
            {"l", c.l},
            {"breakdown", breakdown_json(B)}};
  if (c.l2 > 0) {
    j["l1"] = c.l1;
    j["l2"] = c.l2;
  }
  char tab[256];
  std::snprintf(tab, sizeof tab, "log T_global = %.12g  (closed form %.12g, bound %.2g)\n",
                B.log_T_global, B.closed_form, B.error);
  emit(c, j, tab);
  return 0;
}

int cmd_verify_cm(const run_config& c) {
  cone_geometry G = make_geometry(c);
  middle p = c.perversity_name == "middle-c" ? middle::upper : middle::lower;
  cm_report R = cheeger_muller_check(G, p, std::min(c.tol, 1e-9));
  json j = {{"schema", 1},
            {"command", "verify-cm"},
            {"config", config_json(c)},
            {"section", c.section},
            {"log_T_global", R.log_T_global},
            {"log_tau", R.log_tau},
            {"a_comb", R.a_comb},
            {"a_analy", R.a_analy},
            {"residual", R.residual},
            {"bound", R.bound},
            {"pass", std::abs(R.residual) <= c.tol}};
  char tab[512];
  std::snprintf(tab, sizeof tab,
                "log T_global = %.12g\nlog tau_RS   = %.12g\nA_comb = %.12g  A_analy = %.12g\n"
                "residual = %.3g  (tolerance %.3g): %s\n",
                R.log_T_global, R.log_tau, R.a_comb, R.a_analy, R.residual, c.tol,
                std::abs(R.residual) <= c.tol ? "PASS" : "FAIL");
  emit(c, j, tab);
  return std::abs(R.residual) <= c.tol ? 0 : 4;
}

int cmd_sl(const run_config& c) {
  sl_problem P;
  P.nu = c.nu;
  P.alpha = c.alpha;
  P.l = c.l;
  P.prof.c = c.hpoly;
  P.bc = c.bc == "abs" ? sl_problem::abs : sl_problem::rel;
  P.ext = c.ext == "minus" ? sl_problem::minus : sl_problem::plus;
  auto lam = eigenvalues(P, c.count);  // throws bracket_failure
  json j = {{"schema", 1}, {"command", "sl"},   {"config", config_json(c)},
            {"nu", c.nu},  {"alpha", c.alpha},  {"bc", c.bc},
            {"ext", c.ext}, {"l", c.l},         {"eigenvalues", lam}};
  std::string tab;
  for (size_t k = 0; k < lam.size(); ++k) {
    char line[64];
    std::snprintf(line, sizeof line, "lambda_%zu = %.12g\n", k + 1, lam[k]);
    tab += line;
  }
  if (c.zeta) {
    double z = zeta_determinant(P);
    j["zeta_det"] = z;
    char line[64];
    std::snprintf(line, sizeof line, "-zeta'(0) = %.12g\n", z);
    tab += line;
  }
  emit(c, j, tab);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  run_config c;
  c.tol = env_tol(c.tol);
  CLI::App app{"intersection homology and torsion of spaces with conical singularities"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", c.format)->check(CLI::IsMember({"table", "json"}));
    s->add_option("--tol", c.tol);
  };
  auto add_section = [&](CLI::App* s) {
    s->add_option("--section", c.section)->check(CLI::IsMember({"circle", "torus", "ladder"}));
    s->add_option("--r", c.r);
    s->add_option("--L", c.L)->expected(2);
    s->add_option("--ladder", c.ladder_file);
    s->add_option("--l", c.l);
    s->add_option("--hpoly", c.hpoly, "profile polynomial tail: h(x) = x(1 + c0 x + ...)");
    s->add_option("--cutoff", c.cutoff);
    s->add_option("--perversity", c.perversity_name)
        ->check(CLI::IsMember({"middle", "middle-c", "zero", "top"}));
  };

  auto* s_hom = app.add_subcommand("homology", "integral homology of a cell complex file");
  s_hom->add_option("file", c.file)->required();
  add_common(s_hom);

  auto* s_ihom = app.add_subcommand("ihomology", "intersection homology of a coned section");
  s_ihom->add_option("file", c.file)->required();
  s_ihom->add_option("--perversity", c.perversity_name)
      ->check(CLI::IsMember({"middle", "middle-c", "zero", "top"}));
  s_ihom->add_flag("--relative", c.relative);
  add_common(s_ihom);

  auto* s_itor = app.add_subcommand("itorsion", "intersection R-torsion of a coned section");
  s_itor->add_option("file", c.file)->required();
  s_itor->add_option("--perversity", c.perversity_name)
      ->check(CLI::IsMember({"middle", "middle-c", "zero", "top"}));
  s_itor->add_flag("--relative", c.relative);
  add_common(s_itor);

  auto* s_cone = app.add_subcommand("cone-analytic", "global analytic torsion of the cone/frustum");
  add_section(s_cone);
  s_cone->add_option("--l1", c.l1);
  s_cone->add_option("--l2", c.l2);
  add_common(s_cone);

  auto* s_cm = app.add_subcommand("verify-cm", "comparison of analytic and combinatorial torsion");
  add_section(s_cm);
  add_common(s_cm);

  auto* s_sl = app.add_subcommand("sl", "interval operator eigenvalues and determinant");
  s_sl->add_option("--nu", c.nu);
  s_sl->add_option("--alpha", c.alpha);
  s_sl->add_option("--bc", c.bc)->check(CLI::IsMember({"rel", "abs"}));
  s_sl->add_option("--ext", c.ext)->check(CLI::IsMember({"plus", "minus"}));
  s_sl->add_option("--l", c.l);
  s_sl->add_option("--hpoly", c.hpoly);
  s_sl->add_option("--count", c.count);
  s_sl->add_flag("--zeta", c.zeta);
  add_common(s_sl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s_hom->parsed()) return cmd_homology(c);
    if (s_ihom->parsed()) return cmd_ihomology(c);
    if (s_itor->parsed()) return cmd_itorsion(c);
    if (s_cone->parsed()) return cmd_cone_analytic(c);
    if (s_cm->parsed()) return cmd_verify_cm(c);
    if (s_sl->parsed()) return cmd_sl(c);
  } catch (const closed_form_mismatch& e) {
    std::cerr << "closed-form mismatch: " << e.what() << "\n";
    return 3;
  } catch (const assembly_mismatch& e) {
    std::cerr << "assembly mismatch: " << e.what() << "\n";
    return 3;
  } catch (const bracket_failure& e) {
    std::cerr << "bracket failure: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

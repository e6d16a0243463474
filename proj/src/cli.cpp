#include "affinv/cli.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "affinv/characteristics.hpp"
#include "affinv/compat.hpp"
#include "affinv/invariantpde.hpp"
#include "affinv/surface.hpp"
#include "affinv/symmetry.hpp"
#include "json.hpp"

namespace affinv {

namespace {

using nlohmann::json;

Scalar scalar_from_string(const std::string& s) {
  if (s.find_first_of(".eE") != std::string::npos)
    return Scalar::from_double(std::stod(s));
  return Scalar(parse_rational(s));
}

Scalar scalar_from_json(const json& v) {
  if (v.is_string()) return scalar_from_string(v.get<std::string>());
  if (v.is_number_integer()) return Scalar(Rational(v.get<long>()));
  return Scalar::from_double(v.get<double>());
}

std::pair<Scalar, Scalar> parse_at(const std::string& at) {
  auto comma = at.find(',');
  if (comma == std::string::npos)
    throw ParseError("expected x,y", 0);
  return {scalar_from_string(at.substr(0, comma)),
          scalar_from_string(at.substr(comma + 1))};
}

json jet_to_json(const JetPoint& j) {
  json derivs = json::object();
  for (const auto& [word, v] : j.derivs()) derivs[word] = v.str();
  return {{"order", j.order()},
          {"x", j.x().str()},
          {"y", j.y().str()},
          {"u", j.u().str()},
          {"derivs", derivs}};
}

JetPoint jet_from_json(const json& v) {
  JetPoint j(v.at("order").get<int>(), scalar_from_json(v.at("x")),
             scalar_from_json(v.at("y")), scalar_from_json(v.at("u")));
  for (const auto& [word, val] : v.at("derivs").items())
    j.set(word, scalar_from_json(val));
  return j;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EvalError("cannot open file: " + path);
  json v;
  in >> v;
  return v;
}

AffineMap3 map_from_json(const json& v) {
  AffineMap3 g;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) g.M[r][c] = scalar_from_json(v.at("M")[r][c]);
    g.t[r] = scalar_from_json(v.at("t")[r]);
  }
  return g;
}

json contact_to_json(const ContactVector& v) {
  return json::array(
      {v.y1.str(), v.y2.str(), v.p11.str(), v.p12.str(), v.p22.str()});
}

JetPoint surface_jet(const std::string& surface, const std::string& at,
                     int order, const std::string& mode) {
  SurfaceExpr e = parse_surface(surface);
  auto [x, y] = parse_at(at);
  TaylorMap f = surface_taylor(e, x, y, std::max(order + 1, 3));
  if (mode == "float") f = f.to_float();
  return jet_of_surface(f, order);
}

// residuals of the solved form of the plus-region system
std::pair<Scalar, Scalar> conv_residuals_at(const JetPoint& j) {
  Scalar uxx = j.d("xx"), uxy = j.d("xy"), uyy = j.d("yy");
  if (uyy.is_zero()) throw DegenerateSample();
  Scalar uyy2 = uyy * uyy;
  Scalar r1 = j.d("xxx") + uxx *
                               (Scalar(2) * uxy * j.d("yyy") -
                                Scalar(3) * j.d("xyy") * uyy) /
                               uyy2;
  Scalar r2 = j.d("xxy") - (uxx * uyy * j.d("yyy") -
                            Scalar(4) * uxy * uxy * j.d("yyy") +
                            Scalar(6) * uxy * j.d("xyy") * uyy) /
                               (Scalar(3) * uyy2);
  return {r1, r2};
}

bool verify_split(std::vector<std::string>& names) {
  Poly uyy3 = Poly::variable(VUYY).pow(3);
  Poly det = Poly::variable(VUXX) * Poly::variable(VUYY) -
             Poly::variable(VUXY) * Poly::variable(VUXY);
  Poly head = uyy3 * Poly::variable(VUXXX) + splitting_Q();
  bool ok = uyy3 * F_poly() == head * head + det * splitting_P() * splitting_P();
  if (ok) names.push_back("eqSplittingBrutale");
  SqrtExt prod = minus_factor(1) * minus_factor(2);
  bool ok2 = prod.s_free() && prod.re == -(uyy3 * F_poly());
  if (ok2) names.push_back("minus-factor-product");
  return ok && ok2;
}

bool verify_pick(std::vector<std::string>& names) {
  GradedRho p = pick_symbolic().normalized();
  if (p.parts().size() != 1) return false;
  auto it = p.parts().begin();
  Poly r2F = (GradedRho::r() * GradedRho::r() * F_poly()).scaled(Rational(1, 4));
  bool ok = it->first == -19 && it->second == r2F;
  if (ok) names.push_back("pick-proportionality");
  return ok;
}

bool verify_compat(std::vector<std::string>& names) {
  try {
    cross_residuals(build_prolonged_system());
  } catch (const IdentityFailed&) {
    return false;
  }
  names.push_back("cross-residual-4");
  names.push_back("cross-residual-5");
  return true;
}

bool verify_char(std::vector<std::string>& names) {
  SqrtExt unit = recover_pde_unit();
  bool ok = unit.re == -Poly::variable(VUYY) && unit.im.is_zero() &&
            recover_pde_symbolic() == unit * minus_factor(1);
  if (ok) names.push_back("characteristic-determinant");
  return ok;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"verification toolkit for the affine-invariant third-order PDE"};
  app.fallthrough();

  std::string mode = "exact", outfile, surface, at = "0,0", jetfile, mapfile,
              field, suite = "all", coeffs, branch = "+";
  double tol = 1e-9;
  unsigned seed = 0;
  int order = 3, generator = -1, samples = 25;

  app.add_option("--mode", mode)->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", tol);
  app.add_option("--seed", seed);
  app.add_option("--out", outfile);

  auto* jet = app.add_subcommand("jet");
  jet->fallthrough();
  auto* jet_eval = jet->add_subcommand("eval");
  jet_eval->fallthrough();
  jet_eval->add_option("--surface", surface)->required();
  jet_eval->add_option("--at", at);
  jet_eval->add_option("--order", order)->check(CLI::Range(0, 5));

  auto* invariant = app.add_subcommand("invariant");
  invariant->fallthrough();
  invariant->add_option("--jet", jetfile);
  invariant->add_option("--surface", surface);
  invariant->add_option("--at", at);

  auto* symmetry = app.add_subcommand("symmetry");
  symmetry->fallthrough();
  auto* sym_check = symmetry->add_subcommand("check");
  sym_check->fallthrough();
  sym_check->add_option("--generator", generator)->check(CLI::Range(0, 11));
  sym_check->add_option("--field", field);

  auto* action = app.add_subcommand("action");
  action->fallthrough();
  auto* action_apply = action->add_subcommand("apply");
  action_apply->fallthrough();
  action_apply->add_option("--map", mapfile)->required();
  action_apply->add_option("--surface", surface)->required();
  action_apply->add_option("--at", at);
  action_apply->add_option("--order", order)->check(CLI::Range(0, 5));

  auto* identities = app.add_subcommand("identities");
  identities->fallthrough();
  auto* ident_verify = identities->add_subcommand("verify");
  ident_verify->fallthrough();
  ident_verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"all", "split", "pick", "compat", "char"}));

  auto* compat = app.add_subcommand("compat");
  compat->fallthrough();
  auto* compat_check = compat->add_subcommand("check");
  compat_check->fallthrough();
  compat_check->add_option("--surface", surface)->required();
  compat_check->add_option("--samples", samples)->check(CLI::Range(1, 10000));

  auto* conic = app.add_subcommand("conic");
  conic->fallthrough();
  auto* conic_cmd = conic->add_subcommand("check");
  conic_cmd->fallthrough();
  conic_cmd->add_option("--coeffs", coeffs)->required();
  conic_cmd->add_option("--branch", branch)->check(CLI::IsMember({"+", "-"}));
  conic_cmd->add_option("--samples", samples)->check(CLI::Range(1, 10000));

  auto* characteristics = app.add_subcommand("characteristics");
  characteristics->fallthrough();
  characteristics->add_option("--jet", jetfile)->required();

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  std::string prog = "affinv";
  argv.push_back(prog.data());
  for (auto& a : storage) argv.push_back(a.data());

  json report;
  int code = 0;
  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      report = {{"error", "usage"}, {"detail", e.what()}};
      out << report.dump(2) << "\n";
      return 2;
    }

    if (jet_eval->parsed()) {
      report = jet_to_json(surface_jet(surface, at, order, mode));
    } else if (invariant->parsed()) {
      JetPoint j;
      if (!jetfile.empty())
        j = jet_from_json(load_json(jetfile));
      else if (!surface.empty())
        j = surface_jet(surface, at, 3, mode);
      else
        throw EvalError("either --jet or --surface is required");
      Scalar f = eval_F(j);
      Scalar det = hessian_det(j);
      Region r = classify_fiber(j);
      report = {{"F", f.str()},
                {"det", det.str()},
                {"region", region_name(r)}};
      if (r == Region::plus) {
        auto [g1, g2] = eval_system_plus(j);
        report["system"] = {g1.str(), g2.str()};
      } else if (r == Region::minus) {
        auto [f1, f2] = eval_factors_minus(j);
        report["factors"] = {f1.str(), f2.str()};
      }
      if (r != Region::degenerate)
        report["pick"] = blaschke_and_pick(j).pick.str();
    } else if (sym_check->parsed()) {
      if (!field.empty()) {
        std::stringstream ss(field);
        std::string p1, p2, p0;
        std::getline(ss, p1, ';');
        std::getline(ss, p2, ';');
        std::getline(ss, p0, ';');
        VectorField3 x{parse_poly(p1), parse_poly(p2), parse_poly(p0)};
        try {
          ApplyToF r = apply_to_F(x);
          report = {{"divisible", true}, {"quotient", r.quotient.str()}};
        } catch (const NotDivisible&) {
          report = {{"divisible", false}};
          code = 1;
        }
      } else if (generator >= 0) {
        ApplyToF r = apply_to_F(aff3_generators()[generator]);
        report = {{"divisible", true}, {"quotient", r.quotient.str()}};
      } else {
        json results = json::array();
        bool all_ok = true;
        for (int i = 0; i < 12; ++i) {
          try {
            ApplyToF r = apply_to_F(aff3_generators()[i]);
            results.push_back({{"generator", i},
                               {"divisible", true},
                               {"quotient", r.quotient.str()}});
          } catch (const NotDivisible&) {
            results.push_back({{"generator", i}, {"divisible", false}});
            all_ok = false;
          }
        }
        report = {{"ok", all_ok}, {"results", results}};
        if (!all_ok) code = 1;
      }
    } else if (action_apply->parsed()) {
      AffineMap3 g = map_from_json(load_json(mapfile));
      SurfaceExpr e = parse_surface(surface);
      auto [x, y] = parse_at(at);
      TaylorMap f = surface_taylor(e, x, y, std::max(order + 1, 3));
      if (mode == "float") f = f.to_float();
      report = jet_to_json(act_on_jet(g, f, order));
    } else if (ident_verify->parsed()) {
      std::vector<std::string> names;
      bool ok = true;
      if (suite == "all" || suite == "split") ok = verify_split(names) && ok;
      if (suite == "all" || suite == "pick") ok = verify_pick(names) && ok;
      if (suite == "all" || suite == "compat") ok = verify_compat(names) && ok;
      if (suite == "all" || suite == "char") ok = verify_char(names) && ok;
      report = {{"ok", ok}, {"identities", names}};
      if (!ok) code = 1;
    } else if (compat_check->parsed()) {
      SurfaceExpr e = parse_surface(surface);
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<int> num(-8, 8), den(8, 12);
      json per = json::array();
      double worst = 0;
      int got = 0, tries = 0;
      while (got < samples && tries < 200 * samples) {
        ++tries;
        Scalar x(Rational(num(rng), den(rng))), y(Rational(num(rng), den(rng)));
        try {
          TaylorMap f = surface_taylor(e, x, y, 4);
          if (mode == "float") f = f.to_float();
          JetPoint j = jet_of_surface(f, 3);
          auto [r1, r2] = conv_residuals_at(j);
          per.push_back({{"x", x.str()},
                         {"y", y.str()},
                         {"res", {r1.str(), r2.str()}},
                         {"det_sign", hessian_det(j).sign()}});
          worst = std::max({worst, std::abs(r1.value()), std::abs(r2.value())});
          ++got;
        } catch (const EvalError&) {
        } catch (const DegenerateSample&) {
        }
      }
      if (got < samples) throw EvalError("not enough valid sample points");
      report = {{"samples", got}, {"max_residual", worst}, {"per_sample", per}};
      if (worst > tol) code = 1;
    } else if (conic_cmd->parsed()) {
      json cj = load_json(coeffs);
      ConicCoeffs c;
      c.a = scalar_from_json(cj.at("a"));
      for (int i = 0; i < 4; ++i) c.h[i] = scalar_from_json(cj.at("h")[i]);
      for (int i = 0; i < 9; ++i) c.k[i] = scalar_from_json(cj.at("k")[i]);
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<int> num(-5, 5), den(10, 14);
      std::vector<std::pair<Scalar, Scalar>> pts;
      int tries = 0;
      while ((int)pts.size() < samples && tries < 200 * samples) {
        ++tries;
        Scalar x(Rational(num(rng), den(rng))), y(Rational(num(rng), den(rng)));
        try {
          conic_branch_jet(c, branch == "+" ? +1 : -1, x, y, 3);
          pts.push_back({x, y});
        } catch (const NoRealBranch&) {
        } catch (const DegenerateSample&) {
        }
      }
      if ((int)pts.size() < samples)
        throw EvalError("not enough valid sample points");
      CompatReport rep = conic_check(c, branch == "+" ? +1 : -1, pts);
      json per = json::array();
      for (const auto& s : rep.samples)
        per.push_back({{"x", s.x.str()},
                       {"y", s.y.str()},
                       {"res", {s.res1.str(), s.res2.str()}},
                       {"det_sign", s.det_sign}});
      report = {{"samples", (int)rep.samples.size()},
                {"max_residual", rep.max_residual.value()},
                {"per_sample", per}};
      if (rep.max_residual.value() > tol) code = 1;
    } else if (characteristics->parsed()) {
      JetPoint j = jet_from_json(load_json(jetfile));
      auto basis = distribution_V(j);
      report = {{"region", region_name(classify_fiber(j))},
                {"V", {contact_to_json(basis[0]), contact_to_json(basis[1]),
                       contact_to_json(basis[2])}}};
      if (j.order() >= 3) {
        auto [f1, f2] = eval_factors_minus(j);
        report["factors"] = {f1.str(), f2.str()};
        try {
          report["char_line"] = contact_to_json(char_line(j, tol));
          report["on_equation"] = true;
        } catch (const NotOnEquation&) {
          report["on_equation"] = false;
        }
        RankOneCheck rc = symbol_rank_one_check(j, tol);
        report["rank_one"] = {{"factor", {rc.c1.str(), rc.c2.str()}},
                              {"residual", rc.residual.value()}};
      }
    } else {
      report = {{"error", "usage"}, {"detail", "no subcommand given"}};
      out << report.dump(2) << "\n";
      return 2;
    }
  } catch (const ParseError& e) {
    report = {{"error", "parse-error"}, {"detail", e.what()}};
    code = 2;
  } catch (const EvalError& e) {
    report = {{"error", "eval-error"}, {"detail", e.what()}};
    code = 2;
  } catch (const json::exception& e) {
    report = {{"error", "json-error"}, {"detail", e.what()}};
    code = 2;
  } catch (const std::invalid_argument& e) {
    report = {{"error", "parse-error"}, {"detail", e.what()}};
    code = 2;
  } catch (const std::runtime_error& e) {
    report = {{"error", "domain-error"}, {"detail", e.what()}};
    code = 2;
  }

  out << report.dump(2) << "\n";
  if (!outfile.empty()) {
    std::ofstream f(outfile);
    f << report.dump(2) << "\n";
  }
  return code;
}

}  // namespace affinv

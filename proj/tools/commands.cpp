#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bdshift/error.hpp"
#include "bdshift/expr.hpp"

namespace bdshift::cli {

namespace {

struct Options {
  std::string command;
  std::string workspace;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> m;
  std::string out;
  std::string side = "auto";
  std::string derivation;
  std::string laurent;
  std::string implementation;
  std::string state = "tau0";
  std::optional<std::int64_t> level;
  std::int64_t grid = 0;
  std::string csv;
  std::vector<std::string> exprs;
};

/// Usage problems that are not math errors.
struct UsageError {
  std::string what;
};

struct Context {
  const Options& opt;
  Environment env;
  /// Set by commands whose numerics did not converge; the JSON is still printed.
  std::optional<std::string> nonconvergence;
};

const std::string& expr_arg(const Context& ctx, std::size_t i) {
  if (ctx.opt.exprs.size() <= i) throw UsageError{ctx.opt.command + " needs " + std::to_string(i + 1) + " expression(s)"};
  return ctx.opt.exprs[i];
}

std::int64_t need_n(const Context& ctx) {
  if (!ctx.opt.n) throw UsageError{ctx.opt.command + " needs --n"};
  return *ctx.opt.n;
}

std::int64_t window(const Context& ctx, std::int64_t fallback) {
  const std::int64_t m = ctx.opt.m.value_or(fallback);
  if (m < 1) throw UsageError{"--m must be positive"};
  return m;
}

Side pick_side(const Context& ctx, const std::vector<ExprPtr>& es) {
  if (ctx.opt.side == "unilateral") return Side::Unilateral;
  if (ctx.opt.side == "bilateral") return Side::Bilateral;
  for (const auto& e : es) {
    if (infer_side(e) == Side::Bilateral) return Side::Bilateral;
  }
  return Side::Unilateral;
}

Json element_json(const Element& x) {
  return std::visit(
      [](const auto& a) {
        const bool bi = std::is_same_v<std::decay_t<decltype(a)>, BilateralElement>;
        return Json{{"side", bi ? "bilateral" : "unilateral"}, {"text", format(a)}, {"element", to_json(a)}};
      },
      x);
}

UnilateralElement unilateral_arg(const Context& ctx, std::size_t i) {
  return eval_unilateral(parse(expr_arg(ctx, i)), ctx.env);
}

BilateralElement bilateral_arg(const Context& ctx, std::size_t i) {
  return eval_bilateral(parse(expr_arg(ctx, i)), ctx.env);
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& map, const std::string& name, const char* what) {
  const auto it = map.find(name);
  require(it != map.end(), ErrorKind::UnknownName, std::string("no ") + what + " named '" + name + "'");
  return it->second;
}

const DerivationSum& unilateral_derivation(const Context& ctx) {
  if (ctx.opt.derivation.empty()) throw UsageError{ctx.opt.command + " needs --derivation"};
  return lookup(ctx.env.derivations, ctx.opt.derivation, "derivation");
}

const ImplementationData& implementation(const Context& ctx) {
  if (ctx.opt.implementation.empty()) throw UsageError{ctx.opt.command + " needs --implementation"};
  return lookup(ctx.env.implementations, ctx.opt.implementation, "implementation");
}

GNSState state(const Context& ctx) {
  if (ctx.opt.state == "tau0") return GNSState::Tau0;
  if (ctx.opt.state == "haar") return GNSState::Haar;
  throw UsageError{"--state must be tau0 or haar"};
}

std::int64_t finite_modulus(const Context& ctx) {
  require(ctx.env.modulus.is_finite(), ErrorKind::NotFinite, ctx.opt.command + " needs a finite N");
  return ctx.env.modulus.value();
}

/// Writes a CSV dump when --csv is set and returns a JSON stub describing it.
Json dump(const Context& ctx, const DenseMatrix& m) {
  Json j{{"rows", m.rows()}, {"cols", m.cols()}};
  if (ctx.opt.csv.empty()) {
    j["matrix"] = dense_to_json(m);
    return j;
  }
  std::ofstream f(ctx.opt.csv);
  require(static_cast<bool>(f), ErrorKind::InvalidArgument, "cannot write '" + ctx.opt.csv + "'");
  f << to_csv(m);
  j["csv"] = ctx.opt.csv;
  return j;
}

Json cmd_normalize(Context& ctx) {
  const ExprPtr e = parse(expr_arg(ctx, 0));
  return element_json(eval(e, ctx.env, pick_side(ctx, {e})));
}

Json binary(Context& ctx, bool commutator_form) {
  const ExprPtr x = parse(expr_arg(ctx, 0));
  const ExprPtr y = parse(expr_arg(ctx, 1));
  if (pick_side(ctx, {x, y}) == Side::Bilateral) {
    const BilateralElement a = eval_bilateral(x, ctx.env);
    const BilateralElement b = eval_bilateral(y, ctx.env);
    return element_json(commutator_form ? bilateral_commutator(a, b) : bilateral_multiply(a, b));
  }
  const UnilateralElement a = eval_unilateral(x, ctx.env);
  const UnilateralElement b = eval_unilateral(y, ctx.env);
  return element_json(commutator_form ? commutator(a, b) : multiply(a, b));
}

Json cmd_derive(Context& ctx) {
  if (ctx.opt.derivation.empty()) throw UsageError{"derive needs --derivation"};
  if (const auto it = ctx.env.bilateral_derivations.find(ctx.opt.derivation);
      it != ctx.env.bilateral_derivations.end()) {
    return Json{{"derivation", ctx.opt.derivation}, {"image", element_json(bilateral_apply(it->second, bilateral_arg(ctx, 0)))}};
  }
  const DerivationSum& d = unilateral_derivation(ctx);
  return Json{{"derivation", ctx.opt.derivation}, {"image", element_json(apply(d, unilateral_arg(ctx, 0)))}};
}

Json cmd_fourier(Context& ctx) {
  const DerivationSum& d = unilateral_derivation(ctx);
  const std::int64_t n = need_n(ctx);
  Json j{{"n", n}, {"component", to_json(fourier_component(d, n))}};
  if (!ctx.opt.exprs.empty()) j["image"] = element_json(fourier_of_image(d, n, unilateral_arg(ctx, 0)));
  return j;
}

Json cmd_fejer(Context& ctx) {
  const DerivationSum& d = unilateral_derivation(ctx);
  if (!ctx.opt.m) throw UsageError{"fejer needs --m (the order)"};
  const std::int64_t order = *ctx.opt.m;
  const DerivationSum mean = fejer_mean(d, order);
  Json weights = Json::object();
  for (const auto& kv : d.components()) weights[std::to_string(kv.first)] = to_json(fejer_weight(kv.first, order));
  Json j{{"order", order}, {"weights", weights}, {"mean", to_json(mean)}};
  if (!ctx.opt.exprs.empty()) j["image"] = element_json(apply(mean, unilateral_arg(ctx, 0)));
  return j;
}

Json cmd_classify(Context& ctx) {
  const DerivationSum& d = unilateral_derivation(ctx);
  std::vector<std::int64_t> degrees;
  if (ctx.opt.n) {
    degrees.push_back(*ctx.opt.n);
  } else {
    for (const auto& kv : d.components()) degrees.push_back(kv.first);
  }
  Json out = Json::object();
  for (const std::int64_t n : degrees) {
    const CovariantDerivationData dn = d.component(n);
    if (!ctx.opt.n && is_bounded_regime(n, d.modulus())) {
      // Only an explicit --n asks for the bounded-regime error.
      out[std::to_string(n)] = Json{{"bounded_regime", true}, {"inner", true}};
      continue;
    }
    const Classification c = classify(dn);
    Json j = to_json(c);
    j["bounded_regime"] = is_bounded_regime(n, d.modulus());
    j["reassembles"] = reassemble(c, n, d.modulus()) == dn;
    out[std::to_string(n)] = j;
  }
  return Json{{"components", out}};
}

Json cmd_extract_f(Context& ctx) {
  const DerivationSum& d = unilateral_derivation(ctx);
  const LaurentFunction f = extract_f(d);
  return Json{{"f", to_json(f)}, {"remainder", to_json(d - d_f_build(f, d.modulus()))}};
}

Json cmd_df_build(Context& ctx) {
  if (ctx.opt.laurent.empty()) throw UsageError{"df-build needs --laurent"};
  const LaurentFunction& f = lookup(ctx.env.laurent, ctx.opt.laurent, "Laurent function");
  return Json{{"derivation", to_json(d_f_build(f, ctx.env.modulus))},
              {"image_U", element_json(d_f_image_of_shift(f, ctx.env.modulus))},
              {"image_Us", element_json(d_f_image_of_shift_adjoint(f, ctx.env.modulus))}};
}

Json cmd_toeplitz(Context& ctx) { return element_json(toeplitz(bilateral_arg(ctx, 0))); }

Json cmd_defect(Context& ctx) {
  const UnilateralElement d = mult_defect(bilateral_arg(ctx, 0), bilateral_arg(ctx, 1));
  Json j = element_json(d);
  j["compact"] = is_compact(d);
  return j;
}

Json cmd_matrix_form(Context& ctx) {
  const BilateralElement b = bilateral_arg(ctx, 0);
  return Json{{"N", finite_modulus(ctx)}, {"matrix", to_json(to_matrix_form(b, ctx.env.modulus))}};
}

Json cmd_units(Context& ctx) {
  const std::int64_t big_n = finite_modulus(ctx);
  const auto units = matrix_units(ctx.env.modulus);
  Json rows = Json::array();
  for (std::int64_t s = 0; s < big_n; ++s) {
    for (std::int64_t r = 0; r < big_n; ++r) {
      const auto& p = units[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)];
      rows.push_back(Json{{"s", s}, {"r", r}, {"text", format(p)}, {"element", to_json(p)}});
    }
  }
  return Json{{"N", big_n}, {"units", rows}};
}

std::int64_t haar_level(const Context& ctx, const BilateralElement& b) {
  if (ctx.opt.level) return *ctx.opt.level;
  if (ctx.env.modulus.is_finite()) return ctx.env.modulus.value();
  std::int64_t level = 1;
  for (const auto& kv : b.terms()) level = std::lcm(level, kv.second.period());
  return level;
}

Json cmd_gns_rep(Context& ctx) {
  const BilateralElement b = bilateral_arg(ctx, 0);
  if (state(ctx) == GNSState::Tau0) {
    const GNSVector0 xi = GNSVector0::basis(0);
    const GNSVector0 image = pi0_apply(b, xi);
    return Json{{"state", "tau0"},
                {"value", to_json(tau0(b))},
                {"expectation", to_json(expectation(b))},
                {"image", to_json(image)},
                {"inner", to_json(inner(xi, image))}};
  }
  const GNSVectorHaar xi = GNSVectorHaar::cyclic(haar_level(ctx, b));
  const GNSVectorHaar image = pi_haar_apply(b, xi);
  return Json{{"state", "haar"},
              {"level", xi.level()},
              {"value", to_json(tau_haar(b))},
              {"image", to_json(image)},
              {"inner", to_json(inner(xi, image))}};
}

DenseMatrix build_D(const ImplementationData& data, GNSState s, std::int64_t m) {
  return s == GNSState::Tau0 ? build_D_tau0(data, m) : build_D_haar(data, m);
}

Json cmd_gns_d(Context& ctx) {
  const ImplementationData& data = implementation(ctx);
  const GNSState s = state(ctx);
  const std::int64_t m = window(ctx, 16);
  Json j{{"state", to_string(s)}, {"M", m}, {"implementation", to_json(data)}, {"D", dump(ctx, build_D(data, s, m))}};
  if (!ctx.opt.exprs.empty()) j["check"] = to_json(check_implementation(data, s, bilateral_arg(ctx, 0), m));
  return j;
}

Json cmd_covcheck(Context& ctx) {
  const ImplementationData& data = implementation(ctx);
  const GNSState s = state(ctx);
  const std::int64_t m = window(ctx, 64);
  const std::int64_t grid = ctx.opt.grid > 0 ? ctx.opt.grid : 16;
  const auto labels = s == GNSState::Tau0 ? tau0_labels(m) : haar_labels(m, data.level);
  const double residual = check_covariance(build_D(data, s, m), labels, data.n, grid);
  return Json{{"state", to_string(s)}, {"M", m}, {"grid", grid}, {"residual", residual}, {"pass", residual < 1e-12}};
}

Json cmd_parametrix(Context& ctx) {
  const ImplementationData& data = implementation(ctx);
  std::vector<std::int64_t> windows{64, 128, 256};
  if (ctx.opt.m) windows = {*ctx.opt.m, 2 * *ctx.opt.m, 4 * *ctx.opt.m};
  return to_json(parametrix_report(data, state(ctx), windows));
}

Json cmd_truncate(Context& ctx) {
  const ExprPtr e = parse(expr_arg(ctx, 0));
  const std::int64_t m = window(ctx, 16);
  if (pick_side(ctx, {e}) == Side::Bilateral) {
    return Json{{"side", "bilateral"}, {"lo", -m}, {"hi", m}, {"truncation", dump(ctx, truncate_bilateral(eval_bilateral(e, ctx.env), -m, m))}};
  }
  return Json{{"side", "unilateral"}, {"M", m}, {"truncation", dump(ctx, truncate_unilateral(eval_unilateral(e, ctx.env), m))}};
}

Json cmd_normest(Context& ctx) {
  const ExprPtr e = parse(expr_arg(ctx, 0));
  const std::int64_t m = window(ctx, 64);
  const NormEstimate est = pick_side(ctx, {e}) == Side::Bilateral
                               ? largest_singular_value(truncate_bilateral(eval_bilateral(e, ctx.env), -m, m))
                               : norm_lower(eval_unilateral(e, ctx.env), m);
  if (!est.converged) ctx.nonconvergence = "power iteration did not converge";
  Json j = to_json(est);
  j["M"] = m;
  return j;
}

Json cmd_qnorm(Context& ctx) {
  const ExprPtr e = parse(expr_arg(ctx, 0));
  const BilateralElement b =
      pick_side(ctx, {e}) == Side::Bilateral ? eval_bilateral(e, ctx.env) : quotient(eval_unilateral(e, ctx.env));
  const std::int64_t grid = ctx.opt.grid > 0 ? ctx.opt.grid : 64;
  Json j = to_json(quotient_norm_estimate(b, ctx.env.modulus, grid));
  j["grid"] = grid;
  return j;
}

const std::map<std::string, std::function<Json(Context&)>>& commands() {
  static const std::map<std::string, std::function<Json(Context&)>> table{
      {"normalize", cmd_normalize},
      {"mul", [](Context& c) { return binary(c, false); }},
      {"comm", [](Context& c) { return binary(c, true); }},
      {"derive", cmd_derive},
      {"fourier", cmd_fourier},
      {"fejer", cmd_fejer},
      {"classify", cmd_classify},
      {"extract-f", cmd_extract_f},
      {"df-build", cmd_df_build},
      {"toeplitz", cmd_toeplitz},
      {"defect", cmd_defect},
      {"matrix-form", cmd_matrix_form},
      {"units", cmd_units},
      {"gns-rep", cmd_gns_rep},
      {"gns-d", cmd_gns_d},
      {"covcheck", cmd_covcheck},
      {"parametrix", cmd_parametrix},
      {"truncate", cmd_truncate},
      {"normest", cmd_normest},
      {"qnorm", cmd_qnorm},
  };
  return table;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownName:
      return kParse;
    case ErrorKind::NoConvergence:
      return kNonconvergence;
    case ErrorKind::InvalidArgument:
      return kUsage;
    default:
      return kDomain;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Symbolic and numeric tools for shift algebras and their derivations", "bdshift"};
  std::string names;
  for (const auto& kv : commands()) names += (names.empty() ? "" : ", ") + kv.first;
  app.add_option("command", opt.command, "One of: " + names)->required();
  app.add_option("expr", opt.exprs, "Expressions");
  app.add_option("--workspace,-w", opt.workspace, "Workspace JSON file");
  app.add_option("--n", opt.n, "Degree / Fourier index");
  app.add_option("--m", opt.m, "Window size or order");
  app.add_option("--out,-o", opt.out, "Also write the JSON report here");
  app.add_option("--side", opt.side, "auto, unilateral or bilateral")
      ->check(CLI::IsMember({"auto", "unilateral", "bilateral"}));
  app.add_option("--derivation,-d", opt.derivation, "Named derivation");
  app.add_option("--laurent", opt.laurent, "Named Laurent function");
  app.add_option("--implementation,-i", opt.implementation, "Named implementation");
  app.add_option("--state", opt.state, "tau0 or haar")->check(CLI::IsMember({"tau0", "haar"}));
  app.add_option("--level", opt.level, "Haar fibre level");
  app.add_option("--grid", opt.grid, "Grid size for covariance and quotient norms");
  app.add_option("--csv", opt.csv, "Write matrix dumps to this CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  }

  const auto it = commands().find(opt.command);
  if (it == commands().end()) {
    err << "usage: unknown command '" << opt.command << "'; expected one of " << names << "\n";
    return kUsage;
  }

  try {
    Context ctx{opt, opt.workspace.empty() ? Environment{} : load_environment(opt.workspace), std::nullopt};
    const Json report = it->second(ctx);
    const std::string text = report.dump(2);
    out << text << "\n";
    if (!opt.out.empty()) {
      std::ofstream f(opt.out);
      if (!f) {
        err << "usage: cannot write '" << opt.out << "'\n";
        return kUsage;
      }
      f << text << "\n";
    }
    if (ctx.nonconvergence) {
      err << "nonconvergence: " << *ctx.nonconvergence << "\n";
      return kNonconvergence;
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "usage: " << e.what << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    err << "SyntaxError: " << e.what() << "\n";
    return kParse;
  }
}

}  // namespace bdshift::cli

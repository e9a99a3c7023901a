#include "hsfc/cli/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hsfc/bounds.hpp"
#include "hsfc/calculus.hpp"
#include "hsfc/convergence.hpp"
#include "hsfc/random.hpp"
#include "hsfc/ssf.hpp"
#include "hsfc/cli/svg.hpp"
#include "json.hpp"

namespace hsfc::cli {

namespace {

using nlohmann::json;

Complex nonreal_option(const std::string& key, const std::string& text) {
  Complex z;
  try {
    z = parse_complex(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
  if (z.imag() == 0.0) throw ConfigError(key, "must be non-real (got " + text + ")");
  return z;
}

SmoothFunctionBundle function_option(const std::string& key, const std::string& spec) {
  try {
    return parse_function_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

SchattenIndex schatten_option(const std::string& key, const std::string& text) {
  try {
    return SchattenIndex::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
}

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError(key, message);
}

void check_dims(long lo, long hi) {
  require(lo >= 1, "dim-min", "must be >= 1");
  require(hi >= lo, "dim-max", "must be >= dim-min");
}

CutoffProfile cutoff_option(const std::string& name) {
  if (name == "bump") return CutoffProfile(CutoffProfile::Kind::bump_quotient);
  if (name == "smoothstep") return CutoffProfile(CutoffProfile::Kind::smoothstep);
  throw ConfigError("cutoff", "expected bump or smoothstep (got " + name + ")");
}

// Spectrum-controlled and perturbed pairs for the fuzz campaigns.
struct FuzzPair {
  HermitianOperator s1;
  HermitianOperator s2;
};

FuzzPair fuzz_pair(OperatorSampler& rng, Index dim) {
  HermitianOperator s1 = rng.gue(dim, rng.uniform(0.2, 2.0));
  const double kind = rng.uniform(0.0, 1.0);
  Matrix p;
  if (kind < 0.5) {
    const Eigen::VectorXcd v = rng.complex_vector(dim).normalized();
    p = rng.uniform(-2.0, 2.0) * (v * v.adjoint());
  } else {
    p = rng.gue(dim, rng.uniform(0.01, 1.0)).matrix();
  }
  HermitianOperator s2(Matrix(s1.matrix() + p));
  return {std::move(s1), std::move(s2)};
}

Complex fuzz_point(OperatorSampler& rng, double radius, double min_im) {
  const double re = rng.uniform(-radius, radius);
  double im = rng.uniform(min_im, radius);
  if (rng.uniform(0.0, 1.0) < 0.5) im = -im;
  return {re, im};
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty complex number");
  auto to_double = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size()) throw std::invalid_argument("malformed complex number '" + std::string(text) + "'");
    return v;
  };
  if (s.back() != 'i' && s.back() != 'j') return {to_double(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(s)};
  return {to_double(s.substr(0, split)), to_double(s.substr(split))};
}

std::string format_complex(Complex z) {
  return fmt(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

Matrix read_matrix_json(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open matrix file " + path.string());
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("matrix file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!j.contains("dim") || !j.contains("re")) throw std::runtime_error("matrix file needs keys dim and re");
  const long n = j.at("dim").get<long>();
  if (n < 1) throw std::runtime_error("matrix dim must be >= 1");
  Matrix m = Matrix::Zero(n, n);
  auto fill = [&](const json& rows, bool imag) {
    if (!rows.is_array() || static_cast<long>(rows.size()) != n) throw std::runtime_error("matrix rows != dim");
    for (long r = 0; r < n; ++r) {
      const json& row = rows[r];
      if (!row.is_array() || static_cast<long>(row.size()) != n) throw std::runtime_error("matrix columns != dim");
      for (long c = 0; c < n; ++c) {
        const double v = row[c].get<double>();
        if (imag) {
          m(r, c) += Complex(0.0, v);
        } else {
          m(r, c) += v;
        }
      }
    }
  };
  fill(j.at("re"), false);
  if (j.contains("im")) fill(j.at("im"), true);
  return m;
}

void write_matrix_json(const std::filesystem::path& path, const Matrix& m) {
  json j;
  j["dim"] = m.rows();
  json re = json::array(), im = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ii = json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  j["re"] = re;
  j["im"] = im;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump() << "\n";
}

ReportBundle run_apply(const ApplyConfig& cfg) {
  const std::vector<std::string> variants = {"plain", "khochman", "semigroup", "derivative"};
  require(std::find(variants.begin(), variants.end(), cfg.variant) != variants.end(), "variant",
          "expected plain, khochman, semigroup or derivative (got " + cfg.variant + ")");
  require(cfg.cases >= 0, "cases", "must be >= 0");
  check_dims(cfg.dim_min, cfg.dim_max);
  require(cfg.spectrum_lo < cfg.spectrum_hi, "spectrum-hi", "must exceed spectrum-lo");
  require(cfg.tol > 0.0, "tol", "must be positive");
  require(cfg.ell >= 1, "ell", "must be >= 1");
  require(cfg.max_depth >= 0 && cfg.max_depth <= 30, "max-depth", "must be in [0, 30]");
  require(!cfg.strip_eps || *cfg.strip_eps > 0.0, "strip-eps", "must be positive");
  const SmoothFunctionBundle f = function_option("f", cfg.f);
  require(f.max_order() >= cfg.ell + 1, "ell", "exceeds the derivative order available from --f");
  const CutoffProfile cutoff = cutoff_option(cfg.cutoff);
  Complex z0{0.0, 1.0};
  if (cfg.variant == "khochman") {
    require(cfg.m >= 0, "m", "must be >= 0 for the khochman variant");
    z0 = nonreal_option("z0", cfg.z0);
    require(f.function_class().is_compact(), "f", "the khochman variant needs a compactly supported function");
  }
  if (cfg.variant == "semigroup") {
    require(cfg.t > 0.0, "t", "must be positive");
    require(f.function_class().is_compact(), "f", "the semigroup variant needs a compactly supported function");
  }
  if (cfg.variant == "derivative") {
    require(cfg.m >= 1, "m", "must be >= 1 for the derivative variant");
    require(cfg.ell >= cfg.m, "ell", "must be >= m for the derivative variant");
  }
  std::vector<HermitianOperator> ops;
  if (!cfg.matrix.empty()) {
    try {
      ops.emplace_back(read_matrix_json(cfg.matrix));
    } catch (const std::exception& e) {
      throw ConfigError("matrix", e.what());
    }
  } else {
    OperatorSampler rng(cfg.seed);
    for (long c = 0; c < cfg.cases; ++c) {
      ops.push_back(rng.with_spectrum_in(rng.uniform_index(cfg.dim_min, cfg.dim_max), cfg.spectrum_lo, cfg.spectrum_hi));
    }
  }
  const AlmostAnalyticExtension ext(f, static_cast<int>(cfg.ell), cutoff);
  QuadraturePlan plan;
  try {
    plan = make_plan(ext, cfg.tol);
  } catch (const PlanError& e) {
    throw ConfigError("f", e.what());
  }
  plan.max_depth = static_cast<int>(cfg.max_depth);
  plan.strip_epsilon = cfg.strip_eps;
  const int m = static_cast<int>(cfg.m);
  const ScalarFunction oracle_fn = f.derivative_fn(cfg.variant == "derivative" ? m - 1 : 0);

  ReportBundle rep;
  rep.command = "apply";
  Table& t = rep.table("apply", {"case", "dim", "variant", "error", "est_error", "cells", "strip_eps", "satisfied"});
  for (std::size_t c = 0; c < ops.size(); ++c) {
    const HermitianOperator& s = ops[c];
    const std::string id = "apply/" + std::to_string(c);
    try {
      CalculusResult r;
      if (cfg.variant == "plain") r = hs_function(s, ext, plan);
      if (cfg.variant == "khochman") r = hs_function_khochman(s, ext, plan, m, z0);
      if (cfg.variant == "semigroup") r = hs_function_semigroup(s, ext, plan, cfg.t);
      if (cfg.variant == "derivative") r = hs_derivative(s, ext, plan, m);
      const double err = operator_norm(r.value - matrix_function_oracle(s, oracle_fn));
      const double allowed = std::max(cfg.tol, r.est_error);
      const bool ok = err <= allowed;
      t.add({std::to_string(c), std::to_string(s.dim()), cfg.variant, fmt(err), fmt(r.est_error),
             std::to_string(r.cells_used), fmt(r.strip_epsilon), fmt(ok)});
      rep.verdict(id, ok, allowed - err);
    } catch (const PlanError& e) {
      t.add({std::to_string(c), std::to_string(s.dim()), cfg.variant, "nan", "nan", "0", "nan", fmt(false)});
      rep.verdict(id, false, -std::numeric_limits<double>::infinity(), e.what());
    }
  }
  return rep;
}

ReportBundle run_bound(const BoundConfig& cfg) {
  require(cfg.suite == "lemma31" || cfg.suite == "A0" || cfg.suite == "all", "suite",
          "expected lemma31, A0 or all (got " + cfg.suite + ")");
  require(cfg.cases >= 0, "cases", "must be >= 0");
  check_dims(cfg.dim_min, cfg.dim_max);
  require(cfg.tol > 0.0, "tol", "must be positive");
  require(!cfg.p.empty(), "p", "needs at least one Schatten index");
  std::vector<SchattenIndex> ps;
  for (const auto& p : cfg.p) ps.push_back(schatten_option("p", p));
  const Complex z0 = nonreal_option("z0", cfg.z0);
  const SmoothFunctionBundle f = function_option("f", cfg.f);
  require(f.max_order() >= 3, "f", "needs derivatives up to order 3");
  const bool do_lemma = cfg.suite != "A0";
  const bool do_a0 = cfg.suite != "lemma31";

  ReportBundle rep;
  rep.command = "bound";
  Table& t = rep.table("bound", {"case", "suite", "p", "lhs", "rhs", "margin", "satisfied"});
  if (do_lemma && cfg.cases > 0) {
    const AlmostAnalyticExtension ext(f, 2);
    DaviesConstant c;
    try {
      c = davies_constant(ext, z0, cfg.tol);
    } catch (const std::domain_error& e) {
      throw ConfigError("f", e.what());
    }
    rep.notes.push_back("davies constant C(z0) = " + fmt(c.value) + " (est. error " + fmt(c.est_error) + ")");
    OperatorSampler rng(cfg.seed);
    for (long k = 0; k < cfg.cases; ++k) {
      const FuzzPair pr = fuzz_pair(rng, rng.uniform_index(cfg.dim_min, cfg.dim_max));
      for (const auto& p : ps) {
        const BoundReport b = verify_lemma31(pr.s1, pr.s2, ext, p, z0, c);
        t.add({std::to_string(k), "lemma31", p.to_string(), fmt(b.lhs), fmt(b.rhs), fmt(b.margin), fmt(b.satisfied)});
        rep.verdict("lemma31/" + std::to_string(k) + "/p=" + p.to_string(), b.satisfied, b.margin + b.slack);
      }
    }
  }
  if (do_a0) {
    OperatorSampler rng(cfg.seed + 1);
    for (long k = 0; k < 2 * cfg.cases; ++k) {
      const HermitianOperator s = rng.gue(rng.uniform_index(cfg.dim_min, cfg.dim_max), rng.uniform(0.1, 5.0));
      const Complex z = fuzz_point(rng, 5.0, 0.05);
      const Complex w = fuzz_point(rng, 5.0, 0.05);
      const BoundReport b = verify_bound_A0(s, z, w);
      t.add({std::to_string(k), "A0", "inf", fmt(b.lhs), fmt(b.rhs), fmt(b.margin), fmt(b.satisfied)});
      rep.verdict("A0/" + std::to_string(k), b.satisfied, b.margin + b.slack);
    }
  }
  return rep;
}

ReportBundle run_identities(const IdentitiesConfig& cfg) {
  require(cfg.cases >= 0, "cases", "must be >= 0");
  require(cfg.m_max >= 1, "m-max", "must be >= 1");
  require(cfg.nodes >= 1, "nodes", "must be >= 1");
  check_dims(cfg.dim_min, cfg.dim_max);
  ReportBundle rep;
  rep.command = "identities";
  rep.notes.push_back(cauchy_sign_resolution().summary());
  Table& t = rep.table("identities", {"case", "identity", "m", "k", "residual", "tolerance", "satisfied"});
  auto row = [&](long c, const std::string& name, long m, long k, double residual, double tol) {
    const bool ok = residual <= tol;
    t.add({std::to_string(c), name, std::to_string(m), std::to_string(k), fmt(residual), fmt(tol), fmt(ok)});
    rep.verdict(name + "/" + std::to_string(c) + "/m=" + std::to_string(m) + "/k=" + std::to_string(k), ok,
                tol - residual);
  };
  std::vector<std::pair<int, int>> mk;
  for (int k = 1; k <= 4; ++k) {
    for (int m = 1; m <= k; ++m) mk.emplace_back(m, k);
  }
  OperatorSampler rng(cfg.seed);
  for (long c = 0; c < cfg.cases; ++c) {
    const Index dim = rng.uniform_index(cfg.dim_min, cfg.dim_max);
    const FuzzPair pr = fuzz_pair(rng, dim);
    const Complex z = fuzz_point(rng, 3.0, 0.5);
    const Complex z0 = fuzz_point(rng, 3.0, 0.5);
    const double scale = identity_scale(pr.s1, pr.s2);
    const int m = 1 + static_cast<int>(c % cfg.m_max);
    row(c, "A-1", 0, 0, verify_identity_Aminus1(pr.s1, pr.s2, z, z0), 1e-10 * scale);
    const auto [a1, a2] = verify_power_identities(pr.s1, pr.s2, z, m);
    row(c, "A1", m, m + 1, a1, 1e-10 * scale);
    row(c, "A2", m, m + 1, a2, 1e-10 * scale);
    const auto [cm, ck] = mk[static_cast<std::size_t>(c) % mk.size()];
    const Contour contour{0.0, static_cast<int>(cfg.nodes)};
    const double cerr = max_abs(cauchy_power(pr.s1, z, cm, ck, contour) - resolvent_power(pr.s1, z, ck));
    row(c, "A4", cm, ck, cerr, 1e-8);
    for (int n : {2, 3}) {
      for (const char* p : {"1", "2"}) {
        const ContourRouteReport l = verify_lemma_A1(pr.s1, pr.s2, 1, n, SchattenIndex::parse(p), z, contour);
        row(c, std::string("lemmaA1/p=") + p, 1, n, l.agreement.lhs, l.agreement.rhs);
      }
    }
  }
  return rep;
}

ReportBundle run_converge(const ConvergeConfig& cfg) {
  require(cfg.theorem == "lemma32" || cfg.theorem == "thm35" || cfg.theorem == "thm37", "theorem",
          "expected lemma32, thm35 or thm37 (got " + cfg.theorem + ")");
  SequenceKind kind;
  try {
    kind = parse_sequence_kind(cfg.kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("kind", e.what());
  }
  const SchattenIndex p = schatten_option("p", cfg.p);
  require(cfg.m >= 1, "m", "must be >= 1");
  require(cfg.n_max >= 1, "N", "must be >= 1");
  require(cfg.dim >= 1, "dim", "must be >= 1");
  require(cfg.tol > 0.0, "tol", "must be positive");
  const Complex z0 = nonreal_option("z0", cfg.z0);
  const SmoothFunctionBundle f = function_option("f", cfg.f);
  require(f.function_class().is_compact(), "f", "must be compactly supported");

  SequenceParams params;
  params.dim = cfg.dim;
  params.seed = cfg.seed;
  const OperatorSequencePair pair = make_sequence(kind, params);
  const AlmostAnalyticExtension ext(f, 2);

  std::vector<ConvergenceTrace> traces;
  if (cfg.theorem == "lemma32") {
    traces.push_back(verify_lemma32(pair, f, cfg.n_max, cfg.tol));
  } else if (cfg.theorem == "thm35") {
    DifferenceLimitReport r = verify_thm35(pair, ext, p, z0, cfg.n_max, cfg.tol);
    traces = {r.hypothesis, r.conclusion};
  } else {
    PowerLimitReport r = verify_thm37(pair, ext, p, static_cast<int>(cfg.m), z0, cfg.n_max, cfg.tol);
    traces = {r.power_hypothesis, r.mixed_hypothesis, r.conclusion};
  }

  ReportBundle rep;
  rep.command = "converge";
  rep.notes.push_back("sequence " + pair.mode() + "; at matrix scale strong and norm resolvent convergence coincide");
  if (traces.size() >= 2) {
    rep.notes.push_back("domination constant conclusion/hypothesis = " +
                        fmt(domination_constant(traces.front(), traces.back())));
  }
  Table& tr = rep.table("trace", {"trace", "n", "value"});
  Table& vd = rep.table("verdicts", {"trace", "final", "slope", "tolerance", "converged"});
  for (const auto& t : traces) {
    for (const auto& [n, v] : t.entries) tr.add({t.label, std::to_string(n), fmt(v)});
    vd.add({t.label, fmt(t.final_value()), fmt(t.slope), fmt(t.tolerance), fmt(t.converged)});
    rep.verdict(cfg.theorem + "/" + t.label, t.converged, t.tolerance - t.final_value());
  }
  return rep;
}

ReportBundle run_witten(const WittenConfig& cfg) {
  require(cfg.length > 0.0, "L", "must be positive");
  require(cfg.modes >= 2 && cfg.modes % 2 == 0, "modes", "must be even and >= 2");
  require(cfg.window_lo < cfg.window_hi, "window", "must be a non-empty interval");
  require(std::max(std::abs(cfg.window_lo), std::abs(cfg.window_hi)) <= 0.5 * kPi * cfg.modes / cfg.length, "window",
          "reaches the truncated band edge");
  for (double n : cfg.sweep) require(n > 0.0, "sweep", "entries must be positive");
  require(cfg.smoothing > 0.0, "smoothing", "must be positive");
  require(cfg.grid_half_width > 0.0, "grid-half-width", "must be positive");
  require(cfg.grid_points >= 4, "grid-points", "must be >= 4");
  require(cfg.fit_points >= 2, "fit-points", "must be >= 2");
  require(cfg.tolerance > 0.0, "tolerance", "must be positive");
  const SmoothFunctionBundle phi = function_option("phi", cfg.phi);
  const FunctionClass cls = phi.function_class();
  require(cls.is_compact() && cls.support_lo >= 0.0 && cls.support_hi <= cfg.length, "phi",
          "must be a bump supported inside [0, L]");

  DiracDiscretization disc = DiracDiscretization::sample(cfg.length, static_cast<int>(cfg.modes),
                                                         [&](double x) { return phi(x).real(); });
  if (cfg.flux) {
    require(disc.flux() != 0.0, "phi", "has zero grid integral; cannot rescale to --flux");
    disc.phi *= *cfg.flux / disc.flux();
  }
  const double limit = disc.flux() / (2.0 * kPi);
  const Window window{cfg.window_lo, cfg.window_hi};
  const double width = cfg.smoothing * 2.0 * kPi / cfg.length;
  const RealVector grid = RealVector::LinSpaced(cfg.grid_points, -cfg.grid_half_width, cfg.grid_half_width);

  ReportBundle rep;
  rep.command = "witten";
  rep.notes.push_back("flux = " + fmt(disc.flux()) + ", expected limit flux/(2 pi) = " + fmt(limit));
  Table& t = rep.table("witten", {"n", "ssf", "xi_left", "xi_right", "index"});
  Table& xt = rep.table("xi", {"nu", "xi_smoothed"});

  auto evaluate = [&](double n) {
    const DiracSpectra sp = dirac_spectra(disc, n);
    const SpectralShiftFunction xi = SpectralShiftFunction::counting(sp.minus, sp.plus, RealVector());
    const double avg = xi.window_average(window.lo, window.hi);
    const SpectralShiftFunction smooth = smoothed_ssf(xi, grid, width);
    return std::make_tuple(avg, witten_index(smooth, static_cast<int>(cfg.fit_points)), xi, smooth);
  };

  const auto [avg, w, xi, smooth] = evaluate(std::numeric_limits<double>::infinity());
  t.add({"inf", fmt(avg), fmt(w.xi_left), fmt(w.xi_right), fmt(w.index)});
  rep.verdict("witten/ssf", std::abs(avg - limit) <= cfg.tolerance, cfg.tolerance - std::abs(avg - limit));
  rep.verdict("witten/index", std::abs(w.index - limit) <= cfg.tolerance, cfg.tolerance - std::abs(w.index - limit));
  for (Index i = 0; i < grid.size(); ++i) xt.add({fmt(grid(i)), fmt(smooth.values()(i))});

  std::vector<double> ns = cfg.sweep;
  std::sort(ns.begin(), ns.end());
  Series sweep_series{"regularized window average", {}, false, true};
  double prev_dist = std::numeric_limits<double>::infinity();
  for (double n : ns) {
    const auto [a, wn, xn, sn] = evaluate(n);
    t.add({fmt(n), fmt(a), fmt(wn.xi_left), fmt(wn.xi_right), fmt(wn.index)});
    sweep_series.points.emplace_back(n, a);
    const double dist = std::abs(a - limit);
    if (std::isfinite(prev_dist)) {
      rep.verdict("sweep/n=" + fmt(n), dist <= prev_dist, prev_dist - dist, "monotone approach to the limit");
    }
    prev_dist = dist;
  }

  if (cfg.plot) {
    Series raw{"counting xi", {}, true, false};
    const RealVector fine = RealVector::LinSpaced(801, window.lo, window.hi);
    for (Index i = 0; i < fine.size(); ++i) raw.points.emplace_back(fine(i), xi(fine(i)));
    Series sm{"moving average", {}, false, false};
    for (Index i = 0; i < grid.size(); ++i) sm.points.emplace_back(grid(i), smooth.values()(i));
    Series lim{"flux / 2 pi", {{window.lo, limit}, {window.hi, limit}}, false, false};
    rep.svgs["xi.svg"] = svg_plot({raw, sm, lim}, PlotOptions{"spectral shift function of (A+, A-)", "nu", "xi"});
    if (!sweep_series.points.empty()) {
      Series lim2{"flux / 2 pi", {{ns.front(), limit}, {ns.back(), limit}}, false, false};
      rep.svgs["sweep.svg"] =
          svg_plot({sweep_series, lim2}, PlotOptions{"regularized sweep", "n", "window average of xi", true});
    }
  }
  return rep;
}

ReportBundle run_majorant(const MajorantConfig& cfg) {
  for (double b : cfg.beta) require(b < -1.0, "beta", "must be < -1 (got " + fmt(b) + ")");
  require(cfg.nx >= 1 && cfg.ny >= 1, "nx", "grid sizes must be >= 1");
  const Complex z0 = nonreal_option("z0", cfg.z0);
  ReportBundle rep;
  rep.command = "majorant";
  Table& t = rep.table("majorant", {"beta", "C_hat", "max_ratio", "points", "violations", "shape_integral",
                                    "closed_form", "majorant_mass", "satisfied"});
  MajorantGrid grid;
  grid.nx = static_cast<int>(cfg.nx);
  grid.ny = static_cast<int>(cfg.ny);
  for (double beta : cfg.beta) {
    const AlmostAnalyticExtension ext(japanese_power(beta), 2);
    const MajorantReport r = majorant_check(ext, z0, grid);
    t.add({fmt(beta), fmt(r.fitted_C_hat), fmt(r.pointwise_max_ratio), std::to_string(r.points),
           std::to_string(r.violations), fmt(r.shape_integral), fmt(r.closed_form), fmt(r.tail_integral),
           fmt(r.ok())});
    const double margin =
        std::min(r.fitted_C_hat - r.pointwise_max_ratio, 1e-6 - std::abs(r.shape_integral - r.closed_form));
    rep.verdict("majorant/beta=" + fmt(beta), r.ok(), margin);
  }
  return rep;
}

}  // namespace hsfc::cli

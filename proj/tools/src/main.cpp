// hsfc: batch front end for the functional-calculus campaigns.
//
// Exit status: 0 when every verdict holds, 1 when some case fails (ids on
// stderr), 2 for an invalid configuration, 3 for an unexpected numerical error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>

#include "CLI11.hpp"
#include "hsfc/cli/campaign.hpp"
#include "hsfc/cli/json_config.hpp"

namespace {

using namespace hsfc::cli;

void add_dims(CLI::App* app, long& lo, long& hi) {
  app->add_option("--dim-min", lo, "smallest random dimension")->capture_default_str();
  app->add_option("--dim-max", hi, "largest random dimension")->capture_default_str();
}

void add_bound_options(CLI::App* app, BoundConfig& c) {
  app->add_option("--suite", c.suite, "lemma31 | A0 | all")->capture_default_str();
  app->add_option("--cases", c.cases, "fuzz cases")->capture_default_str();
  app->add_option("--seed", c.seed)->capture_default_str();
  app->add_option("--p", c.p, "Schatten indices, e.g. 1,2,inf")->delimiter(',')->capture_default_str();
  app->add_option("--z0", c.z0, "reference point off the real axis")->capture_default_str();
  app->add_option("--f", c.f, "bump(c,r[,a])")->capture_default_str();
  app->add_option("--tol", c.tol, "relative accuracy of the constant")->capture_default_str();
  add_dims(app, c.dim_min, c.dim_max);
}

void add_identities_options(CLI::App* app, IdentitiesConfig& c) {
  app->add_option("--cases", c.cases)->capture_default_str();
  app->add_option("--seed", c.seed)->capture_default_str();
  app->add_option("--m-max", c.m_max, "largest resolvent power")->capture_default_str();
  app->add_option("--nodes", c.nodes, "trapezoid nodes on the contour")->capture_default_str();
  add_dims(app, c.dim_min, c.dim_max);
}

void add_majorant_options(CLI::App* app, MajorantConfig& c) {
  app->add_option("--beta", c.beta, "symbol orders < -1")->delimiter(',')->capture_default_str();
  app->add_option("--z0", c.z0)->capture_default_str();
  app->add_option("--nx", c.nx)->capture_default_str();
  app->add_option("--ny", c.ny)->capture_default_str();
}

// Inserts the config file's "command" when argv names no subcommand.
std::vector<std::string> resolve_argv(int argc, char** argv, const std::set<std::string>& commands) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config;
  bool has_command = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (commands.count(args[i])) has_command = true;
    if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
  }
  if (!has_command && !config.empty()) {
    std::ifstream is(config);
    const std::string cmd = JsonConfig::command_of(is);
    if (!cmd.empty()) args.push_back(cmd);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helffer-Sjostrand functional calculus: evaluation and verification campaigns"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON campaign file; command-line flags take precedence");
  std::string out = "hsfc-out";
  app.add_option("--out", out, "output directory for CSV/JSON/SVG")->capture_default_str();
  app.require_subcommand(1);
  app.fallthrough();  // --out and --config may follow the subcommand

  ApplyConfig apply;
  BoundConfig bound;
  IdentitiesConfig identities;
  ConvergeConfig converge;
  WittenConfig witten;
  MajorantConfig majorant;

  auto* a = app.add_subcommand("apply", "evaluate f(S) and compare against the eigendecomposition");
  a->add_option("--variant", apply.variant, "plain | khochman | semigroup | derivative")->capture_default_str();
  a->add_option("--matrix", apply.matrix, "JSON matrix file (otherwise random cases)");
  a->add_option("--cases", apply.cases)->capture_default_str();
  a->add_option("--seed", apply.seed)->capture_default_str();
  add_dims(a, apply.dim_min, apply.dim_max);
  a->add_option("--spectrum-lo", apply.spectrum_lo)->capture_default_str();
  a->add_option("--spectrum-hi", apply.spectrum_hi)->capture_default_str();
  a->add_option("--f", apply.f, "bump(c,r[,a]) | symbol(beta) | wave(omega)")->capture_default_str();
  a->add_option("--tol", apply.tol)->capture_default_str();
  a->add_option("--ell", apply.ell, "order of the almost analytic extension")->capture_default_str();
  a->add_option("--strip-eps", apply.strip_eps, "half-width of the excluded strip (default: automatic)");
  a->add_option("--max-depth", apply.max_depth)->capture_default_str();
  a->add_option("--cutoff", apply.cutoff, "bump | smoothstep")->capture_default_str();
  a->add_option("--m", apply.m, "power (khochman) or derivative order (derivative)")->capture_default_str();
  a->add_option("--z0", apply.z0)->capture_default_str();
  a->add_option("--t", apply.t, "semigroup time")->capture_default_str();

  auto* b = app.add_subcommand("bound", "fuzz the resolvent-difference bounds");
  add_bound_options(b, bound);
  auto* id = app.add_subcommand("identities", "fuzz the resolvent-power identities and the contour formula");
  add_identities_options(id, identities);

  auto* c = app.add_subcommand("converge", "convergence traces for a perturbed operator sequence");
  c->add_option("theorem", converge.theorem, "lemma32 | thm35 | thm37")->capture_default_str();
  c->add_option("--kind", converge.kind, "rankone_fade | diagonal_drift | commuting_pair")->capture_default_str();
  c->add_option("--p", converge.p)->capture_default_str();
  c->add_option("--m", converge.m)->capture_default_str();
  c->add_option("--N", converge.n_max, "last sequence index")->capture_default_str();
  c->add_option("--z0", converge.z0)->capture_default_str();
  c->add_option("--dim", converge.dim)->capture_default_str();
  c->add_option("--seed", converge.seed)->capture_default_str();
  c->add_option("--tol", converge.tol)->capture_default_str();
  c->add_option("--f", converge.f)->capture_default_str();

  bool raw_phi = false;
  auto* w = app.add_subcommand("witten", "spectral shift function and Witten index of the Dirac model");
  w->add_option("--phi", witten.phi, "bump(c,r[,a]) inside [0, L]")->capture_default_str();
  w->add_option("--flux", witten.flux, "rescale phi to this grid integral")->capture_default_str();
  w->add_flag("--raw-phi", raw_phi, "use phi as given, without flux rescaling");
  w->add_option("--L", witten.length)->capture_default_str();
  w->add_option("--modes", witten.modes)->capture_default_str();
  w->add_option("--sweep", witten.sweep, "regularization parameters n")->delimiter(',')->capture_default_str();
  w->add_option("--window-lo", witten.window_lo)->capture_default_str();
  w->add_option("--window-hi", witten.window_hi)->capture_default_str();
  w->add_option("--smoothing", witten.smoothing, "moving-average width in units of 2 pi / L")->capture_default_str();
  w->add_option("--grid-half-width", witten.grid_half_width)->capture_default_str();
  w->add_option("--grid-points", witten.grid_points)->capture_default_str();
  w->add_option("--fit-points", witten.fit_points)->capture_default_str();
  w->add_option("--tolerance", witten.tolerance)->capture_default_str();
  bool no_plot = false;
  w->add_flag("--no-plot", no_plot, "skip the SVG plots");

  auto* mj = app.add_subcommand("majorant", "pointwise check of the symbol-class majorant");
  add_majorant_options(mj, majorant);

  auto* v = app.add_subcommand("verify", "verification suites");
  v->require_subcommand(1);
  auto* vb = v->add_subcommand("bounds", "same as `bound`");
  add_bound_options(vb, bound);
  auto* vi = v->add_subcommand("identities", "same as `identities`");
  add_identities_options(vi, identities);
  auto* vm = v->add_subcommand("majorant", "same as `majorant`");
  add_majorant_options(vm, majorant);

  const std::set<std::string> commands = {"apply", "bound", "identities", "converge", "witten", "majorant", "verify"};
  std::vector<std::string> args = resolve_argv(argc, argv, commands);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (raw_phi) witten.flux.reset();
  witten.plot = !no_plot;

  ReportBundle report;
  try {
    if (a->parsed()) report = run_apply(apply);
    if (b->parsed() || vb->parsed()) report = run_bound(bound);
    if (id->parsed() || vi->parsed()) report = run_identities(identities);
    if (c->parsed()) report = run_converge(converge);
    if (w->parsed()) report = run_witten(witten);
    if (mj->parsed() || vm->parsed()) report = run_majorant(majorant);
    report.write(out);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  std::cout << report.summary_json();
  if (report.ok()) return 0;
  for (const auto& verdict : report.verdicts) {
    if (!verdict.satisfied) std::cerr << "failed: " << verdict.case_id << (verdict.detail.empty() ? "" : " (" + verdict.detail + ")") << "\n";
  }
  return 1;
}

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "cvtp/errors.hpp"
#include "cvtp/limits_opt.hpp"
#include "cvtp/parallel.hpp"
#include "cvtp/teleport.hpp"

namespace cvtp::cli {

InputState StateFlags::resolve() const {
  if (kind == "fock") {
    if (!photons) throw UsageError("missing --n for --state fock");
    FockInput f{*photons};
    try {
      validate(f);
    } catch (const DomainError&) {
      throw UsageError("--n must lie in [0, " + std::to_string(kMaxPhotons) + "]");
    }
    return f;
  }
  if (kind == "squeezed") {
    if (!zeta0) throw UsageError("missing --zeta0 for --state squeezed");
    return GaussianInput{*zeta0, {alpha0, alpha0_im}};
  }
  if (kind == "coherent") return GaussianInput{zeta0.value_or(0.0), {alpha0, alpha0_im}};
  throw UsageError("missing --state (squeezed, coherent or fock)");
}

void StateFlags::echo(Table& t) const {
  t.param("state", kind);
  if (kind == "fock") {
    t.param("n", static_cast<double>(*photons));
  } else {
    t.param("zeta0", zeta0.value_or(0.0));
    t.param("alpha0", alpha0);
    t.param("alpha0_im", alpha0_im);
  }
}

ChannelParams ChannelFlags::resolve() const {
  if (l1 || l2) {
    return from_lengths(l1.value_or(0.0), l2.value_or(0.0), la, la, zeta, phase, nth1, nth2);
  }
  ChannelParams p;
  p.squeezing = zeta;
  p.phase = phase;
  p.t1 = t1;
  p.t2 = t2;
  p.nth1 = nth1;
  p.nth2 = nth2;
  p.validate();
  return p;
}

double ChannelFlags::gain(const ChannelParams& p) const {
  if (lambda == "auto") {
    if (std::abs(p.t1) == 0.0) throw UsageError("--lambda auto needs --t1 > 0");
    return lambda_star(p).gain;
  }
  try {
    std::size_t used = 0;
    const double g = std::stod(lambda, &used);
    if (used == lambda.size() && g > 0.0 && std::isfinite(g)) return g;
  } catch (const std::exception&) {
  }
  throw UsageError("--lambda must be 'auto' or a positive number");
}

void ChannelFlags::echo(Table& t) const {
  t.param("zeta", zeta);
  t.param("phase", phase);
  if (l1 || l2) {
    t.param("l1", l1.value_or(0.0));
    t.param("l2", l2.value_or(0.0));
    t.param("la", la);
  } else {
    t.param("t1", t1);
    t.param("t2", t2);
  }
  if (nth1 > 0.0 || nth2 > 0.0) {
    t.param("nth1", nth1);
    t.param("nth2", nth2);
  }
  t.param("lambda", lambda);
}

std::vector<double> axis(double start, double stop, int count, bool log) {
  if (count < 2) throw UsageError("--count must be at least 2");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw UsageError("--start/--stop must be finite");
  if (log && !(start > 0.0 && stop > 0.0)) throw UsageError("--start/--stop must be positive with --log");
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / (count - 1);
    xs[i] = log ? start * std::pow(stop / start, u) : start + (stop - start) * u;
  }
  xs.back() = stop;
  return xs;
}

namespace {

constexpr const char* kFigureHelp = R"(Data behind the figures; every default below can be overridden.
  1  squeezed vacuum (--zeta0 0.5), T1 = 1, x = |zeta| in [0, 3], one pair of series per
     |T2| in --t2-list (0.2 0.4 0.6 0.8 1): a = gain 1, b = gain |T2/T1|.
  2  squeezed vacuum (--zeta0 0.88) and number state (--n 1), T1 = 1, --t2 0.9,
     x = |zeta| in [0, 3]: optimal gain, gain |T2/T1| and gain C2/|S|.
  3  coherent states, T1 = 1, --t2 0.5, x = n_coh in [0.01, 1000] (log), optimal gain of the
     averaged fidelity for |zeta| in --zeta-list (3 3.3 4), --order 48.
  4  squeezed coherent state (--zeta0 0.5, --alpha0 0.7) and number state (--n 1),
     gain |T2/T1|, x = |zeta| in [0, 3], per |T2| in --t2-list.
  5  x = l2 in [0, 1] (units of --la 1), l1 = 0, gain exp(-l2/la), --zeta 20 (infinite
     squeezing): squeezed vacua zeta0 = 0.88, 1.54, 1.87 and number states N = 1, 5, 10.
  6  x = l2 in [0, 3], l1 = 0, gain exp(-l2/la): classical levels of N = 0..3 and their
     mean fidelity at --zeta 20.
  7  x = l12 in [0.01, 0.3], --zeta 20: optimal source distance l1 from Alice for squeezed
     states (zeta0, alpha0) = (0.78, 0.5), (1.44, 1), (1.63, 2) and N = 1, 5, 10.)";

void add_state_flags(CLI::App* app, StateFlags& s) {
  app->add_option("--state", s.kind, "Input state")
      ->check(CLI::IsMember({"squeezed", "coherent", "fock"}));
  app->add_option("--zeta0", s.zeta0, "Squeezing of the input state");
  app->add_option("--alpha0", s.alpha0, "Coherent amplitude, real part");
  app->add_option("--alpha0-im", s.alpha0_im, "Coherent amplitude, imaginary part");
  app->add_option("--n", s.photons, "Photon number of a number state")
      ->check(CLI::Range(0, kMaxPhotons));
}

void add_channel_flags(CLI::App* app, ChannelFlags& c) {
  app->add_option("--zeta", c.zeta, "Source squeezing |zeta| (20 acts as infinite)")
      ->check(CLI::Range(0.0, 20.0));
  app->add_option("--phase", c.phase, "Source squeezing phase (radians)");
  auto* t1 = app->add_option("--t1", c.t1, "|T1|, Alice's arm")->check(CLI::Range(0.0, 1.0));
  auto* t2 = app->add_option("--t2", c.t2, "|T2|, Bob's arm")->check(CLI::Range(0.0, 1.0));
  auto* l1 = app->add_option("--l1", c.l1, "Alice's arm length")->check(CLI::NonNegativeNumber);
  auto* l2 = app->add_option("--l2", c.l2, "Bob's arm length")->check(CLI::NonNegativeNumber);
  app->add_option("--la", c.la, "Absorption length")->check(CLI::PositiveNumber);
  app->add_option("--nth1", c.nth1, "Thermal occupation, arm 1 (extrapolation)")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--nth2", c.nth2, "Thermal occupation, arm 2 (extrapolation)")
      ->check(CLI::NonNegativeNumber);
  t1->excludes(l1)->excludes(l2);
  t2->excludes(l1)->excludes(l2);
  app->add_option("--lambda", c.lambda, "Displacement gain, or 'auto' for |T2/T1|");
}

struct Output {
  std::string format = "csv";
  std::string path;
};

void add_output_flags(CLI::App* app, Output& o) {
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--output,-o", o.path, "Write to this file instead of standard output");
}

void emit_text(const std::string& text, const Output& o, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("--output: cannot open " + o.path);
  file << text;
}

void emit(const Table& t, const Output& o, std::ostream& out) {
  std::ostringstream buf;
  if (o.format == "json") {
    write_json(t, buf);
  } else {
    write_csv(t, buf);
  }
  emit_text(buf.str(), o, out);
}

double sigma_infinity_or_nan(const ChannelParams& p) {
  return std::abs(p.t2) > 0.0 && std::abs(p.t1) > 0.0 ? sigma_infinity(p) : std::nan("");
}

Table cmd_fidelity(const StateFlags& sf, const ChannelFlags& cf) {
  const InputState in = sf.resolve();
  const ChannelParams p = cf.resolve();
  const double g = cf.gain(p);
  const FidelityReport r = fidelity(in, make_setting(p, g));
  Table t;
  t.command = "fidelity";
  sf.echo(t);
  cf.echo(t);
  t.add(g, "fidelity", r.fidelity);
  t.add(g, "classical_level", r.classical_level);
  t.add(g, "exceeded_classical", r.exceeded_classical ? 1.0 : 0.0);
  t.add(g, "sigma", sigma(p, g));
  t.add(g, "sigma_infinity", sigma_infinity_or_nan(p));
  t.add(g, "gain", g);
  return t;
}

struct SweepFlags {
  std::string param;
  double start = 0.0, stop = 1.0;
  int count = 11;
  bool log = false;
};

Table cmd_sweep(const StateFlags& sf, const ChannelFlags& cf, const SweepFlags& sw) {
  const InputState in = sf.resolve();
  cf.resolve();  // validates the base point
  const std::vector<double> xs = axis(sw.start, sw.stop, sw.count, sw.log);
  std::vector<std::array<double, 2>> values(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    ChannelFlags c = cf;
    const double x = xs[i];
    if (sw.param == "zeta") c.zeta = x;
    if (sw.param == "t1") c.t1 = x;
    if (sw.param == "t2") c.t2 = x;
    if (sw.param == "l1") c.l1 = x;
    if (sw.param == "l2") c.l2 = x;
    if (sw.param == "lambda") c.lambda = format_number(x);
    const ChannelParams p = c.resolve();
    const double g = sw.param == "lambda" ? x : c.gain(p);
    values[i] = {fidelity_at(in, p, g), classical_level(in, p, g)};
  });
  Table t;
  t.command = "sweep";
  sf.echo(t);
  cf.echo(t);
  t.param("param", sw.param);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    t.add(xs[i], "fidelity", values[i][0]);
    t.add(xs[i], "classical_level", values[i][1]);
  }
  return t;
}

Table cmd_optimize_lambda(const StateFlags& sf, const ChannelFlags& cf,
                          std::optional<double> n_coh, int order) {
  const InputState in = sf.resolve();
  const ChannelParams p = cf.resolve();
  if (std::abs(p.t1) == 0.0) throw UsageError("--t1 must be positive to optimize the gain");
  Table t;
  t.command = "optimize-lambda";
  sf.echo(t);
  cf.echo(t);
  const double star = lambda_star(p).gain;
  LambdaOptimum best;
  double at_star = 0.0;
  if (n_coh) {
    const auto* g = std::get_if<GaussianInput>(&in);
    if (!g) throw UsageError("--n-coh requires a squeezed or coherent --state");
    if (!(*n_coh > 0.0)) throw UsageError("--n-coh must be positive");
    const AverageFidelitySpec spec{*n_coh, order};
    t.param("n_coh", *n_coh);
    best = optimize_lambda_average(spec, p, g->squeezing);
    at_star = average_fidelity(spec, p, star, g->squeezing);
  } else {
    best = optimize_lambda(in, p);
    at_star = fidelity_at(in, p, star);
  }
  t.add(p.squeezing, "gain", best.gain);
  t.add(p.squeezing, "fidelity", best.fidelity);
  t.add(p.squeezing, "gain_star", star);
  t.add(p.squeezing, "fidelity_star", at_star);
  return t;
}

Table cmd_optimize_source(const StateFlags& sf, double l12, double la, double zeta) {
  const InputState in = sf.resolve();
  const SourceOptimum s = optimize_source_position(in, l12, la, zeta);
  Table t;
  t.command = "optimize-source";
  sf.echo(t);
  t.param("l12", l12);
  t.param("la", la);
  t.param("zeta", zeta);
  t.add(l12, "l1", s.l1);
  t.add(l12, "l1_over_l12", l12 > 0.0 ? s.l1 / l12 : 0.0);
  t.add(l12, "fidelity", s.fidelity);
  return t;
}

Table cmd_average(const StateFlags& sf, const ChannelFlags& cf, double n_coh, int order) {
  StateFlags s = sf;
  if (!s.given()) s.kind = "coherent";
  const InputState in = s.resolve();
  const auto* g = std::get_if<GaussianInput>(&in);
  if (!g) throw UsageError("--state must be squeezed or coherent for average-fidelity");
  const ChannelParams p = cf.resolve();
  const double gain = cf.gain(p);
  const AverageFidelitySpec spec{n_coh, order};
  Table t;
  t.command = "average-fidelity";
  s.echo(t);
  cf.echo(t);
  t.param("n_coh", n_coh);
  t.param("order", static_cast<double>(order));
  t.add(n_coh, "average_fidelity", average_fidelity(spec, p, gain, g->squeezing));
  t.add(n_coh, "closed_form", average_fidelity_exact(spec, p, gain, g->squeezing));
  t.add(n_coh, "gain", gain);
  return t;
}

void emit_check(const CheckResult& r, const Output& o, std::ostream& out) {
  emit_text(r.summary.dump(2) + "\n", o, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous-variable teleportation through lossy channels"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  StateFlags state;
  ChannelFlags channel;
  Output output;

  auto* fid = app.add_subcommand("fidelity", "Fidelity and classical level at one point");
  add_state_flags(fid, state);
  add_channel_flags(fid, channel);
  add_output_flags(fid, output);

  FigureFlags fig;
  int figure_id = 0;
  auto* figc = app.add_subcommand("figure", "Data behind figures 1-7");
  figc->footer(kFigureHelp);
  figc->add_option("id", figure_id, "Figure number")->required();
  figc->add_option("--start", fig.start, "First x value");
  figc->add_option("--stop", fig.stop, "Last x value");
  figc->add_option("--count", fig.count, "Number of x values (>= 2)");
  figc->add_option("--zeta", fig.zeta, "Source squeezing")->check(CLI::Range(0.0, 20.0));
  figc->add_option("--t2", fig.t2, "|T2|")->check(CLI::Range(0.0, 1.0));
  figc->add_option("--zeta0", fig.zeta0, "Input squeezing");
  figc->add_option("--alpha0", fig.alpha0, "Input coherent amplitude");
  figc->add_option("--n", fig.photons, "Input photon number")->check(CLI::Range(0, kMaxPhotons));
  figc->add_option("--la", fig.la, "Absorption length")->check(CLI::PositiveNumber);
  figc->add_option("--order", fig.order, "Quadrature order")->check(CLI::Range(2, 100));
  figc->add_option("--t2-list", fig.t2_list, "|T2| values")->check(CLI::Range(0.0, 1.0));
  figc->add_option("--zeta-list", fig.zeta_list, "Source squeezing values")
      ->check(CLI::Range(0.0, 20.0));
  add_output_flags(figc, output);

  SweepFlags sweep;
  auto* sw = app.add_subcommand("sweep", "Fidelity and classical level along one parameter");
  add_state_flags(sw, state);
  add_channel_flags(sw, channel);
  add_output_flags(sw, output);
  sw->add_option("--param", sweep.param, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"lambda", "zeta", "t1", "t2", "l1", "l2"}));
  sw->add_option("--start", sweep.start, "First value");
  sw->add_option("--stop", sweep.stop, "Last value");
  sw->add_option("--count", sweep.count, "Number of values (>= 2)");
  sw->add_flag("--log", sweep.log, "Geometric spacing");

  std::optional<double> n_coh;
  int order = 48;
  auto* opt = app.add_subcommand("optimize-lambda", "Gain maximizing the fidelity");
  add_state_flags(opt, state);
  add_channel_flags(opt, channel);
  add_output_flags(opt, output);
  opt->add_option("--n-coh", n_coh, "Maximize the coherent-amplitude average with this cutoff");
  opt->add_option("--order", order, "Quadrature order")->check(CLI::Range(2, 100));

  double l12 = 0.1;
  double la = 1.0;
  double zeta_source = 20.0;
  auto* src = app.add_subcommand("optimize-source", "Source position maximizing the fidelity");
  add_state_flags(src, state);
  add_output_flags(src, output);
  src->add_option("--l12", l12, "Alice-Bob distance")->required()->check(CLI::NonNegativeNumber);
  src->add_option("--la", la, "Absorption length")->check(CLI::PositiveNumber);
  src->add_option("--zeta", zeta_source, "Source squeezing (default 20, infinite)")
      ->check(CLI::Range(0.0, 20.0));

  double avg_ncoh = 1.0;
  auto* avg = app.add_subcommand("average-fidelity", "Coherent-amplitude averaged fidelity");
  add_state_flags(avg, state);
  add_channel_flags(avg, channel);
  add_output_flags(avg, output);
  avg->add_option("--n-coh", avg_ncoh, "Cutoff photon number")->required()->check(CLI::PositiveNumber);
  avg->add_option("--order", order, "Quadrature order")->check(CLI::Range(2, 100));

  OracleFlags oracle;
  auto* orc = app.add_subcommand(
      "oracle-check", "Closed forms against the phase-space grid oracle (JSON summary)");
  add_state_flags(orc, state);
  add_output_flags(orc, output);
  orc->add_option("--perturb-sigma", oracle.perturb_sigma,
                  "Add this to sigma in the closed forms (negative control)");
  orc->add_option("--grid-n", oracle.grid_n, "Grid samples per axis (power of two)")
      ->check(CLI::PositiveNumber);

  MonteCarloFlags mc;
  auto* mcc = app.add_subcommand("mc-check", "Sampled measurement outcomes against the closed form");
  add_state_flags(mcc, state);
  add_channel_flags(mcc, channel);
  add_output_flags(mcc, output);
  mcc->add_option("--seed", mc.seed, "Generator seed (required)");
  mcc->add_option("--samples", mc.samples, "Samples per configuration")->check(CLI::Range(2, 100000000));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fid->parsed()) emit(cmd_fidelity(state, channel), output, out);
    if (figc->parsed()) emit(figure(figure_id, fig), output, out);
    if (sw->parsed()) emit(cmd_sweep(state, channel, sweep), output, out);
    if (opt->parsed()) emit(cmd_optimize_lambda(state, channel, n_coh, order), output, out);
    if (src->parsed()) emit(cmd_optimize_source(state, l12, la, zeta_source), output, out);
    if (avg->parsed()) emit(cmd_average(state, channel, avg_ncoh, order), output, out);
    if (orc->parsed()) {
      const CheckResult r = oracle_check(state, oracle);
      emit_check(r, output, out);
      if (!r.passed) {
        err << "oracle-check: tolerance exceeded\n";
        return 1;
      }
    }
    if (mcc->parsed()) {
      const CheckResult r = mc_check(state, channel, mc);
      emit_check(r, output, out);
      if (!r.passed) {
        err << "mc-check: estimate outside three standard errors\n";
        return 1;
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const SeedRequired& e) {
    err << "error: --seed is required\n";
    return 2;
  } catch (const std::exception& e) {
    // Library validation: domain, grid and quadrature errors.
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace cvtp::cli

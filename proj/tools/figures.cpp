#include <cmath>
#include <functional>
#include <string>

#include "commands.hpp"
#include "cvtp/limits_opt.hpp"
#include "cvtp/parallel.hpp"

namespace cvtp::cli {

namespace {

struct Series {
  std::string name;
  std::function<double(double)> value;
};

// Evaluates every series at every x in parallel; rows come out x-major in input order.
void fill(Table& t, const std::vector<double>& xs, const std::vector<Series>& series) {
  const std::size_t m = series.size();
  std::vector<double> values(xs.size() * m);
  parallel_for(values.size(), [&](std::size_t k) {
    values[k] = series[k % m].value(xs[k / m]);
  });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) t.add(xs[i], series[j].name, values[i * m + j]);
  }
}

std::vector<double> x_axis(Table& t, const FigureFlags& f, double start, double stop, int count,
                           bool log = false) {
  const double a = f.start.value_or(start);
  const double b = f.stop.value_or(stop);
  const int n = f.count.value_or(count);
  t.param("start", a);
  t.param("stop", b);
  t.param("count", static_cast<double>(n));
  return axis(a, b, n, log);
}

ChannelParams arms(double t1, double t2, double zeta) {
  ChannelParams p;
  p.t1 = t1;
  p.t2 = t2;
  p.squeezing = zeta;
  p.validate();
  return p;
}

std::string label(const std::string& prefix, double v) { return prefix + format_number(v); }

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ";") + format_number(x);
  return s;
}

// Squeezed vacuum against |zeta| for gain 1 (a) and gain |T2/T1| (b).
Table figure1(const FigureFlags& f) {
  Table t;
  const double zeta0 = f.zeta0.value_or(0.5);
  const auto t2s = f.t2_list.empty() ? std::vector<double>{0.2, 0.4, 0.6, 0.8, 1.0} : f.t2_list;
  t.param("zeta0", zeta0);
  t.param("t1", 1.0);
  t.param("t2_list", join(t2s));
  const auto xs = x_axis(t, f, 0.0, 3.0, 31);
  const InputState in = GaussianInput{zeta0, {}};
  std::vector<Series> series;
  for (double t2 : t2s) {
    series.push_back({label("a:t2=", t2), [=](double z) { return fidelity_at(in, arms(1, t2, z), 1.0); }});
    series.push_back({label("b:t2=", t2), [=](double z) {
                        return t2 > 0 ? fidelity_at(in, arms(1, t2, z), t2) : std::nan("");
                      }});
  }
  fill(t, xs, series);
  return t;
}

Table figure2(const FigureFlags& f) {
  Table t;
  const double zeta0 = f.zeta0.value_or(0.88);
  const int n = f.photons.value_or(1);
  const double t2 = f.t2.value_or(0.9);
  t.param("zeta0", zeta0);
  t.param("n", static_cast<double>(n));
  t.param("t1", 1.0);
  t.param("t2", t2);
  const auto xs = x_axis(t, f, 0.0, 3.0, 31);
  std::vector<Series> series;
  const std::vector<std::pair<std::string, InputState>> states{
      {"squeezed", GaussianInput{zeta0, {}}}, {"fock", FockInput{n}}};
  for (const auto& [name, in] : states) {
    series.push_back({name + ":optimal", [=](double z) {
                        return t2 > 0 ? optimize_lambda(in, arms(1, t2, z)).fidelity : std::nan("");
                      }});
    series.push_back({name + ":gain_star", [=](double z) {
                        return t2 > 0 ? fidelity_at(in, arms(1, t2, z), t2) : std::nan("");
                      }});
    series.push_back({name + ":c2_over_s", [=](double z) {
                        const ChannelParams p = arms(1, t2, z);
                        const EntangledState e = shared_state(p);
                        if (std::abs(e.correlation) == 0.0) return std::nan("");
                        return fidelity_at(in, p, e.arm2 / std::abs(e.correlation));
                      }});
  }
  fill(t, xs, series);
  return t;
}

Table figure3(const FigureFlags& f) {
  Table t;
  const double t2 = f.t2.value_or(0.5);
  const int order = f.order.value_or(48);
  const auto zetas = f.zeta_list.empty() ? std::vector<double>{3.0, 3.3, 4.0} : f.zeta_list;
  t.param("t1", 1.0);
  t.param("t2", t2);
  t.param("zeta_list", join(zetas));
  t.param("order", static_cast<double>(order));
  const auto xs = x_axis(t, f, 0.01, 1000.0, 21, true);
  std::vector<Series> series;
  for (double z : zetas) {
    series.push_back({label("zeta=", z), [=](double n_coh) {
                        return optimize_lambda_average({n_coh, order}, arms(1, t2, z), 0.0).gain;
                      }});
  }
  fill(t, xs, series);
  return t;
}

Table figure4(const FigureFlags& f) {
  Table t;
  const double zeta0 = f.zeta0.value_or(0.5);
  const double alpha0 = f.alpha0.value_or(0.7);
  const int n = f.photons.value_or(1);
  const auto t2s = f.t2_list.empty() ? std::vector<double>{0.2, 0.4, 0.6, 0.8, 1.0} : f.t2_list;
  t.param("zeta0", zeta0);
  t.param("alpha0", alpha0);
  t.param("n", static_cast<double>(n));
  t.param("t1", 1.0);
  t.param("t2_list", join(t2s));
  const auto xs = x_axis(t, f, 0.0, 3.0, 31);
  const InputState squeezed = GaussianInput{zeta0, {alpha0, 0.0}};
  const InputState fock = FockInput{n};
  std::vector<Series> series;
  for (double t2 : t2s) {
    for (const auto& [name, in] : {std::pair{std::string("squeezed"), squeezed}, std::pair{std::string("fock"), fock}}) {
      series.push_back({label(name + ":t2=", t2), [=](double z) {
                          return t2 > 0 ? fidelity_at(in, arms(1, t2, z), t2) : std::nan("");
                        }});
    }
  }
  fill(t, xs, series);
  return t;
}

// Fidelity with the source at Alice (l1 = 0) and Bob's arm of length l2.
double at_bob_distance(const InputState& in, double l2, double la, double zeta) {
  const ChannelParams p = from_lengths(0.0, l2, la, la, zeta);
  return fidelity_at(in, p, std::exp(-l2 / la));
}

Table figure5(const FigureFlags& f) {
  Table t;
  const double zeta = f.zeta.value_or(20.0);
  const double la = f.la.value_or(1.0);
  t.param("zeta", zeta);
  t.param("la", la);
  t.param("l1", 0.0);
  const auto xs = x_axis(t, f, 0.0, 1.0, 51);
  std::vector<Series> series;
  for (double z0 : {0.88, 1.54, 1.87}) {
    const InputState in = GaussianInput{z0, {}};
    series.push_back({label("squeezed:zeta0=", z0), [=](double l2) { return at_bob_distance(in, l2, la, zeta); }});
  }
  for (int n : {1, 5, 10}) {
    const InputState in = FockInput{n};
    series.push_back({label("fock:N=", n), [=](double l2) { return at_bob_distance(in, l2, la, zeta); }});
  }
  fill(t, xs, series);
  return t;
}

Table figure6(const FigureFlags& f) {
  Table t;
  const double zeta = f.zeta.value_or(20.0);
  const double la = f.la.value_or(1.0);
  t.param("zeta", zeta);
  t.param("la", la);
  t.param("l1", 0.0);
  const auto xs = x_axis(t, f, 0.0, 3.0, 61);
  std::vector<Series> series;
  for (int n = 0; n <= 3; ++n) {
    series.push_back({label("classical:N=", n), [=](double l2) { return at_bob_distance(FockInput{n}, l2, la, 0.0); }});
  }
  series.push_back({"average", [=](double l2) {
                      double sum = 0.0;
                      for (int n = 0; n <= 3; ++n) sum += at_bob_distance(FockInput{n}, l2, la, zeta);
                      return sum / 4.0;
                    }});
  fill(t, xs, series);
  return t;
}

Table figure7(const FigureFlags& f) {
  Table t;
  const double zeta = f.zeta.value_or(20.0);
  const double la = f.la.value_or(1.0);
  t.param("zeta", zeta);
  t.param("la", la);
  const auto xs = x_axis(t, f, 0.01, 0.3, 30);
  std::vector<Series> series;
  for (const auto& [z0, a0] : {std::pair{0.78, 0.5}, std::pair{1.44, 1.0}, std::pair{1.63, 2.0}}) {
    const InputState in = GaussianInput{z0, {a0, 0.0}};
    series.push_back({"squeezed:zeta0=" + format_number(z0) + ";alpha0=" + format_number(a0),
                      [=](double l12) { return optimize_source_position(in, l12, la, zeta).l1; }});
  }
  for (int n : {1, 5, 10}) {
    const InputState in = FockInput{n};
    series.push_back({label("fock:N=", n), [=](double l12) { return optimize_source_position(in, l12, la, zeta).l1; }});
  }
  fill(t, xs, series);
  return t;
}

}  // namespace

Table figure(int id, const FigureFlags& f) {
  Table t;
  switch (id) {
    case 1: t = figure1(f); break;
    case 2: t = figure2(f); break;
    case 3: t = figure3(f); break;
    case 4: t = figure4(f); break;
    case 5: t = figure5(f); break;
    case 6: t = figure6(f); break;
    case 7: t = figure7(f); break;
    default: throw UsageError("figure id must be 1-7, got " + std::to_string(id));
  }
  t.command = "figure";
  t.parameters.insert(t.parameters.begin(), {"id", std::to_string(id)});
  return t;
}

}  // namespace cvtp::cli

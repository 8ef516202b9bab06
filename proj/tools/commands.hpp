#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvtp/channel.hpp"
#include "cvtp/state.hpp"
#include "table.hpp"

namespace cvtp::cli {

/// Invalid or inconsistent flags; reported with exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StateFlags {
  std::string kind;  // squeezed | coherent | fock
  std::optional<double> zeta0;
  double alpha0 = 0.0;
  double alpha0_im = 0.0;
  std::optional<int> photons;

  bool given() const { return !kind.empty(); }
  InputState resolve() const;
  void echo(Table& t) const;
};

struct ChannelFlags {
  double zeta = 0.0;
  double phase = 0.0;
  double t1 = 1.0, t2 = 1.0;
  std::optional<double> l1, l2;
  double la = 1.0;
  double nth1 = 0.0, nth2 = 0.0;
  std::string lambda = "auto";

  ChannelParams resolve() const;
  double gain(const ChannelParams& p) const;
  void echo(Table& t) const;
};

struct FigureFlags {
  std::optional<double> start, stop;
  std::optional<int> count;
  std::optional<double> zeta, t2, zeta0, alpha0, la;
  std::optional<int> photons, order;
  std::vector<double> t2_list, zeta_list;
};

Table figure(int id, const FigureFlags& f);

struct CheckResult {
  bool passed = true;
  nlohmann::ordered_json summary;
};

struct OracleFlags {
  double perturb_sigma = 0.0;
  int grid_n = 512;
};

CheckResult oracle_check(const StateFlags& state, const OracleFlags& flags);

struct MonteCarloFlags {
  std::optional<unsigned long long> seed;
  std::size_t samples = 100000;
};

CheckResult mc_check(const StateFlags& state, const ChannelFlags& channel,
                     const MonteCarloFlags& flags);

/// `count` points from start to stop, geometric if `log`.
std::vector<double> axis(double start, double stop, int count, bool log = false);

}  // namespace cvtp::cli

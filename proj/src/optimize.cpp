#include "cvtp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cvtp/errors.hpp"

namespace cvtp {

namespace {

// Wraps f and remembers the best point seen.
class Recorder {
 public:
  explicit Recorder(const std::function<double(double)>& f) : f_(f) {}

  double operator()(double x) {
    const double v = f_(x);
    if (std::isfinite(v) && (!any_ || v > best_.value)) {
      best_ = {x, v};
      any_ = true;
    }
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  }

  const ScalarMaximum& best() const { return best_; }

 private:
  const std::function<double(double)>& f_;
  ScalarMaximum best_;
  bool any_ = false;
};

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt 5 - 1) / 2

template <typename F>
ScalarMaximum golden(F&& f, double lo, double hi, double tol) {
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 < f2 ? ScalarMaximum{x2, f2} : ScalarMaximum{x1, f1};
}

// Walks uphill from x0 with doubling steps and returns an interval holding a local maximum.
template <typename F>
std::pair<double, double> bracket(F&& f, double x0, double step, double lo, double hi) {
  const double f0 = f(x0);
  const double up = std::min(x0 + step, hi);
  const double down = std::max(x0 - step, lo);
  const double fu = up > x0 ? f(up) : -std::numeric_limits<double>::infinity();
  const double fd = down < x0 ? f(down) : -std::numeric_limits<double>::infinity();
  if (f0 >= fu && f0 >= fd) return {down, up};

  const double dir = fu > fd ? 1.0 : -1.0;
  double prev = x0;
  double cur = dir > 0 ? up : down;
  double fcur = dir > 0 ? fu : fd;
  double h = step;
  while (true) {
    h *= 2.0;
    const double next = std::clamp(cur + dir * h, lo, hi);
    if (next == cur) return dir > 0 ? std::pair{prev, hi} : std::pair{lo, prev};
    const double fnext = f(next);
    if (fnext < fcur) return dir > 0 ? std::pair{prev, next} : std::pair{next, prev};
    prev = cur;
    cur = next;
    fcur = fnext;
  }
}

}  // namespace

ScalarMaximum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 double tol) {
  if (!(hi > lo)) throw DomainError("golden_section_max: empty interval");
  return golden(f, lo, hi, tol);
}

ScalarMaximum maximize(const std::function<double(double)>& f, double lo, double hi,
                       const MaximizeOptions& options) {
  if (!(hi > lo)) throw DomainError("maximize: empty interval");
  Recorder rec(f);
  const int n = std::max(options.scan_points, 2);
  double best_scan = lo;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double x = i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
    const double v = rec(x);
    if (v > best_value) {
      best_value = v;
      best_scan = x;
    }
  }

  std::vector<double> starts{best_scan};
  for (double s : options.seeds) {
    if (std::isfinite(s)) starts.push_back(std::clamp(s, lo, hi));
  }
  const double step = 1e-3 * (hi - lo);
  for (double x0 : starts) {
    const auto [a, b] = bracket(rec, x0, step, lo, hi);
    if (b > a) golden(rec, a, b, options.tol);
  }
  return rec.best();
}

GaussHermiteRule gauss_hermite(int order) {
  if (order < 1) throw DomainError("gauss_hermite: order must be positive");
  // Jacobi matrix of the Hermite recurrence: off-diagonal sqrt(k/2).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) throw QuadratureError("gauss_hermite: eigensolver failed");
  GaussHermiteRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = std::sqrt(std::numbers::pi) * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

}  // namespace cvtp

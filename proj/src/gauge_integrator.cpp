#include "gaugequad/gauge_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gaugequad {

namespace {

class Accumulator {
 public:
  explicit Accumulator(Summation mode) : mode_(mode) {}

  void add(double term) {
    if (mode_ == Summation::naive) {
      sum_ += term;
      return;
    }
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      carry_ += (sum_ - t) + term;
    } else {
      carry_ += (term - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + carry_; }

 private:
  Summation mode_;
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double checked(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw NonFiniteValue("integrand is not finite at x = " + std::to_string(x));
  }
  return y;
}

}  // namespace

double riemann_sum(const RealFunction& f, const TaggedPartition& p, Summation mode) {
  Accumulator acc(mode);
  for (const auto& c : p) {
    acc.add(checked(f, c.tag()) * (c.cell().b() - c.cell().a()));
  }
  return acc.value();
}

double stieltjes_sum(const RealFunction& f, const RealFunction& g, const TaggedPartition& p,
                     Summation mode) {
  Accumulator acc(mode);
  for (const auto& c : p) {
    acc.add(checked(f, c.tag()) * (checked(g, c.cell().b()) - checked(g, c.cell().a())));
  }
  return acc.value();
}

GaugeFamily::GaugeFamily(std::function<Gauge(double)> at) : at_(std::move(at)) {
  if (!at_) {
    throw InvalidArgument("gauge family needs a generator");
  }
}

Gauge GaugeFamily::at(double eps) const {
  if (!(eps > 0.0)) {
    throw InvalidTolerance("gauge family queried with non-positive eps");
  }
  return at_(eps);
}

GaugeFamily constant_gauge_family(double scale, double power) {
  if (!(scale > 0.0) || !(power > 0.0)) {
    throw InvalidArgument("constant gauge family needs positive scale and power");
  }
  return GaugeFamily(
      [scale, power](double eps) { return constant_gauge(scale * std::pow(eps, power)); });
}

IntegralEstimate gauge_integrate(const RealFunction& f, const GaugeFamily& gf,
                                 const Interval& domain, double tol, int trials,
                                 std::uint64_t seed, const IntegrationOptions& options) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidTolerance("tolerance must be positive and finite");
  }
  if (trials < 2) {
    throw InvalidArgument("gauge_integrate needs at least 2 trials");
  }

  std::optional<IntegralEstimate> last;
  double eps = tol;
  for (int level = 0; level < options.max_levels; ++level, eps *= 0.5) {
    const Gauge g = gf.at(eps);
    double lo = 0.0;
    double hi = 0.0;
    std::size_t cells = 0;
    try {
      const TaggedPartition base =
          cousin_partition(domain, g, options.max_depth, options.max_cells);
      cells = base.size();
      lo = hi = riemann_sum(f, base, options.summation);
      for (int t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(level) * 1'000'003u +
                                                      static_cast<std::uint64_t>(t));
        const TaggedPartition p =
            random_delta_fine_partition(domain, g, s, options.max_depth, options.max_cells);
        const double r = riemann_sum(f, p, options.summation);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    } catch (const DepthExceeded&) {
      if (!last) throw;
      return *last;
    } catch (const CellLimitExceeded&) {
      if (!last) throw;
      return *last;
    }

    IntegralEstimate est;
    est.value = lo + 0.5 * (hi - lo);
    est.spread = hi - lo;
    est.cells_used = cells;
    est.trials = trials;
    est.epsilon = eps;
    est.levels = level + 1;
    est.converged = est.spread <= tol;
    if (est.converged) {
      return est;
    }
    last = est;
  }
  return *last;
}

double sum_defect(const RealFunction& F, const RealFunction& f, const TaggedPartition& p) {
  const double newton = checked(F, p.domain().b()) - checked(F, p.domain().a());
  return std::abs(newton - riemann_sum(f, p));
}

TaggedPartition riemann_unboundedness_witness(const RealFunction& f, const Interval& domain,
                                              double delta_const, double bound,
                                              long max_probes) {
  if (!(delta_const > 0.0) || !std::isfinite(delta_const)) {
    throw InvalidArgument("delta_const must be positive and finite");
  }
  if (!std::isfinite(bound)) {
    throw InvalidArgument("bound must be finite");
  }
  const double len = domain.length();
  const auto n = static_cast<std::size_t>(std::floor(len / delta_const)) + 1;

  std::vector<double> points(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    points[i] = domain.a() + len * (static_cast<double>(i) / static_cast<double>(n));
  }
  points.back() = domain.b();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(points[i + 1] - points[i] < delta_const)) {
      throw InvalidArgument("cannot build cells shorter than delta_const on this domain");
    }
  }

  auto midpoint = [&](std::size_t i) { return points[i] + 0.5 * (points[i + 1] - points[i]); };
  auto build = [&](std::size_t swept, double tag) {
    std::vector<TaggedInterval> cells;
    cells.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      cells.emplace_back(i == swept ? tag : midpoint(i), Interval(points[i], points[i + 1]));
    }
    return TaggedPartition(domain, std::move(cells));
  };

  // Sweep toward the left endpoint inside the first cell, then toward the
  // right endpoint inside the last cell.
  constexpr double kRatio = 0.9999;
  const long per_end = std::max(1L, max_probes / 2);
  for (std::size_t swept : {std::size_t{0}, n - 1}) {
    double rest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != swept) {
        rest += checked(f, midpoint(i)) * (points[i + 1] - points[i]);
      }
    }
    const double h = points[swept + 1] - points[swept];
    const double anchor = swept == 0 ? points[0] : points[n];
    const double dir = swept == 0 ? 1.0 : -1.0;
    const double need = std::abs(bound) + std::abs(rest);
    double offset = h;
    for (long k = 0; k < per_end; ++k) {
      offset *= kRatio;
      const double t = anchor + dir * offset;
      if (t == anchor) {
        break;
      }
      const double y = f(t);
      if (std::isfinite(y) && std::abs(y) * h > need) {
        return build(swept, t);
      }
    }
    if (n == 1) {
      break;
    }
  }
  throw WitnessNotFound("no tag found whose term dominates bound " + std::to_string(bound));
}

}  // namespace gaugequad

#include "gaugequad/paper_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

namespace gaugequad::paper {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this the gap between adjacent roots (about pi x^3 / 2) drops under
// a few ulps of x, so roots cannot be told apart in double precision.
constexpr double kRootsUnresolvedBelow = 1e-8;

constexpr double kLoopFinenessScale = 0.05;
constexpr double kMaxLoopFraction = 0.0625;

void require_unit_domain(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("x = " + std::to_string(x) + " is outside [0, 1]");
  }
}

double root(std::int64_t n) {
  return std::sqrt(2.0 / ((2.0 * static_cast<double>(n) + 1.0) * kPi));
}

double structural_delta(double x, double cap) {
  if (x < 0.0) {
    throw DomainError("paper gauge queried at negative x");
  }
  if (x == 0.0) {
    return cap;
  }
  if (x < kRootsUnresolvedBelow) {
    return x * 0x1.0p-40;
  }
  const double r1 = root(1);
  if (x > r1) {
    return std::min(cap, 0.5 * (x - r1));
  }
  const std::int64_t n = loop_bracket(x);
  const double upper = root(n);
  const double lower = root(n + 1);
  const double s = x == upper ? 0.5 * std::min(upper, upper - lower)
                              : 0.5 * std::min(x - lower, upper - x);
  return std::min(cap, s);
}

// Tightening shared by the f and f_j families.
double refined_delta(double x, double eps) {
  const double d = structural_delta(x, 0.5 * std::sqrt(eps));
  if (x == 0.0 || x < kRootsUnresolvedBelow) {
    return d;
  }
  const double r1 = root(1);
  if (x > r1) {
    return std::min(d, 2.0 * eps / f_derivative_bound(0.5 * (x + r1)));
  }
  const std::int64_t n = loop_bracket(x);
  const double width = root(n) - root(n + 1);
  const double fraction =
      std::min({kMaxLoopFraction, std::sqrt(eps), kLoopFinenessScale * eps / (x * x)});
  return std::min(d, fraction * width);
}

}  // namespace

LoopIndex::LoopIndex(std::int64_t value) : n(value) {
  if (value < 1) {
    throw InvalidArgument("loop index must be >= 1");
  }
}

FamilyIndex::FamilyIndex(std::int64_t value) : j(value) {
  if (value < 1) {
    throw InvalidArgument("family index must be >= 1");
  }
}

double f(double x) {
  require_unit_domain(x);
  if (x == 0.0) {
    return 0.0;
  }
  const double u = 1.0 / (x * x);
  return 2.0 * x * std::sin(u) - (2.0 / x) * std::cos(u);
}

double f_j(FamilyIndex j, double x) {
  require_unit_domain(x);
  return x < 1.0 / static_cast<double>(j.j) ? 0.0 : f(x);
}

double F(double x) {
  require_unit_domain(x);
  if (x == 0.0) {
    return 0.0;
  }
  return x * x * std::sin(1.0 / (x * x));
}

double F_j(FamilyIndex j, double x) {
  require_unit_domain(x);
  return x < 1.0 / static_cast<double>(j.j) ? 0.0 : F(x);
}

double f_derivative_bound(double x) {
  const double inv2 = 1.0 / (x * x);
  return 2.0 + 2.0 * inv2 + 4.0 * inv2 * inv2;
}

double loop_root(LoopIndex n) { return root(n.n); }

std::int64_t loop_bracket(double x) {
  if (!(x > 0.0) || x > root(1)) {
    throw DomainError("loop_bracket needs 0 < x <= loop_root(1)");
  }
  const double t = 0.5 * (2.0 / (kPi * x * x) - 1.0);
  auto n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(t)));
  while (root(n + 1) >= x) {
    ++n;
  }
  while (n > 1 && root(n) < x) {
    --n;
  }
  return n;
}

double loop_area_estimate(LoopIndex n) {
  const double k = static_cast<double>(n.n);
  return (2.0 / kPi) * (1.0 / (2.0 * k + 1.0) + 1.0 / (2.0 * k + 3.0));
}

std::optional<double> loop_root_split(double u, double v) {
  const double r1 = root(1);
  if (v <= 0.0 || u > r1 || v < kRootsUnresolvedBelow) {
    return std::nullopt;
  }
  // Smallest index with root < v, largest with root > u.
  std::int64_t first = 1;
  if (v <= r1) {
    first = loop_bracket(v) + 1;
  }
  std::int64_t last = std::numeric_limits<std::int64_t>::max();
  if (u > 0.0) {
    if (u < kRootsUnresolvedBelow) {
      return std::nullopt;
    }
    const std::int64_t b = loop_bracket(u);
    last = root(b) == u ? b - 1 : b;
  }
  if (first > last) {
    return std::nullopt;
  }
  const double m = u + 0.5 * (v - u);
  std::int64_t near = m > r1 ? 1 : loop_bracket(m);
  near = std::clamp(near, first, last);
  double best = root(near);
  if (near + 1 <= last && std::abs(root(near + 1) - m) < std::abs(best - m)) {
    best = root(near + 1);
  }
  return best;
}

Gauge paper_gauge(double eps_scale) {
  if (!(eps_scale > 0.0)) {
    throw InvalidArgument("eps_scale must be positive");
  }
  return Gauge([eps_scale](double x) { return structural_delta(x, eps_scale); },
               loop_root_split);
}

GaugeFamily paper_gauge_family() {
  return GaugeFamily(
      [](double eps) { return Gauge([eps](double x) { return refined_delta(x, eps); },
                                    loop_root_split); });
}

GaugeFamily truncated_gauge_family(FamilyIndex j) {
  const double cut = 1.0 / static_cast<double>(j.j);
  return GaugeFamily([cut](double eps) {
    auto delta = [cut, eps](double x) {
      if (x < cut) {
        return cut - x;
      }
      if (x == cut) {
        return std::min(refined_delta(x, eps), eps / (4.0 * (std::abs(f(cut)) + 1.0)));
      }
      return std::min(refined_delta(x, eps), x - cut);
    };
    auto hint = [cut](double u, double v) -> std::optional<double> {
      if (u < cut && cut < v) {
        return cut;
      }
      if (u >= cut) {
        return loop_root_split(u, v);
      }
      return std::nullopt;
    };
    return Gauge(delta, hint);
  });
}

double exact_integral_f() { return std::sin(1.0); }

double exact_integral_fj(FamilyIndex j) {
  const double jj = static_cast<double>(j.j) * static_cast<double>(j.j);
  return std::sin(1.0) - std::sin(jj) / jj;
}

double figure_value(Figure which, double x) {
  require_unit_domain(x);
  if (x == 0.0) {
    throw DomainError("figures are sampled on x > 0");
  }
  const double u = 1.0 / (x * x);
  switch (which) {
    case Figure::fig1:
      return 2.0 * x * std::sin(u);
    case Figure::fig2:
      return (2.0 / x) * std::cos(u);
    case Figure::fig3:
      return 2.0 * x * std::sin(u) - (2.0 / x) * std::cos(u);
    case Figure::fig4:
      return x * x * std::sin(u);
  }
  throw InvalidArgument("unknown figure");
}

std::vector<FigurePoint> figure_samples(Figure which, double x_min, double x_max, int count) {
  if (!(x_min > 0.0 && x_min < x_max && x_max <= 1.0)) {
    throw DomainError("figure range must satisfy 0 < x_min < x_max <= 1");
  }
  if (count < 2) {
    throw DomainError("figure needs at least 2 samples");
  }
  std::vector<FigurePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  const double step = (x_max - x_min) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    const double x = i == count - 1 ? x_max : x_min + step * static_cast<double>(i);
    out.push_back({x, figure_value(which, x)});
  }
  return out;
}

std::vector<LoopSeriesRow> loop_series(std::int64_t n_max) {
  if (n_max < 1) {
    throw InvalidArgument("loop series needs n_max >= 1");
  }
  std::vector<LoopSeriesRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  double even = 0.0;
  double odd = 0.0;
  double alt = 0.0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double a = loop_area_estimate(LoopIndex(n));
    if (n % 2 == 0) {
      even += a;
      alt += a;
    } else {
      odd += a;
      alt -= a;
    }
    rows.push_back({n, root(n), a, even, odd, alt});
  }
  return rows;
}

std::int64_t first_exceeding(const std::vector<LoopSeriesRow>& rows, bool even,
                             double threshold) {
  for (const auto& r : rows) {
    if ((r.n % 2 == 0) == even && (even ? r.even_sum : r.odd_sum) > threshold) {
      return r.n;
    }
  }
  return 0;
}

std::int64_t alternating_bracket_violations(const std::vector<LoopSeriesRow>& rows) {
  const std::size_t count = rows.size();
  if (count < 3) {
    return 0;
  }
  // suffix extrema of S over indices >= k
  std::vector<double> suffix_min(count);
  std::vector<double> suffix_max(count);
  suffix_min[count - 1] = suffix_max[count - 1] = rows[count - 1].alternating_sum;
  for (std::size_t k = count - 1; k-- > 0;) {
    suffix_min[k] = std::min(suffix_min[k + 1], rows[k].alternating_sum);
    suffix_max[k] = std::max(suffix_max[k + 1], rows[k].alternating_sum);
  }
  std::int64_t violations = 0;
  for (std::size_t k = 0; k + 2 < count; ++k) {
    const double lo = std::min(rows[k].alternating_sum, rows[k + 1].alternating_sum);
    const double hi = std::max(rows[k].alternating_sum, rows[k + 1].alternating_sum);
    if (suffix_min[k + 2] < lo || suffix_max[k + 2] > hi) {
      ++violations;
    }
  }
  return violations;
}

}  // namespace gaugequad::paper

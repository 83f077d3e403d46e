#pragma once

// The oscillating example family on [0, 1]:
//
//   f(x)    = 2x sin(1/x^2) - (2/x) cos(1/x^2),  f(0) = 0
//   f_j(x)  = f(x) for x >= 1/j, 0 below
//   F(x)    = x^2 sin(1/x^2),                    F(0) = 0     (F' = f)
//   F_j(x)  = F(x) for x >= 1/j, 0 below
//
// f has a primitive but is unbounded near 0 and |f| is not integrable:
// the loops between the roots x_n = sqrt(2 / ((2n+1) pi)) of the cosine
// term have areas close to a_n = (2/pi)(1/(2n+1) + 1/(2n+3)), whose sum
// diverges while the alternating sum converges.
//
// Below about 1e-7 the argument 1/x^2 exceeds 1e14 and sin/cos lose all
// phase accuracy. Values there are finite but meaningless; the gauges in
// this file keep every positive tag well above that range.

#include <cstdint>
#include <optional>
#include <vector>

#include "gaugequad/gauge_integrator.hpp"
#include "gaugequad/interval_partition.hpp"

namespace gaugequad::paper {

inline constexpr double kPhaseReliableMin = 1e-7;

/// Index n >= 1 of a loop root.
struct LoopIndex {
  explicit LoopIndex(std::int64_t value);
  std::int64_t n;
};

/// Truncation index j >= 1 of f_j and F_j.
struct FamilyIndex {
  explicit FamilyIndex(std::int64_t value);
  std::int64_t j;
};

double f(double x);
double f_j(FamilyIndex j, double x);
double F(double x);
double F_j(FamilyIndex j, double x);

/// Upper bound on |f'(x)| for x > 0: 2 + 2/x^2 + 4/x^4.
double f_derivative_bound(double x);

/// sqrt(2 / ((2n+1) pi)); strictly decreasing in n.
double loop_root(LoopIndex n);

/// The n with loop_root(n+1) < x <= loop_root(n), for 0 < x <= loop_root(1).
std::int64_t loop_bracket(double x);

/// a_n = (2/pi)(1/(2n+1) + 1/(2n+3)).
double loop_area_estimate(LoopIndex n);

/// Structural gauge on [0, 1], capped by eps_scale:
///   x = 0:                 eps_scale
///   x > loop_root(1):      min(eps_scale, (x - root_1)/2)
///   x = loop_root(n):      min(eps_scale, min(root_n, root_n - root_{n+1})/2)
///   root_{n+1} < x < root_n: min(eps_scale, min(x - root_{n+1}, root_n - x)/2)
/// Every positive tag's cell stays inside one loop unless the tag is the
/// root itself. The gauge hints loop roots as split points.
Gauge paper_gauge(double eps_scale);

/// Gauge family for f used by the integrator and the convergence checks.
///
/// at(eps) is paper_gauge(sqrt(eps)/2) tightened by two eps-dependent terms:
///   * inside loop n: at most min(1/16, sqrt(eps), 0.05 eps / x^2) of the
///     loop width;
///   * above loop_root(1): at most 2 eps / f_derivative_bound((x + root_1)/2),
///     so each cell's first-order Taylor defect is bounded by 2 eps |I|.
/// The tag-0 cell has length below sqrt(eps)/2, so it misses at most
/// |F(u_1)| <= eps/4.
GaugeFamily paper_gauge_family();

/// Gauge family for f_j: the paper family above 1/j, cells that never cross
/// 1/j unless tagged there, and a tight radius at 1/j itself. 1/j is hinted
/// as a split point.
GaugeFamily truncated_gauge_family(FamilyIndex j);

/// Split hint returning the loop root in (u, v) nearest the midpoint.
std::optional<double> loop_root_split(double u, double v);

double exact_integral_f();                 // sin 1
double exact_integral_fj(FamilyIndex j);   // sin 1 - sin(j^2)/j^2

enum class Figure { fig1 = 1, fig2 = 2, fig3 = 3, fig4 = 4 };

struct FigurePoint {
  double x;
  double y;
};

/// fig1: 2x sin x^-2, fig2: 2x^-1 cos x^-2, fig3: fig1 - fig2 (= f), fig4: F.
double figure_value(Figure which, double x);

/// `count` evenly spaced samples on [x_min, x_max], 0 < x_min < x_max <= 1.
std::vector<FigurePoint> figure_samples(Figure which, double x_min, double x_max, int count);

struct LoopSeriesRow {
  std::int64_t n;
  double root;
  double area;             // a_n
  double even_sum;         // a_2 + a_4 + ... up to n
  double odd_sum;          // a_1 + a_3 + ... up to n
  double alternating_sum;  // -a_1 + a_2 - ... + (-1)^n a_n
};

std::vector<LoopSeriesRow> loop_series(std::int64_t n_max);

/// First n (of the given parity) whose partial sum exceeds `threshold`, or
/// 0 if none does within the table.
std::int64_t first_exceeding(const std::vector<LoopSeriesRow>& rows, bool even,
                             double threshold);

/// Counts steps n for which some later alternating partial sum falls
/// outside [min(S_n, S_{n+1}), max(S_n, S_{n+1})].
std::int64_t alternating_bracket_violations(const std::vector<LoopSeriesRow>& rows);

}  // namespace gaugequad::paper

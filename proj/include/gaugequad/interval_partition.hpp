#pragma once

// Tagged partitions of a compact interval and the gauges that govern them.
//
// A gauge assigns each point x a positive radius delta(x). A tagged
// partition {(x_i, [u_{i-1}, u_i])} is delta-fine when every cell stays
// within delta(x_i) of its tag on both sides:
//
//     x_i - u_{i-1} < delta(x_i)   and   u_i - x_i < delta(x_i).
//
// Cells are closed and tags may sit on cell endpoints. Neighbouring cells
// share an endpoint, which has zero length and does not affect sums.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gaugequad/errors.hpp"

namespace gaugequad {

inline constexpr int kDefaultMaxDepth = 64;
inline constexpr std::size_t kDefaultMaxCells = std::size_t{1} << 23;

/// Closed interval [a, b] with finite a < b.
class Interval {
 public:
  Interval(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double length() const { return b_ - a_; }
  double midpoint() const { return a_ + 0.5 * (b_ - a_); }
  bool contains(double x) const { return a_ <= x && x <= b_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

/// A cell together with the point at which the integrand is sampled.
class TaggedInterval {
 public:
  TaggedInterval(double tag, Interval cell);

  double tag() const { return tag_; }
  const Interval& cell() const { return cell_; }
  double length() const { return cell_.length(); }

  friend bool operator==(const TaggedInterval&, const TaggedInterval&) = default;

 private:
  double tag_;
  Interval cell_;
};

/// Ordered, abutting cells that exactly cover `domain`.
class TaggedPartition {
 public:
  TaggedPartition(Interval domain, std::vector<TaggedInterval> cells);

  const Interval& domain() const { return domain_; }
  const std::vector<TaggedInterval>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  const TaggedInterval& operator[](std::size_t i) const { return cells_[i]; }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  /// Left-to-right sum of cell lengths.
  double total_length() const;

  friend bool operator==(const TaggedPartition&, const TaggedPartition&) = default;

 private:
  Interval domain_;
  std::vector<TaggedInterval> cells_;
};

/// Returns a point strictly inside (u, v) at which construction should split
/// a cell that failed the fineness test, or nothing to fall back to the
/// constructor's own split rule.
using SplitHint = std::function<std::optional<double>(double u, double v)>;

/// Positive-valued fineness rule delta(x).
///
/// A gauge may also carry a split hint. Gauges that only accept cells
/// straddling some special point when that point is the tag (the roots of
/// an oscillating integrand, a jump) use it so that bisection lands on those
/// points exactly instead of refining around them forever.
class Gauge {
 public:
  explicit Gauge(std::function<double(double)> delta, SplitHint hint = {});

  /// delta(x); throws InvalidGauge unless the value is strictly positive.
  double operator()(double x) const;

  /// Hinted split point, only if it lies strictly inside (u, v).
  std::optional<double> split_hint(double u, double v) const;

 private:
  std::function<double(double)> delta_;
  SplitHint hint_;
};

Gauge constant_gauge(double delta);

/// Pointwise minimum of two gauges. Split hints are taken from `first`,
/// then `second`.
Gauge min_gauge(Gauge first, Gauge second);

bool is_delta_fine(const TaggedPartition& p, const Gauge& g);

/// Deterministic delta-fine partition by recursive bisection (Cousin's
/// lemma). A cell [u, v] is accepted with the first tag t among u, the
/// midpoint, and v for which t - u < delta(t) and v - t < delta(t);
/// otherwise it is split at the gauge's hint, or at the midpoint.
///
/// Throws DepthExceeded when a cell at `max_depth` is still rejected or can
/// no longer be split, and CellLimitExceeded past `max_cells` cells.
TaggedPartition cousin_partition(const Interval& domain, const Gauge& g,
                                 int max_depth = kDefaultMaxDepth,
                                 std::size_t max_cells = kDefaultMaxCells);

/// Like cousin_partition, but split points are drawn uniformly from the
/// middle half of each rejected cell (unless the gauge hints one) and the
/// three tag candidates are tried in a random order. Same seed, same output.
TaggedPartition random_delta_fine_partition(const Interval& domain, const Gauge& g,
                                            std::uint64_t seed,
                                            int max_depth = kDefaultMaxDepth,
                                            std::size_t max_cells = kDefaultMaxCells);

/// Mixes a base seed with a stream index (splitmix64). Used to give each
/// trial of a sampling run its own reproducible seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace gaugequad

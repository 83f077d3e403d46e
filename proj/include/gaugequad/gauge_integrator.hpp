#pragma once

// Riemann and Stieltjes sums over tagged partitions, and a sampling-based
// estimator for the gauge (Riemann-complete) integral.

#include <cstddef>
#include <cstdint>
#include <functional>

#include "gaugequad/interval_partition.hpp"

namespace gaugequad {

/// Pointwise integrand. Must return finite values on the queried domain;
/// singular formulas are patched by the caller (e.g. f(0) = 0).
using RealFunction = std::function<double(double)>;

enum class Summation {
  naive,        // plain left-to-right accumulation
  compensated,  // Neumaier compensated accumulation, same term order
};

double riemann_sum(const RealFunction& f, const TaggedPartition& p,
                   Summation mode = Summation::naive);

/// Sum of f(tag) * (g(cell.b) - g(cell.a)). With g the identity this is
/// bitwise equal to riemann_sum.
double stieltjes_sum(const RealFunction& f, const RealFunction& g, const TaggedPartition& p,
                     Summation mode = Summation::naive);

/// Maps an accuracy demand eps to a gauge. Smaller eps must give a
/// pointwise smaller gauge.
class GaugeFamily {
 public:
  explicit GaugeFamily(std::function<Gauge(double eps)> at);
  Gauge at(double eps) const;

 private:
  std::function<Gauge(double)> at_;
};

/// delta_eps(x) = scale * eps^power for every x.
GaugeFamily constant_gauge_family(double scale = 1.0, double power = 1.0);

struct IntegralEstimate {
  double value = 0.0;
  double spread = 0.0;         // max - min of the sampled sums at the final level
  std::size_t cells_used = 0;  // cells in the deterministic partition, final level
  int trials = 0;              // random partitions sampled per level
  bool converged = false;
  double epsilon = 0.0;        // gauge accuracy demand at the final level
  int levels = 0;              // number of eps levels evaluated
};

struct IntegrationOptions {
  int max_depth = kDefaultMaxDepth;
  std::size_t max_cells = kDefaultMaxCells;
  int max_levels = 24;
  Summation summation = Summation::naive;
};

/// Estimates the gauge integral of f over `domain`.
///
/// For eps = tol, tol/2, tol/4, ... the cousin partition and `trials`
/// random partitions that are fine for gf.at(eps) are built and their
/// Riemann sums compared. The first level whose sums lie within `tol` of
/// each other returns converged = true, value = midpoint of [min, max].
/// If partition construction fails (depth or cell limit) or max_levels
/// runs out, the last complete level is returned with converged = false;
/// if even the first level cannot be built, the construction error
/// propagates.
///
/// Sampling is a surrogate for "every delta-fine partition": a converged
/// result is evidence, not a proof.
IntegralEstimate gauge_integrate(const RealFunction& f, const GaugeFamily& gf,
                                 const Interval& domain, double tol, int trials,
                                 std::uint64_t seed, const IntegrationOptions& options = {});

/// |(F(b) - F(a)) - riemann_sum(f, p)|: how far the Riemann sum is from
/// the Newton-Leibniz value given a primitive F of f.
double sum_defect(const RealFunction& F, const RealFunction& f, const TaggedPartition& p);

/// Builds a partition whose cells are all shorter than `delta_const` but
/// whose Riemann sum exceeds |bound| in magnitude, by sweeping the tag of
/// the first (then the last) cell geometrically toward the domain endpoint.
/// The other cells carry midpoint tags. Throws WitnessNotFound if no tag is
/// found within `max_probes` evaluations.
TaggedPartition riemann_unboundedness_witness(const RealFunction& f, const Interval& domain,
                                              double delta_const, double bound,
                                              long max_probes = 1'000'000);

}  // namespace gaugequad

#pragma once

// Empirical checks of the Riemann-sum convergence criteria for a sequence
// f_j -> g:
//
//   criterion 1  sums with a per-tag index j(x_i) > p(x_i) stay within eps
//                of alpha_1 (evidence that g is integrable with integral
//                alpha_1);
//   criterion 2  sums of a single f_j, j > q(eps), over delta_j-fine
//                partitions stay within 2 eps of alpha_2 (evidence that
//                the integrals of f_j converge);
//   criterion 3  the limit and the integral interchange iff alpha_1 = alpha_2.
//
// The criteria quantify over every admissible partition and index choice.
// The checkers sample both and count violations, so they can falsify but
// never prove.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gaugequad/gauge_integrator.hpp"
#include "gaugequad/interval_partition.hpp"

namespace gaugequad {

struct IntegrandFamily {
  std::function<double(std::int64_t j, double x)> member;
  RealFunction limit;
  Interval domain;

  RealFunction member_function(std::int64_t j) const;
};

/// p(x) of criterion 1: admissible indices are those strictly above it.
struct IndexSelector {
  std::function<std::int64_t(double x)> threshold;
};

struct CriterionReport {
  double alpha = 0.0;
  double epsilon = 0.0;
  int trials = 0;               // number of sums checked
  int violations = 0;
  double worst_deviation = 0.0; // max |alpha - sum|
  bool passed = false;
  int limit_sum_matches = 0;    // criterion 1 only: sums bitwise equal to the limit's sum
};

/// Sum of member(indices[i])(tag_i) * |I_i|, left to right.
double variable_index_sum(const IntegrandFamily& fam, std::span<const std::int64_t> indices,
                          const TaggedPartition& p);

struct Criterion1Sampling {
  int partitions = 10;        // partition 0 is the cousin partition
  int index_vectors = 10;     // per partition
  std::int64_t index_headroom = 1000;
  std::uint64_t seed = 1;
};

/// For each sampled partition fine for gf.at(eps), draws index vectors with
/// indices_i uniform in (threshold(tag_i), threshold(tag_i) + headroom] and
/// counts sums with |alpha1 - sum| >= eps.
CriterionReport check_criterion1(const IntegrandFamily& fam, const GaugeFamily& gf,
                                 const IndexSelector& sel, double alpha1, double eps,
                                 const Criterion1Sampling& sampling = {});

/// For every j in j_list (all must exceed q), samples `trials` partitions
/// fine for gauge_for(j) (the first one is the cousin partition) and counts
/// sums of member(j) with |alpha2 - sum| >= 2 eps.
CriterionReport check_criterion2(const IntegrandFamily& fam,
                                 const std::function<Gauge(std::int64_t j)>& gauge_for,
                                 double alpha2, double eps, std::int64_t q,
                                 const std::vector<std::int64_t>& j_list, int trials,
                                 std::uint64_t seed);

bool check_criterion3(double alpha1, double alpha2, double tol);

namespace paper {

/// f_j / f on [0, 1].
IntegrandFamily example_family();

/// Smallest j with 1/j <= x (so f_j(x) = f(x)); 1 at x = 0.
IndexSelector example_selector();

/// q(eps) = ceil(1/sqrt(eps)), so that 1/j^2 < eps for every j > q.
std::int64_t example_q(double eps);

}  // namespace paper

}  // namespace gaugequad

#include "gaugequad/convergence_criteria.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gaugequad/paper_functions.hpp"

namespace gaugequad {

namespace {

TaggedPartition sample_partition(const Interval& domain, const Gauge& g, int index,
                                 std::uint64_t seed) {
  if (index == 0) {
    return cousin_partition(domain, g);
  }
  return random_delta_fine_partition(domain, g,
                                     derive_seed(seed, static_cast<std::uint64_t>(index)));
}

void record(CriterionReport& report, double sum, double band) {
  const double dev = std::abs(report.alpha - sum);
  ++report.trials;
  report.worst_deviation = std::max(report.worst_deviation, dev);
  if (!(dev < band)) {
    ++report.violations;
  }
}

}  // namespace

RealFunction IntegrandFamily::member_function(std::int64_t j) const {
  return [m = member, j](double x) { return m(j, x); };
}

double variable_index_sum(const IntegrandFamily& fam, std::span<const std::int64_t> indices,
                          const TaggedPartition& p) {
  if (indices.size() != p.size()) {
    throw LengthMismatch("index vector has " + std::to_string(indices.size()) +
                         " entries for " + std::to_string(p.size()) + " cells");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& c = p[i];
    const double y = fam.member(indices[i], c.tag());
    if (!std::isfinite(y)) {
      throw NonFiniteValue("family member is not finite at x = " + std::to_string(c.tag()));
    }
    sum += y * (c.cell().b() - c.cell().a());
  }
  return sum;
}

CriterionReport check_criterion1(const IntegrandFamily& fam, const GaugeFamily& gf,
                                 const IndexSelector& sel, double alpha1, double eps,
                                 const Criterion1Sampling& sampling) {
  if (!(eps > 0.0)) {
    throw InvalidTolerance("criterion 1 needs eps > 0");
  }
  if (sampling.partitions < 1 || sampling.index_vectors < 1 || sampling.index_headroom < 1) {
    throw InvalidArgument("criterion 1 needs partitions, index_vectors, index_headroom >= 1");
  }
  CriterionReport report;
  report.alpha = alpha1;
  report.epsilon = eps;

  const Gauge g = gf.at(eps);
  std::mt19937_64 rng(derive_seed(sampling.seed, 0x1D));
  std::vector<std::int64_t> thresholds;
  std::vector<std::int64_t> indices;
  for (int k = 0; k < sampling.partitions; ++k) {
    const TaggedPartition p = sample_partition(fam.domain, g, k, sampling.seed);
    const double limit_sum = riemann_sum(fam.limit, p);
    thresholds.resize(p.size());
    indices.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      thresholds[i] = sel.threshold(p[i].tag());
    }
    const auto headroom = static_cast<std::uint64_t>(sampling.index_headroom);
    for (int v = 0; v < sampling.index_vectors; ++v) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        indices[i] = thresholds[i] + 1 + static_cast<std::int64_t>(rng() % headroom);
      }
      const double sum = variable_index_sum(fam, indices, p);
      record(report, sum, eps);
      if (sum == limit_sum) {
        ++report.limit_sum_matches;
      }
    }
  }
  report.passed = report.violations == 0;
  return report;
}

CriterionReport check_criterion2(const IntegrandFamily& fam,
                                 const std::function<Gauge(std::int64_t)>& gauge_for,
                                 double alpha2, double eps, std::int64_t q,
                                 const std::vector<std::int64_t>& j_list, int trials,
                                 std::uint64_t seed) {
  if (!(eps > 0.0)) {
    throw InvalidTolerance("criterion 2 needs eps > 0");
  }
  if (trials < 1) {
    throw InvalidArgument("criterion 2 needs trials >= 1");
  }
  for (std::int64_t j : j_list) {
    if (j <= q) {
      throw IndexBelowQ("index " + std::to_string(j) + " is not above q = " + std::to_string(q));
    }
  }
  CriterionReport report;
  report.alpha = alpha2;
  report.epsilon = eps;
  for (std::size_t n = 0; n < j_list.size(); ++n) {
    const std::int64_t j = j_list[n];
    const Gauge g = gauge_for(j);
    const RealFunction member = fam.member_function(j);
    for (int k = 0; k < trials; ++k) {
      const TaggedPartition p =
          sample_partition(fam.domain, g, k, derive_seed(seed, static_cast<std::uint64_t>(n)));
      record(report, riemann_sum(member, p), 2.0 * eps);
    }
  }
  report.passed = report.violations == 0;
  return report;
}

bool check_criterion3(double alpha1, double alpha2, double tol) {
  if (!(tol >= 0.0)) {
    throw InvalidTolerance("criterion 3 needs tol >= 0");
  }
  return std::abs(alpha1 - alpha2) <= tol;
}

namespace paper {

IntegrandFamily example_family() {
  return IntegrandFamily{
      [](std::int64_t j, double x) { return f_j(FamilyIndex(j), x); },
      [](double x) { return f(x); },
      Interval(0.0, 1.0),
  };
}

IndexSelector example_selector() {
  return IndexSelector{[](double x) -> std::int64_t {
    if (x == 0.0) {
      return 1;
    }
    auto j = static_cast<std::int64_t>(std::ceil(1.0 / x));
    while (1.0 / static_cast<double>(j) > x) {
      ++j;
    }
    while (j > 1 && 1.0 / static_cast<double>(j - 1) <= x) {
      --j;
    }
    return std::max<std::int64_t>(j, 1);
  }};
}

std::int64_t example_q(double eps) {
  if (!(eps > 0.0)) {
    throw InvalidTolerance("q(eps) needs eps > 0");
  }
  return static_cast<std::int64_t>(std::ceil(1.0 / std::sqrt(eps)));
}

}  // namespace paper

}  // namespace gaugequad

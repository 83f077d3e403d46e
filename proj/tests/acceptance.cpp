// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gaugequad/convergence_criteria.hpp"
#include "gaugequad/gauge_integrator.hpp"
#include "gaugequad/interval_partition.hpp"
#include "gaugequad/paper_functions.hpp"

using namespace gaugequad;

namespace {

constexpr double kSin1 = 0.8414709848078965;
constexpr std::uint64_t kSeed = 20240601;

// A1
constexpr double kHeadlineTol = 1e-3;
constexpr double kHeadlineSeconds = 30.0;
// A2
constexpr double kTruncatedTol = 1e-4;
// A3: first n at which the even / odd partial sums exceed 1.0 (from an
// independent 40-digit summation).
constexpr std::int64_t kFirstEvenAboveOne = 46;
constexpr std::int64_t kFirstOddAboveOne = 23;
constexpr std::int64_t kBracketRows = 10'000;
// A4: the loop integral is F(root_n) - F(root_{n+1}) = +-a_n exactly, so
// the only gap is integration error.
constexpr std::int64_t kLoopFirst = 50;
constexpr std::int64_t kLoopLast = 200;
constexpr double kLoopTol = 1e-6;
constexpr double kLoopRelTol = 1e-6;  // measured worst: 9.2e-8
// A6 / A7
constexpr double kCriterionEps = 1e-3;
constexpr int kIdentityPartitions = 100;
constexpr int kIdentityVectors = 100;
constexpr int kBandTrials = 10;
// A8
constexpr double kAlphaTol = 1e-9;
// A9
constexpr double kWitnessDelta = 0.1;
constexpr double kWitnessBound = 1e6;
// A10
constexpr double kPolyTol = 1e-9;
constexpr double kPolyErr = 1e-8;
constexpr double kStieltjesDelta = 2e-6;
constexpr double kStieltjesErr = 1e-8;
// A11
constexpr int kRandomGauges = 1000;

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* id, bool ok, const std::string& detail, double secs) {
  std::printf("%s %s  %s  (%.2fs)\n", ok ? "PASS" : "FAIL", id, detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Runs a check, turning an unexpected library error into a failure line.
void criterion(const char* id, const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("error: ") + e.what(), seconds_since(t0));
  }
}

RealFunction paper_f() {
  return [](double x) { return paper::f(x); };
}

bool lengths_match(const TaggedPartition& p) {
  const double total = p.total_length();
  const double ulp = std::nextafter(total, 2.0 * total) - total;
  return std::abs(total - p.domain().length()) <= 8.0 * ulp;
}

double alpha1 = std::nan("");
double alpha2 = std::nan("");
bool alpha1_ok = false;
bool alpha2_ok = false;

}  // namespace

int main() {
  const Interval unit(0.0, 1.0);

  criterion("A1", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto e =
        gauge_integrate(paper_f(), paper::paper_gauge_family(), unit, kHeadlineTol, 8, kSeed);
    const double secs = seconds_since(t0);
    const double err = std::abs(e.value - kSin1);
    report("A1", e.converged && err <= kHeadlineTol && secs < kHeadlineSeconds,
           fmt("integral of f = %.10f, |err| = %.2e <= %.0e, spread %.2e, %zu cells", e.value,
               err, kHeadlineTol, e.spread, e.cells_used),
           secs);
  });

  criterion("A2", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (std::int64_t j : {2, 5, 10, 100}) {
      const paper::FamilyIndex fj(j);
      const auto e = gauge_integrate([fj](double x) { return paper::f_j(fj, x); },
                                     paper::truncated_gauge_family(fj), unit, kTruncatedTol, 8,
                                     kSeed);
      const double err = std::abs(e.value - paper::exact_integral_fj(fj));
      const double to_limit = std::abs(e.value - kSin1);
      const double jj = static_cast<double>(j * j);
      ok = ok && e.converged && err <= kTruncatedTol && to_limit <= 1.0 / jj + kTruncatedTol;
      detail += fmt("j=%lld |err|=%.1e; ", static_cast<long long>(j), err);
    }
    report("A2", ok, detail + fmt("tol %.0e", kTruncatedTol), seconds_since(t0));
  });

  criterion("A3", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = paper::loop_series(kBracketRows);
    bool monotone = true;
    for (std::size_t k = 2; k < rows.size(); ++k) {
      monotone = monotone && (rows[k].n % 2 == 0 ? rows[k].even_sum > rows[k - 2].even_sum
                                                 : rows[k].odd_sum > rows[k - 2].odd_sum);
    }
    const auto even = paper::first_exceeding(rows, true, 1.0);
    const auto odd = paper::first_exceeding(rows, false, 1.0);
    const auto violations = paper::alternating_bracket_violations(rows);
    report("A3",
           monotone && even == kFirstEvenAboveOne && odd == kFirstOddAboveOne && violations == 0,
           fmt("even sum > 1 at n=%lld, odd at n=%lld, bracket violations up to n=%lld: %lld",
               static_cast<long long>(even), static_cast<long long>(odd),
               static_cast<long long>(kBracketRows), static_cast<long long>(violations)),
           seconds_since(t0));
  });

  criterion("A4", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    bool converged = true;
    for (std::int64_t n = kLoopFirst; n <= kLoopLast; ++n) {
      const Interval loop(paper::loop_root(paper::LoopIndex(n + 1)),
                          paper::loop_root(paper::LoopIndex(n)));
      const auto e = gauge_integrate(paper_f(), paper::paper_gauge_family(), loop, kLoopTol, 4,
                                     derive_seed(kSeed, static_cast<std::uint64_t>(n)));
      const double a = paper::loop_area_estimate(paper::LoopIndex(n));
      converged = converged && e.converged;
      worst = std::max(worst, std::abs(std::abs(e.value) - a) / a);
    }
    report("A4", converged && worst <= kLoopRelTol,
           fmt("loops %lld..%lld: worst relative gap to a_n %.2e <= %.0e",
               static_cast<long long>(kLoopFirst), static_cast<long long>(kLoopLast), worst,
               kLoopRelTol),
           seconds_since(t0));
  });

  criterion("A5", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const auto p = cousin_partition(unit, paper::paper_gauge_family().at(eps));
      const double d = sum_defect([](double x) { return paper::F(x); }, paper_f(), p);
      ok = ok && d < eps;
      detail += fmt("eps=%.0e defect=%.2e; ", eps, d);
    }
    report("A5", ok, detail, seconds_since(t0));
  });

  criterion("A6", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion1Sampling s;
    s.partitions = kIdentityPartitions;
    s.index_vectors = kIdentityVectors;
    s.seed = kSeed;
    const auto rep = check_criterion1(paper::example_family(), paper::paper_gauge_family(),
                                      paper::example_selector(), kSin1, kCriterionEps, s);
    const int total = kIdentityPartitions * kIdentityVectors;
    alpha1 = rep.alpha;
    alpha1_ok = rep.passed && rep.limit_sum_matches == total;
    report("A6", alpha1_ok,
           fmt("%d/%d variable-index sums bitwise equal to the limit sum, %d band violations "
               "at eps %.0e (worst %.2e)",
               rep.limit_sum_matches, total, rep.violations, kCriterionEps,
               rep.worst_deviation),
           seconds_since(t0));
  });

  criterion("A7", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const std::int64_t q = paper::example_q(kCriterionEps);
    const auto rep = check_criterion2(
        paper::example_family(),
        [](std::int64_t j) {
          return paper::truncated_gauge_family(paper::FamilyIndex(j)).at(kCriterionEps);
        },
        kSin1, kCriterionEps, q, {q + 1, 2 * q, 10 * q}, kBandTrials, kSeed);
    alpha2 = rep.alpha;
    alpha2_ok = rep.passed;
    report("A7", rep.passed,
           fmt("q=%lld, %d sums, %d outside 2eps = %.0e (worst %.2e)",
               static_cast<long long>(q), rep.trials, rep.violations, 2.0 * kCriterionEps,
               rep.worst_deviation),
           seconds_since(t0));
  });

  criterion("A8", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = alpha1_ok && alpha2_ok && check_criterion3(alpha1, alpha2, kAlphaTol) &&
                    std::abs(alpha1 - kSin1) <= kAlphaTol && std::abs(alpha2 - kSin1) <= kAlphaTol;
    report("A8", ok,
           fmt("alpha1 = %.12f, alpha2 = %.12f, sin 1 = %.12f, tol %.0e", alpha1, alpha2, kSin1,
               kAlphaTol),
           seconds_since(t0));
  });

  criterion("A9", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto w = riemann_unboundedness_witness(paper_f(), unit, kWitnessDelta, kWitnessBound);
    const double sum = riemann_sum(paper_f(), w);
    bool short_cells = true;
    for (const auto& c : w) {
      short_cells = short_cells && c.length() < kWitnessDelta;
    }
    report("A9", short_cells && std::abs(sum) > kWitnessBound,
           fmt("%zu cells shorter than %.1f, Riemann sum %.6e", w.size(), kWitnessDelta, sum),
           seconds_since(t0));
  });

  criterion("A10", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = 0.0;
    const GaugeFamily gf = constant_gauge_family(1.0, 0.5);
    for (int k = 0; k <= 5; ++k) {
      const auto e = gauge_integrate([k](double x) { return std::pow(x, k); }, gf, unit, kPolyTol,
                                     4, kSeed);
      const double err = std::abs(e.value - 1.0 / (k + 1));
      worst = std::max(worst, err);
      ok = ok && e.converged && err <= kPolyErr;
    }

    // x d(x^2) over the cousin partition and four random partitions.
    const Gauge g = constant_gauge(kStieltjesDelta);
    const RealFunction id = [](double x) { return x; };
    const RealFunction sq = [](double x) { return x * x; };
    double st_worst = std::abs(stieltjes_sum(id, sq, cousin_partition(unit, g)) - 2.0 / 3.0);
    for (std::uint64_t t = 0; t < 4; ++t) {
      const auto p = random_delta_fine_partition(unit, g, derive_seed(kSeed, t));
      st_worst = std::max(st_worst, std::abs(stieltjes_sum(id, sq, p) - 2.0 / 3.0));
    }
    ok = ok && st_worst <= kStieltjesErr;
    report("A10", ok,
           fmt("x^k, k<=5: worst |err| %.2e <= %.0e; x d(x^2): worst |err| %.2e <= %.0e", worst,
               kPolyErr, st_worst, kStieltjesErr),
           seconds_since(t0));
  });

  criterion("A11", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> exponent(-4.0, -1.0);
    std::uniform_real_distribution<double> slope(0.0, 1.0);
    int fine = 0;
    int lengths = 0;
    for (int k = 0; k < kRandomGauges; ++k) {
      const double c0 = std::pow(10.0, exponent(rng));
      const double c1 = slope(rng);
      const Gauge g([c0, c1](double x) { return c0 + c1 * x; });
      const auto a = cousin_partition(unit, g);
      const auto b = random_delta_fine_partition(unit, g, derive_seed(kSeed, k));
      fine += (is_delta_fine(a, g) ? 1 : 0) + (is_delta_fine(b, g) ? 1 : 0);
      lengths += (lengths_match(a) ? 1 : 0) + (lengths_match(b) ? 1 : 0);
    }
    report("A11", fine == 2 * kRandomGauges && lengths == 2 * kRandomGauges,
           fmt("%d/%d partitions delta-fine, %d/%d length sums within 8 ulps", fine,
               2 * kRandomGauges, lengths, 2 * kRandomGauges),
           seconds_since(t0));
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}

#include "gaugequad/interval_partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <utility>

namespace gaugequad {

namespace {

std::string describe(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Uniform double in [0, 1) from the top 53 bits; std distributions are not
// reproducible across standard libraries.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool accepts(const Gauge& g, double t, double u, double v) {
  const double d = g(t);
  return t - u < d && v - t < d;
}

struct Pending {
  double u;
  double v;
  int depth;
};

// Shared bisection driver. `choose_tag` returns an accepted tag for [u, v]
// or nothing; `choose_split` returns the fallback split point.
template <class ChooseTag, class ChooseSplit>
TaggedPartition bisect(const Interval& domain, const Gauge& g, int max_depth,
                       std::size_t max_cells, ChooseTag&& choose_tag,
                       ChooseSplit&& choose_split) {
  if (max_depth < 1) {
    throw InvalidArgument("max_depth must be at least 1");
  }
  std::vector<TaggedInterval> cells;
  std::vector<Pending> stack{{domain.a(), domain.b(), 0}};
  while (!stack.empty()) {
    const Pending cur = stack.back();
    stack.pop_back();
    if (auto tag = choose_tag(cur.u, cur.v)) {
      if (cells.size() == max_cells) {
        throw CellLimitExceeded("partition exceeds " + std::to_string(max_cells) + " cells");
      }
      cells.emplace_back(*tag, Interval(cur.u, cur.v));
      continue;
    }
    if (cur.depth >= max_depth) {
      throw DepthExceeded("no delta-fine tag for [" + describe(cur.u) + ", " +
                          describe(cur.v) + "] at depth " + std::to_string(cur.depth));
    }
    double s = 0.0;
    if (auto hint = g.split_hint(cur.u, cur.v)) {
      s = *hint;
    } else {
      s = choose_split(cur.u, cur.v);
    }
    if (!(cur.u < s && s < cur.v)) {
      throw DepthExceeded("cell [" + describe(cur.u) + ", " + describe(cur.v) +
                          "] cannot be split further in floating point");
    }
    // Right half first so the left half is processed next.
    stack.push_back({s, cur.v, cur.depth + 1});
    stack.push_back({cur.u, s, cur.depth + 1});
  }
  return TaggedPartition(domain, std::move(cells));
}

}  // namespace

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidPartition("interval endpoints must be finite");
  }
  if (!(a < b)) {
    throw InvalidPartition("interval requires a < b, got [" + describe(a) + ", " +
                           describe(b) + "]");
  }
}

TaggedInterval::TaggedInterval(double tag, Interval cell) : tag_(tag), cell_(cell) {
  if (!cell_.contains(tag)) {
    throw InvalidPartition("tag " + describe(tag) + " outside its cell [" +
                           describe(cell_.a()) + ", " + describe(cell_.b()) + "]");
  }
}

TaggedPartition::TaggedPartition(Interval domain, std::vector<TaggedInterval> cells)
    : domain_(domain), cells_(std::move(cells)) {
  if (cells_.empty()) {
    throw InvalidPartition("a partition needs at least one cell");
  }
  if (cells_.front().cell().a() != domain_.a() || cells_.back().cell().b() != domain_.b()) {
    throw InvalidPartition("cells do not start and end at the domain endpoints");
  }
  for (std::size_t i = 1; i < cells_.size(); ++i) {
    if (cells_[i - 1].cell().b() != cells_[i].cell().a()) {
      throw InvalidPartition("cells " + std::to_string(i - 1) + " and " + std::to_string(i) +
                             " do not abut");
    }
  }
}

double TaggedPartition::total_length() const {
  double sum = 0.0;
  for (const auto& c : cells_) {
    sum += c.length();
  }
  return sum;
}

Gauge::Gauge(std::function<double(double)> delta, SplitHint hint)
    : delta_(std::move(delta)), hint_(std::move(hint)) {
  if (!delta_) {
    throw InvalidArgument("gauge needs a delta function");
  }
}

double Gauge::operator()(double x) const {
  const double d = delta_(x);
  if (!(d > 0.0)) {
    throw InvalidGauge("gauge value " + describe(d) + " at x = " + describe(x) +
                       " is not positive");
  }
  return d;
}

std::optional<double> Gauge::split_hint(double u, double v) const {
  if (!hint_) {
    return std::nullopt;
  }
  auto s = hint_(u, v);
  if (s && u < *s && *s < v) {
    return s;
  }
  return std::nullopt;
}

Gauge constant_gauge(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidGauge("constant gauge needs a finite positive value");
  }
  return Gauge([delta](double) { return delta; });
}

Gauge min_gauge(Gauge first, Gauge second) {
  auto hint = [first, second](double u, double v) -> std::optional<double> {
    if (auto s = first.split_hint(u, v)) {
      return s;
    }
    return second.split_hint(u, v);
  };
  return Gauge([first, second](double x) { return std::min(first(x), second(x)); },
               std::move(hint));
}

bool is_delta_fine(const TaggedPartition& p, const Gauge& g) {
  for (const auto& c : p) {
    const double d = g(c.tag());
    if (!(c.tag() - c.cell().a() < d && c.cell().b() - c.tag() < d)) {
      return false;
    }
  }
  return true;
}

TaggedPartition cousin_partition(const Interval& domain, const Gauge& g, int max_depth,
                                 std::size_t max_cells) {
  auto tag = [&g](double u, double v) -> std::optional<double> {
    const double m = u + 0.5 * (v - u);
    for (double t : {u, m, v}) {
      if (accepts(g, t, u, v)) {
        return t;
      }
    }
    return std::nullopt;
  };
  auto split = [](double u, double v) { return u + 0.5 * (v - u); };
  return bisect(domain, g, max_depth, max_cells, tag, split);
}

TaggedPartition random_delta_fine_partition(const Interval& domain, const Gauge& g,
                                            std::uint64_t seed, int max_depth,
                                            std::size_t max_cells) {
  std::mt19937_64 rng(seed);
  static constexpr std::array<std::array<int, 3>, 6> kOrders{{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  auto tag = [&](double u, double v) -> std::optional<double> {
    const std::array<double, 3> cand{u, u + 0.5 * (v - u), v};
    for (int k : kOrders[rng() % kOrders.size()]) {
      if (accepts(g, cand[k], u, v)) {
        return cand[k];
      }
    }
    return std::nullopt;
  };
  auto split = [&](double u, double v) {
    return u + (0.25 + 0.5 * unit_double(rng)) * (v - u);
  };
  return bisect(domain, g, max_depth, max_cells, tag, split);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace gaugequad

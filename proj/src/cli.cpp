#include "gaugequad/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "gaugequad/convergence_criteria.hpp"
#include "gaugequad/errors.hpp"
#include "gaugequad/gauge_integrator.hpp"
#include "gaugequad/paper_functions.hpp"

namespace gaugequad::cli {

namespace {

using Value = std::variant<double, std::int64_t, bool, std::string>;

struct Field {
  std::string key;
  Value value;
};

using Record = std::vector<Field>;

enum class Format { table, csv, json };

struct RunConfig {
  double tol = 1e-3;
  double eps = 1e-3;
  int trials = 8;
  std::uint64_t seed = 1;
  int max_depth = kDefaultMaxDepth;
  Format format = Format::table;
  std::string out_path;
};

// Output of one command: optional rows (all with the same keys) followed by
// summary fields.
struct Report {
  std::vector<Record> rows;
  Record summary;
};

constexpr int kMaxPolyDegree = 32;
constexpr double kCriterion3Tol = 1e-9;
constexpr double kWitnessDelta = 0.1;
constexpr double kWitnessBound = 1e6;
constexpr double kLoopThreshold = 1.0;
constexpr std::int64_t kDemoLoopRows = 1000;

std::string table_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string render(const Value& v, Format fmt) {
  return std::visit(
      [fmt](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return fmt == Format::table ? table_double(x) : format_double(x);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return x;
        }
      },
      v);
}

nlohmann::ordered_json to_json(const Record& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, value] : r) {
    std::visit([&j, &k = key](const auto& x) { j[k] = x; }, value);
  }
  return j;
}

void write_key_values(std::ostream& os, const Record& r) {
  std::size_t width = 0;
  for (const auto& f : r) {
    width = std::max(width, f.key.size());
  }
  for (const auto& f : r) {
    os << f.key << std::string(width - f.key.size() + 2, ' ') << render(f.value, Format::table)
       << '\n';
  }
}

void write_table_rows(std::ostream& os, const std::vector<Record>& rows) {
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(cols, 0);
  cells.emplace_back();
  for (std::size_t c = 0; c < cols; ++c) {
    cells.back().push_back(rows.front()[c].key);
  }
  for (const auto& r : rows) {
    cells.emplace_back();
    for (const auto& f : r) {
      cells.back().push_back(render(f.value, Format::table));
    }
  }
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < cols; ++c) {
      width[c] = std::max(width[c], line[c].size());
    }
  }
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c > 0) os << "  ";
      os << std::string(width[c] - line[c].size(), ' ') << line[c];
    }
    os << '\n';
  }
}

void write_csv_rows(std::ostream& os, const std::vector<Record>& rows) {
  for (std::size_t c = 0; c < rows.front().size(); ++c) {
    os << (c ? "," : "") << rows.front()[c].key;
  }
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      os << (c ? "," : "") << render(r[c].value, Format::csv);
    }
    os << '\n';
  }
}

void emit(std::ostream& os, Format fmt, const Report& rep) {
  switch (fmt) {
    case Format::json: {
      nlohmann::ordered_json j = nlohmann::ordered_json::object();
      if (!rep.rows.empty()) {
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rep.rows) {
          j["rows"].push_back(to_json(r));
        }
      }
      const nlohmann::ordered_json summary = to_json(rep.summary);
      for (const auto& [key, value] : summary.items()) {
        j[key] = value;
      }
      os << j.dump(2) << '\n';
      return;
    }
    case Format::csv:
      if (rep.rows.empty()) {
        write_csv_rows(os, {rep.summary});
        return;
      }
      write_csv_rows(os, rep.rows);
      for (const auto& f : rep.summary) {
        os << "# " << f.key << '=' << render(f.value, Format::csv) << '\n';
      }
      return;
    case Format::table:
      if (!rep.rows.empty()) {
        write_table_rows(os, rep.rows);
        if (!rep.summary.empty()) os << '\n';
      }
      write_key_values(os, rep.summary);
      return;
  }
}

void append(Record& r, const std::string& prefix, const IntegralEstimate& e) {
  r.push_back({prefix + "value", e.value});
  r.push_back({prefix + "spread", e.spread});
  r.push_back({prefix + "cells_used", static_cast<std::int64_t>(e.cells_used)});
  r.push_back({prefix + "trials", std::int64_t{e.trials}});
  r.push_back({prefix + "converged", e.converged});
  r.push_back({prefix + "epsilon", e.epsilon});
  r.push_back({prefix + "levels", std::int64_t{e.levels}});
}

Record criterion_row(const std::string& name, const CriterionReport& c, double band) {
  return {{"criterion", name},
          {"alpha", c.alpha},
          {"epsilon", c.epsilon},
          {"band", band},
          {"trials", std::int64_t{c.trials}},
          {"violations", std::int64_t{c.violations}},
          {"worst_deviation", c.worst_deviation},
          {"passed", c.passed}};
}

IntegrationOptions options_for(const RunConfig& cfg) {
  IntegrationOptions o;
  o.max_depth = cfg.max_depth;
  return o;
}

RealFunction paper_f() {
  return [](double x) { return paper::f(x); };
}

CriterionReport run_criterion1(const RunConfig& cfg) {
  Criterion1Sampling s;
  s.partitions = cfg.trials;
  s.seed = cfg.seed;
  return check_criterion1(paper::example_family(), paper::paper_gauge_family(),
                          paper::example_selector(), paper::exact_integral_f(), cfg.eps, s);
}

CriterionReport run_criterion2(const RunConfig& cfg) {
  const std::int64_t q = paper::example_q(cfg.eps);
  const double eps = cfg.eps;
  const auto gauge_for = [eps](std::int64_t j) {
    return paper::truncated_gauge_family(paper::FamilyIndex(j)).at(eps);
  };
  return check_criterion2(paper::example_family(), gauge_for, paper::exact_integral_f(), eps, q,
                          {q + 1, 2 * q, 10 * q}, cfg.trials, cfg.seed);
}

// Returns the exit code; `rep` is filled either way.
int cmd_integrate(const RunConfig& cfg, const std::string& name, std::int64_t j, bool have_j,
                  Report& rep) {
  const Interval unit(0.0, 1.0);
  Record& r = rep.summary;
  r.push_back({"function", name});

  if (name == "F-defect") {
    const TaggedPartition p =
        cousin_partition(unit, paper::paper_gauge_family().at(cfg.tol), cfg.max_depth);
    const double defect = sum_defect([](double x) { return paper::F(x); }, paper_f(), p);
    const bool ok = defect < cfg.tol;
    r.push_back({"epsilon", cfg.tol});
    r.push_back({"cells_used", static_cast<std::int64_t>(p.size())});
    r.push_back({"riemann_sum", riemann_sum(paper_f(), p)});
    r.push_back({"primitive_difference", paper::F(1.0) - paper::F(0.0)});
    r.push_back({"defect", defect});
    r.push_back({"passed", ok});
    return ok ? kExitOk : kExitFailed;
  }

  RealFunction f;
  std::optional<GaugeFamily> gf;
  double exact = 0.0;
  if (name == "f") {
    f = paper_f();
    gf = paper::paper_gauge_family();
    exact = paper::exact_integral_f();
  } else if (name == "fj") {
    if (!have_j) {
      throw CLI::ValidationError("integrate fj", "--j is required");
    }
    const paper::FamilyIndex fj(j);
    f = [fj](double x) { return paper::f_j(fj, x); };
    gf = paper::truncated_gauge_family(fj);
    exact = paper::exact_integral_fj(fj);
    r.push_back({"j", j});
  } else {
    // poly-k
    int k = -1;
    const std::string digits = name.substr(5);
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || end != digits.data() + digits.size() || k < 0 ||
        k > kMaxPolyDegree) {
      throw CLI::ValidationError("integrate", "poly degree must be an integer in [0, " +
                                                  std::to_string(kMaxPolyDegree) + "]");
    }
    f = [k](double x) { return std::pow(x, k); };
    gf = constant_gauge_family(1.0, 0.5);
    exact = 1.0 / static_cast<double>(k + 1);
  }

  const IntegralEstimate e =
      gauge_integrate(f, *gf, unit, cfg.tol, cfg.trials, cfg.seed, options_for(cfg));
  append(r, "", e);
  const double error = std::abs(e.value - exact);
  r.push_back({"exact", exact});
  r.push_back({"abs_error", error});
  return e.converged && error <= cfg.tol ? kExitOk : kExitFailed;
}

int cmd_paper_demo(const RunConfig& cfg, Report& rep) {
  Record& r = rep.summary;
  const IntegralEstimate e =
      gauge_integrate(paper_f(), paper::paper_gauge_family(), Interval(0.0, 1.0), cfg.tol,
                      cfg.trials, cfg.seed, options_for(cfg));
  const double exact = paper::exact_integral_f();
  const double error = std::abs(e.value - exact);
  append(r, "integral_", e);
  r.push_back({"integral_exact", exact});
  r.push_back({"integral_abs_error", error});

  const TaggedPartition w =
      riemann_unboundedness_witness(paper_f(), Interval(0.0, 1.0), kWitnessDelta, kWitnessBound);
  r.push_back({"witness_delta", kWitnessDelta});
  r.push_back({"witness_bound", kWitnessBound});
  r.push_back({"witness_sum", riemann_sum(paper_f(), w)});
  r.push_back({"witness_cells", static_cast<std::int64_t>(w.size())});

  const auto rows = paper::loop_series(kDemoLoopRows);
  const std::int64_t first_even = paper::first_exceeding(rows, true, kLoopThreshold);
  const std::int64_t first_odd = paper::first_exceeding(rows, false, kLoopThreshold);
  r.push_back({"loops_first_even_exceeding_1", first_even});
  r.push_back({"loops_first_odd_exceeding_1", first_odd});

  const CriterionReport c1 = run_criterion1(cfg);
  const CriterionReport c2 = run_criterion2(cfg);
  const bool c3 = check_criterion3(c1.alpha, c2.alpha, kCriterion3Tol);
  r.push_back({"criterion_eps", cfg.eps});
  r.push_back({"criterion1_passed", c1.passed});
  r.push_back({"criterion1_worst_deviation", c1.worst_deviation});
  r.push_back({"criterion2_passed", c2.passed});
  r.push_back({"criterion2_worst_deviation", c2.worst_deviation});
  r.push_back({"criterion3", c3});

  const bool ok = e.converged && error <= cfg.tol && first_even > 0 && first_odd > 0 &&
                  c1.passed && c2.passed && c3;
  return ok ? kExitOk : kExitFailed;
}

int cmd_figures(int which, double x_min, double x_max, int count, Report& rep) {
  const auto pts = paper::figure_samples(static_cast<paper::Figure>(which), x_min, x_max, count);
  rep.rows.reserve(pts.size());
  for (const auto& p : pts) {
    rep.rows.push_back({{"x", p.x}, {"y", p.y}});
  }
  return kExitOk;
}

int cmd_loops(std::int64_t n_max, Report& rep) {
  const auto rows = paper::loop_series(n_max);
  for (const auto& row : rows) {
    rep.rows.push_back({{"n", row.n},
                        {"root", row.root},
                        {"area", row.area},
                        {"even_sum", row.even_sum},
                        {"odd_sum", row.odd_sum},
                        {"alternating_sum", row.alternating_sum}});
  }
  Record& s = rep.summary;
  s.push_back({"first_even_exceeding_1", paper::first_exceeding(rows, true, kLoopThreshold)});
  s.push_back({"first_odd_exceeding_1", paper::first_exceeding(rows, false, kLoopThreshold)});
  s.push_back({"bracket_width", paper::loop_area_estimate(paper::LoopIndex(n_max + 1))});
  s.push_back({"bracket_violations", paper::alternating_bracket_violations(rows)});
  return kExitOk;
}

int cmd_converge(const RunConfig& cfg, const std::string& which, Report& rep) {
  bool ok = true;
  double alpha1 = paper::exact_integral_f();
  double alpha2 = paper::exact_integral_f();
  if (which == "1" || which == "all") {
    const CriterionReport c = run_criterion1(cfg);
    rep.rows.push_back(criterion_row("1", c, cfg.eps));
    alpha1 = c.alpha;
    ok = ok && c.passed;
  }
  if (which == "2" || which == "all") {
    const CriterionReport c = run_criterion2(cfg);
    rep.rows.push_back(criterion_row("2", c, 2.0 * cfg.eps));
    rep.summary.push_back({"q", paper::example_q(cfg.eps)});
    alpha2 = c.alpha;
    ok = ok && c.passed;
  }
  if (which == "3" || which == "all") {
    const bool c3 = check_criterion3(alpha1, alpha2, kCriterion3Tol);
    rep.summary.push_back({"alpha1", alpha1});
    rep.summary.push_back({"alpha2", alpha2});
    rep.summary.push_back({"criterion3_tol", kCriterion3Tol});
    rep.summary.push_back({"criterion3", c3});
    ok = ok && c3;
  }
  return ok ? kExitOk : kExitFailed;
}

bool valid_function_name(const std::string& name) {
  return name == "f" || name == "fj" || name == "F-defect" || name.rfind("poly-", 0) == 0;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauge (Henstock-Kurzweil) integration on [0, 1]", "gaugequad"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "table";
  app.add_option("--tol", cfg.tol, "integration tolerance")->check(CLI::PositiveNumber);
  app.add_option("--eps", cfg.eps, "criterion epsilon")->check(CLI::PositiveNumber);
  app.add_option("--trials", cfg.trials, "random partitions per level or criterion")
      ->check(CLI::Range(2, 1'000'000));
  app.add_option("--seed", cfg.seed, "base seed")->envname(kSeedEnv);
  app.add_option("--max-depth", cfg.max_depth, "bisection depth limit")->check(CLI::Range(8, 128));
  app.add_option("--format", format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--out", cfg.out_path, "write output to this file");

  std::string function_name;
  std::int64_t j = 0;
  auto* integrate = app.add_subcommand("integrate", "estimate an integral on [0, 1]");
  integrate->add_option("function", function_name, "f, fj, F-defect or poly-K")
      ->required()
      ->check([](const std::string& s) {
        return valid_function_name(s) ? std::string{} : "unknown function '" + s + "'";
      });
  auto* j_opt = integrate->add_option("--j", j, "truncation index for fj")
                    ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 31));

  app.add_subcommand("paper-demo", "run the worked example end to end");

  int figure = 0;
  double x_min = 0.01;
  double x_max = 1.0;
  int count = 1000;
  auto* figures = app.add_subcommand("figures", "emit x,y samples of a figure curve");
  figures->add_option("which", figure, "1, 2, 3 or 4")->required()->check(CLI::Range(1, 4));
  figures->add_option("--x-min", x_min, "left end of the sample range");
  figures->add_option("--x-max", x_max, "right end of the sample range");
  figures->add_option("--count", count, "number of samples");

  std::int64_t n_max = 100;
  auto* loops = app.add_subcommand("loops", "tabulate loop areas and partial sums");
  loops->add_option("--n-max", n_max, "last loop index")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{100'000'000}));

  std::string which = "all";
  auto* converge = app.add_subcommand("converge", "check the convergence criteria");
  converge->add_option("which", which, "1, 2, 3 or all")
      ->check(CLI::IsMember({"1", "2", "3", "all"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  cfg.format = format == "csv" ? Format::csv : format == "json" ? Format::json : Format::table;

  Report rep;
  int code = kExitOk;
  try {
    if (integrate->parsed()) {
      code = cmd_integrate(cfg, function_name, j, j_opt->count() > 0, rep);
    } else if (figures->parsed()) {
      code = cmd_figures(figure, x_min, x_max, count, rep);
      if (cfg.format == Format::table) cfg.format = Format::csv;
    } else if (loops->parsed()) {
      code = cmd_loops(n_max, rep);
    } else if (converge->parsed()) {
      code = cmd_converge(cfg, which, rep);
    } else {
      code = cmd_paper_demo(cfg, rep);
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }

  std::ostringstream text;
  emit(text, cfg.format, rep);
  if (cfg.out_path.empty()) {
    out << text.str();
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file || !(file << text.str()) || !file.flush()) {
      err << "error: cannot write " << cfg.out_path << '\n';
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace gaugequad::cli

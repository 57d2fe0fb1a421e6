#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxmean/distribution.hpp"
#include "maxmean/errors.hpp"
#include "maxmean/mc/harness.hpp"
#include "maxmean/ruin.hpp"
#include "maxmean/verify.hpp"

namespace maxmean::cli {

namespace {

enum class Format { text, json, csv };

using Cell = std::variant<double, std::int64_t, bool, std::string>;

// Named columns and rows; every command reduces its output to one of these.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // In text mode only these columns are printed, without a header, when set.
  std::vector<std::string> text_columns;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string twelve_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string render(const Cell& c, Format f) {
  return std::visit(
      [f](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return f == Format::text ? twelve_digits(v) : shortest(v);
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return v;
      },
      c);
}

nlohmann::json to_json(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, c);
}

void emit(const Table& t, Format f, std::ostream& out) {
  switch (f) {
    case Format::json: {
      auto row_json = [&](const std::vector<Cell>& row) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = to_json(row[i]);
        return obj;
      };
      if (t.rows.size() == 1) {
        out << row_json(t.rows[0]).dump() << '\n';
      } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : t.rows) arr.push_back(row_json(row));
        out << arr.dump() << '\n';
      }
      return;
    }
    case Format::csv:
    case Format::text: {
      std::vector<std::size_t> pick;
      const bool bare = f == Format::text && !t.text_columns.empty();
      for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (!bare || std::find(t.text_columns.begin(), t.text_columns.end(), t.columns[i]) != t.text_columns.end())
          pick.push_back(i);
      const char sep = f == Format::csv ? ',' : ' ';
      auto line = [&](auto cell) {
        for (std::size_t j = 0; j < pick.size(); ++j) {
          if (j) out << sep;
          out << cell(pick[j]);
        }
        out << '\n';
      };
      if (!bare) line([&](std::size_t i) { return t.columns[i]; });
      for (const auto& row : t.rows) line([&](std::size_t i) { return render(row[i], f); });
      return;
    }
  }
}

// --n accepts a positive integer or "inf".
std::optional<Depth> parse_depth(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "inf") return Depth::infinite();
  std::int64_t n = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), n);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw UsageError("--n: expected an integer or 'inf', got '" + s + "'");
  return Depth(n);
}

Cell depth_cell(const Depth& d) {
  return d.is_infinite() ? Cell(std::string("inf")) : Cell(d.value());
}

const std::map<std::string, Format> kFormats = {{"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};

struct Command {
  std::function<Table()> body;
  Format format = Format::text;
};

// Flags shared by the eval subjects; each subject registers what it needs.
struct EvalArgs {
  double x = 0.0;
  double u = 0.5;
  double lambda = 0.0;
  double alpha = 1.0;
  std::string n;
};

void add_format(CLI::App* app, Format& f) {
  app->add_option("--format", f, "Output format: text, json or csv")->transform(CLI::CheckedTransformer(kFormats));
}

Table single(std::vector<std::string> columns, std::vector<Cell> row) {
  Table t;
  t.columns = std::move(columns);
  t.rows.push_back(std::move(row));
  t.text_columns = {"value"};
  return t;
}

void setup_eval(CLI::App& app, EvalArgs& a, Command& cmd) {
  auto* eval = app.add_subcommand("eval", "Evaluate a distribution function, quantile or moment");
  eval->require_subcommand(1);
  auto subject = [&](const char* name, const char* help) {
    auto* s = eval->add_subcommand(name, help);
    add_format(s, cmd.format);
    return s;
  };

  auto* cdf_cmd = subject("cdf", "Distribution function of Z_n (default n = inf)");
  cdf_cmd->add_option("--x", a.x)->required();
  cdf_cmd->add_option("--n", a.n, "Positive integer or inf");
  cdf_cmd->callback([&] {
    cmd.body = [&] {
      const Depth n = parse_depth(a.n).value_or(Depth::infinite());
      return single({"x", "n", "value"}, {a.x, depth_cell(n), cdf(EvalPoint{a.x, n})});
    };
  });

  auto* cdf_n = subject("cdf-n", "Distribution function of Z_n for finite n");
  cdf_n->add_option("--x", a.x)->required();
  cdf_n->add_option("--n", a.n)->required();
  cdf_n->callback([&] {
    cmd.body = [&] {
      const Depth n = *parse_depth(a.n);
      return single({"x", "n", "value"}, {a.x, depth_cell(n), cdf(EvalPoint{a.x, n})});
    };
  });

  auto* pdf = subject("pdf", "Density of Z_inf");
  pdf->add_option("--x", a.x)->required();
  pdf->callback([&] {
    cmd.body = [&] {
      const auto d = pdf_inf(a.x);
      return single({"x", "value", "right_limit"}, {a.x, d.value, d.right_limit});
    };
  });

  auto* quantile = subject("quantile", "Quantile of Z_inf");
  quantile->add_option("--u", a.u)->required();
  quantile->callback([&] { cmd.body = [&] { return single({"u", "value"}, {a.u, quantile_inf(a.u)}); }; });

  auto* shifted = subject("cdf-shifted", "Distribution function of the shifted maximum (default n = inf)");
  shifted->add_option("--x", a.x)->required();
  shifted->add_option("--lambda", a.lambda)->required();
  shifted->add_option("--n", a.n, "Positive integer or inf");
  shifted->callback([&] {
    cmd.body = [&] {
      const Depth n = parse_depth(a.n).value_or(Depth::infinite());
      const ShiftedParam p{a.lambda};
      const double v = n.is_infinite() ? cdf_shifted_inf(a.x, p) : cdf_shifted(a.x, n.value(), p);
      return single({"x", "lambda", "n", "value"}, {a.x, a.lambda, depth_cell(n), v});
    };
  });

  auto* qshifted = subject("quantile-shifted", "Quantile of the shifted limit");
  qshifted->add_option("--u", a.u)->required();
  qshifted->add_option("--lambda", a.lambda)->required();
  qshifted->callback([&] {
    cmd.body = [&] {
      return single({"u", "lambda", "value"}, {a.u, a.lambda, quantile_shifted_inf(a.u, ShiftedParam{a.lambda})});
    };
  });

  auto* m2 = subject("cdf-m2", "Distribution function of sup_{i>=2} S_i/i");
  m2->add_option("--x", a.x)->required();
  m2->callback([&] { cmd.body = [&] { return single({"x", "value"}, {a.x, cdf_m2(a.x)}); }; });

  auto* mom = subject("moment", "E Z_n^alpha (default n = inf)");
  mom->add_option("--alpha", a.alpha)->required();
  mom->add_option("--n", a.n, "Positive integer or inf");
  mom->callback([&] {
    cmd.body = [&] {
      const Depth n = parse_depth(a.n).value_or(Depth::infinite());
      return single({"n", "alpha", "value"}, {depth_cell(n), a.alpha, moment(n, a.alpha)});
    };
  });
}

struct RuinArgs {
  double theta = 0.0;
  double u = 0.0;
  double alpha = 0.0;
};

void setup_ruin(CLI::App& app, RuinArgs& a, Command& cmd) {
  auto* ruin_cmd = app.add_subcommand("ruin", "Ruin probability and minimum initial capital");
  ruin_cmd->require_subcommand(1);

  auto* prob = ruin_cmd->add_subcommand("prob", "Probability of ruin");
  prob->add_option("--theta", a.theta, "Safety loading")->required();
  prob->add_option("--u", a.u, "Initial capital")->required();
  add_format(prob, cmd.format);
  prob->callback([&] {
    cmd.body = [&] {
      return single({"theta", "u", "value"}, {a.theta, a.u, ruin::ruin_probability({a.theta, a.u})});
    };
  });

  auto* cap = ruin_cmd->add_subcommand("min-capital", "Smallest initial capital with ruin probability alpha");
  cap->add_option("--alpha", a.alpha, "Target ruin probability")->required();
  cap->add_option("--theta", a.theta, "Safety loading")->required();
  add_format(cap, cmd.format);
  cap->callback([&] {
    cmd.body = [&] {
      return single({"alpha", "theta", "value"}, {a.alpha, a.theta, ruin::min_capital(a.alpha, a.theta)});
    };
  });
}

struct TableArgs {
  double x_min = 0.0;
  double x_max = 4.0;
  std::int64_t points = 401;
  std::int64_t terms = 0;
};

// Near x = 1 the certified series cannot close; fall back to a long partial sum.
constexpr std::int64_t kFallbackTerms = 1'000'000;

Table survival_table(const TableArgs& a) {
  if (a.points < 1) throw DomainError("table: --points must be at least 1");
  if (a.terms < 0) throw DomainError("table: --terms must be nonnegative");
  if (!(a.x_min <= a.x_max)) throw DomainError("table: need x-min <= x-max");
  Table t;
  t.columns = {"x", "series", "tail_bound", "terms", "closed_form"};
  for (std::int64_t i = 0; i < a.points; ++i) {
    const double x = a.points == 1 ? a.x_min
                                   : a.x_min + (a.x_max - a.x_min) * static_cast<double>(i) /
                                                   static_cast<double>(a.points - 1);
    SeriesValue s;
    if (a.terms > 0) {
      s = survival_partial_sum(x, a.terms);
    } else {
      try {
        s = survival_series(x);
      } catch (const TruncationError&) {
        s = survival_partial_sum(x, kFallbackTerms);
      }
    }
    t.rows.push_back({x, s.sum, s.tail_bound, s.terms, 1.0 - cdf_inf(x)});
  }
  return t;
}

void setup_table(CLI::App& app, TableArgs& a, Command& cmd) {
  auto* table = app.add_subcommand("table", "Partial sums of the survival series on a grid (CSV by default)");
  table->add_option("--x-min", a.x_min, "Left end of the grid");
  table->add_option("--x-max", a.x_max, "Right end of the grid");
  table->add_option("--points", a.points, "Number of grid points");
  table->add_option("--terms", a.terms, "Fixed number of terms; 0 sums until the tail bound is below 1e-12");
  add_format(table, cmd.format);
  table->preparse_callback([&](std::size_t) { cmd.format = Format::csv; });
  table->callback([&] { cmd.body = [&] { return survival_table(a); }; });
}

struct SimArgs {
  std::string quantity = "cdf-inf";
  std::vector<double> x = {2.0};
  std::string n = "5";
  double lambda = 0.0;
  double theta = 1.0;
  double u = 0.0;
  mc::SimConfig cfg;
};

Table estimates(const std::vector<double>& xs, const std::vector<mc::EstimateWithCI>& est,
                const std::function<double(double)>& exact) {
  Table t;
  t.columns = {"x", "estimate", "std_error", "bias_bound", "samples", "closed_form", "within_4sigma"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double target = exact(xs[i]);
    t.rows.push_back({xs[i], est[i].estimate, est[i].std_error, est[i].bias_bound, est[i].n, target,
                      est[i].covers(target, 4.0)});
  }
  return t;
}

Table simulate(const SimArgs& a) {
  const auto& cfg = a.cfg;
  if (a.quantity == "cdf-n" || a.quantity == "cdf-shifted") {
    const Depth n = *parse_depth(a.n);
    if (n.is_infinite()) throw DomainError("simulate: " + a.quantity + " needs a finite --n");
    const double lambda = a.quantity == "cdf-n" ? 0.0 : a.lambda;
    const auto est = mc::estimate_running_max_cdf(cfg, n.value(), lambda, a.x);
    return estimates(a.x, est, [&](double x) { return cdf_shifted(x, n.value(), ShiftedParam{lambda}); });
  }
  if (a.quantity == "cdf-inf") return estimates(a.x, mc::estimate_cdf_inf(cfg, a.x), cdf_inf);
  if (a.quantity == "cdf-m2") return estimates(a.x, mc::estimate_cdf_m2(cfg, a.x), cdf_m2);
  if (a.quantity == "ruin") {
    const ruin::RiskModel m{a.theta, a.u};
    const auto e = mc::estimate_ruin(cfg, m);
    const double target = ruin::ruin_probability(m);
    Table t;
    t.columns = {"theta", "u", "estimate", "std_error", "bias_bound", "samples", "closed_form", "within_4sigma"};
    t.rows.push_back({a.theta, a.u, e.estimate, e.std_error, e.bias_bound, e.n, target, e.covers(target, 4.0)});
    return t;
  }
  // ks
  const Depth n = *parse_depth(a.n);
  if (n.is_infinite()) throw DomainError("simulate: ks needs a finite --n");
  const auto r = mc::weak_convergence_test(cfg, n.value());
  Table t;
  t.columns = {"n", "samples", "statistic", "critical_value", "pass"};
  t.rows.push_back({n.value(), r.samples, r.statistic, r.critical_value, r.pass});
  return t;
}

void add_sim_options(CLI::App* app, mc::SimConfig& cfg) {
  app->add_option("--seed", cfg.seed, "Random seed");
  app->add_option("--samples", cfg.samples, "Number of simulated paths");
  app->add_option("--workers", cfg.workers, "Number of independent random streams (result depends on it)");
}

void setup_simulate(CLI::App& app, SimArgs& a, Command& cmd) {
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimates next to the closed forms");
  sim->add_option("--quantity", a.quantity, "cdf-n, cdf-shifted, cdf-inf, cdf-m2, ruin or ks")
      ->check(CLI::IsMember({"cdf-n", "cdf-shifted", "cdf-inf", "cdf-m2", "ruin", "ks"}));
  sim->add_option("--x", a.x, "Evaluation points")->expected(1, -1);
  sim->add_option("--n", a.n, "Depth for cdf-n, cdf-shifted and ks");
  sim->add_option("--lambda", a.lambda, "Shift for cdf-shifted");
  sim->add_option("--theta", a.theta, "Safety loading for ruin");
  sim->add_option("--u", a.u, "Initial capital for ruin");
  add_sim_options(sim, a.cfg);
  sim->add_option("--depth", a.cfg.depth, "Largest index simulated for suprema");
  sim->add_option("--horizon", a.cfg.horizon, "Time cap for ruin paths");
  add_format(sim, cmd.format);
  sim->callback([&] { cmd.body = [&] { return simulate(a); }; });
}

struct VerifyArgs {
  verify::Options opt;
  bool passed = true;
  nlohmann::json report;
};

void setup_verify(CLI::App& app, VerifyArgs& a, Command& cmd, std::ostream& out) {
  auto* ver = app.add_subcommand("verify", "Run cross-checks; exit status 0 iff every check passes");
  ver->add_option("--suite", a.opt.suite)->check(CLI::IsMember(verify::suite_names()));
  ver->add_option("--seed", a.opt.seed, "Random seed");
  ver->add_option("--n-max", a.opt.n_max, "Largest n for the volume suite");
  ver->add_option("--n", a.opt.n, "Depth for the weak-convergence suite");
  ver->add_option("--samples", a.opt.samples, "Simulation size; 0 uses each suite's default");
  ver->add_option("--workers", a.opt.workers, "Number of independent random streams");
  add_format(ver, cmd.format);
  ver->callback([&] {
    cmd.body = [&] {
      const auto report = verify::run(a.opt);
      a.passed = report.pass();
      if (cmd.format == Format::json) {
        out << report.to_json().dump() << '\n';
        return Table{};
      }
      Table t;
      t.columns = {"name", "pass", "value", "target", "tolerance", "bias_bound"};
      for (const auto& c : report.checks) t.rows.push_back({c.name, c.pass, c.value, c.target, c.tolerance, c.bias_bound});
      return t;
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Running maxima of exponential sample means"};
  app.name("maxmean");
  app.require_subcommand(1);

  Command cmd;
  EvalArgs eval_args;
  RuinArgs ruin_args;
  TableArgs table_args;
  SimArgs sim_args;
  VerifyArgs verify_args;
  setup_eval(app, eval_args, cmd);
  setup_ruin(app, ruin_args, cmd);
  setup_table(app, table_args, cmd);
  setup_simulate(app, sim_args, cmd);
  setup_verify(app, verify_args, cmd, out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Table t = cmd.body();
    if (!t.columns.empty()) emit(t, cmd.format, out);
    return verify_args.passed ? kOk : kCheckFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace maxmean::cli

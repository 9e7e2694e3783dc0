#include "strahler/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "strahler/asymptotics.hpp"
#include "strahler/errors.hpp"
#include "strahler/numeric_format.hpp"
#include "strahler/registers.hpp"
#include "strahler/trees.hpp"
#include "strahler/verify.hpp"

namespace strahler::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxEnumerateSize = 4096;
constexpr std::size_t kMaxSeriesOrder = 2000;

// Invalid flag values or combinations; the message names the flag.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reals carry 15 significant digits; everything else is text.
using Cell = std::variant<std::string, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Output {
  std::string command;
  Json flags = Json::object();
  Json extra_meta = Json::object();
  Table table;
};

std::string csv_field(const Cell& cell) {
  if (const auto* x = std::get_if<double>(&cell)) return format_real(*x);
  const auto& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
  }
}

void write_json(const Output& output, std::ostream& os) {
  Json meta = Json::object();
  meta["command"] = output.command;
  meta["version"] = kVersion;
  meta["flags"] = output.flags;
  for (const auto& [k, v] : output.extra_meta.items()) meta[k] = v;
  Json rows = Json::array();
  for (const auto& row : output.table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& key = output.table.columns[i];
      if (const auto* x = std::get_if<double>(&row[i])) {
        obj[key] = std::stod(format_real(*x));
      } else {
        obj[key] = std::get<std::string>(row[i]);
      }
    }
    rows.push_back(std::move(obj));
  }
  Json doc = Json::object();
  doc["meta"] = std::move(meta);
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << "\n";
}

struct Common {
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", common.out, "Write the table to this file instead of standard output");
}

registers::Family parse_family(const std::string& family) {
  return family == "butterfly" ? registers::Family::Butterfly : registers::Family::Classical;
}

Output run_enumerate(const std::string& family, std::size_t max_size) {
  if (max_size > kMaxEnumerateSize) {
    throw UsageError("--max-size: at most " + std::to_string(kMaxEnumerateSize));
  }
  Output output{"enumerate", {{"family", family}, {"max_size", max_size}}, Json::object(), {}};
  output.table.columns = {"n", "p", "count"};
  const auto table = registers::distributions(max_size, parse_family(family));
  for (std::size_t n = 0; n <= max_size; ++n) {
    for (const auto& [p, count] : table[n]) {
      output.table.rows.push_back({std::to_string(n), std::to_string(p), count.get_str()});
    }
  }
  return output;
}

struct SeriesFlags {
  std::string gf;
  std::optional<unsigned> p;
  std::size_t order = 20;
  std::string route = "recursion";
};

Output run_series(const SeriesFlags& flags) {
  using registers::Kind;
  const std::map<std::string, Kind> kinds = {{"B", Kind::B},       {"A", Kind::A},
                                             {"R", Kind::R},       {"S", Kind::S},
                                             {"T", Kind::T},       {"SumS", Kind::SumS},
                                             {"SumT", Kind::SumT}};
  const Kind kind = kinds.at(flags.gf);
  const bool indexed = kind == Kind::R || kind == Kind::S || kind == Kind::T;
  if (indexed && !flags.p) throw UsageError("--p: required with --gf " + flags.gf);
  if (!indexed && flags.p) throw UsageError("--p: not used with --gf " + flags.gf);
  if (flags.order > kMaxSeriesOrder) {
    throw UsageError("--order: at most " + std::to_string(kMaxSeriesOrder));
  }

  const bool closed = flags.route == "closed";
  const std::size_t order = flags.order;
  const unsigned top = registers::max_reg(order);
  registers::TruncSeries result(series::Var::Z, order);
  switch (kind) {
    case Kind::B: result = registers::catalan_B(order).series; break;
    case Kind::A: result = registers::butterfly_A(order).series; break;
    case Kind::R:
      result = closed ? registers::R_closed(*flags.p, order).series
                      : registers::R_rec(*flags.p, order).series;
      break;
    case Kind::S:
      result = closed ? registers::S_closed(*flags.p, order).series
                      : registers::S_rec(*flags.p, order).series;
      break;
    case Kind::T:
      result = closed ? registers::T_closed(*flags.p, order).series
                      : registers::T_rec(*flags.p, order).series;
      break;
    case Kind::SumS:
    case Kind::SumT: {
      const bool t = kind == Kind::SumT;
      if (closed) {
        std::vector<Integer> sum(order + 1);
        for (unsigned p = 1; p <= top; ++p) {
          const auto term = t ? registers::T_closed_u_series(p, order)
                              : registers::S_closed_u_series(p, order);
          for (std::size_t k = 0; k <= order; ++k) sum[k] += term[k];
        }
        result = series::lagrange_series(sum, order);
      } else {
        const auto all = t ? registers::T_rec_all(top, order) : registers::S_rec_all(top, order);
        for (unsigned p = 1; p <= top; ++p) result += all[p];
      }
      break;
    }
  }

  Json json_flags = {{"gf", flags.gf}, {"order", order}, {"route", flags.route}};
  if (flags.p) json_flags["p"] = *flags.p;
  Output output{"series", json_flags, Json::object(), {}};
  output.table.columns = {"n", "coefficient"};
  for (std::size_t n = 0; n <= order; ++n) {
    output.table.rows.push_back({std::to_string(n), result[n].get_str()});
  }
  return output;
}

Output run_verify(const verify::Options& options, int& exit_code) {
  const auto report = verify::run(options);
  for (const auto& note : report.notes) spdlog::info("note: {}", note);
  Output output{"verify",
                {{"max_size", options.oracle_max_size},
                 {"order", options.order},
                 {"inject_fault", options.inject_fault}},
                {{"notes", report.notes}},
                {}};
  output.table.columns = {"check", "status", "detail"};
  for (const auto& check : report.checks) {
    output.table.rows.push_back({check.name, check.passed ? "pass" : "fail", check.detail});
  }
  if (const auto* failure = report.first_failure()) {
    spdlog::error("verification failed: {}: {}", failure->name, failure->detail);
    exit_code = kVerificationFailed;
  }
  return output;
}

Output run_average(const std::string& family, const std::vector<std::size_t>& n_list,
                   unsigned harmonics) {
  const auto spec = asymptotics::FluctuationSpec::build(harmonics);
  std::size_t n_max = 0;
  for (auto n : n_list) n_max = std::max(n_max, n);
  const registers::AverageTable table(parse_family(family), n_max);

  Output output{"average", {{"family", family}, {"n", n_list}, {"harmonics", harmonics}},
                Json::object(), {}};
  output.table.columns = {"n", "exact", "decimal", "smooth", "psi", "residual"};
  for (auto n : n_list) {
    const auto exact = table.average(n);
    const double value = to_double(exact);
    const double smooth = asymptotics::smooth_average(n);
    const double fluct = asymptotics::psi(asymptotics::log4(static_cast<double>(n)), spec);
    output.table.rows.push_back(
        {std::to_string(n), format_rational(exact), value, smooth, fluct, value - smooth - fluct});
  }
  return output;
}

Output run_compare(const std::vector<std::size_t>& n_list, unsigned harmonics) {
  const auto spec = asymptotics::FluctuationSpec::build(harmonics);
  const auto report = asymptotics::compare(n_list, spec);
  Output output{"compare", {{"n", n_list}, {"harmonics", harmonics}}, Json::object(), {}};
  output.table.columns = {"n",        "exact",    "decimal",   "smooth",
                          "psi",      "residual", "classical", "classical_decimal"};
  for (const auto& row : report.rows) {
    output.table.rows.push_back({std::to_string(row.n), format_rational(row.exact),
                                 row.exact_value, row.smooth, row.psi, row.residual,
                                 format_rational(row.classical), row.classical_value});
  }
  return output;
}

Output run_fluctuation(unsigned harmonics, std::size_t samples) {
  const auto spec = asymptotics::FluctuationSpec::build(harmonics);
  const double amplitude = asymptotics::psi_amplitude(spec);
  const bool tiny = amplitude <= 1e-5;
  spdlog::info("max |psi| over one period = {:.6g}; the 1e-5 bound on the oscillations is {}",
               amplitude, tiny ? "confirmed" : "contradicted");

  Json coeffs = Json::array();
  for (const auto& c : spec.coeffs) coeffs.push_back({c.real(), c.imag()});
  Output output{"fluctuation",
                {{"harmonics", harmonics}, {"samples", samples}},
                {{"amplitude", std::stod(format_real(amplitude))},
                 {"bound_1e-5", tiny ? "confirmed" : "contradicted"},
                 {"coefficients", coeffs}},
                {}};
  output.table.columns = {"x", "psi"};
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(samples - 1);
    output.table.rows.push_back({x, asymptotics::psi(x, spec)});
  }
  return output;
}

void configure_logging(std::ostream& err) {
  std::string level = "info";
  if (const char* env = std::getenv("STRAHLER_LOG")) level = env;
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  auto logger = std::make_shared<spdlog::logger>("strahler", sink);
  logger->set_pattern("[%l] %v");
  if (level == "quiet") {
    logger->set_level(spdlog::level::off);
  } else if (level == "info") {
    logger->set_level(spdlog::level::info);
  } else if (level == "debug") {
    logger->set_level(spdlog::level::debug);
  } else {
    throw UsageError("STRAHLER_LOG: expected quiet, info or debug, got '" + level + "'");
  }
  spdlog::set_default_logger(logger);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    configure_logging(err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  CLI::App app{"Horton-Strahler numbers of binary and butterfly trees", "strahler"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;

  auto* enumerate = app.add_subcommand("enumerate", "Counts by size and register function");
  std::string enum_family;
  std::size_t enum_max = 0;
  enumerate->add_option("--family", enum_family, "binary or butterfly")
      ->required()
      ->check(CLI::IsMember({"binary", "butterfly"}));
  enumerate->add_option("--max-size", enum_max, "Largest size listed")->required();
  add_common(enumerate, common);

  auto* series_cmd = app.add_subcommand("series", "Coefficients of a generating function");
  SeriesFlags series_flags;
  series_cmd->add_option("--gf", series_flags.gf, "B, A, R, S, T, SumS or SumT")
      ->required()
      ->check(CLI::IsMember({"B", "A", "R", "S", "T", "SumS", "SumT"}));
  series_cmd->add_option("--p", series_flags.p, "Register value for R, S and T");
  series_cmd->add_option("--order", series_flags.order, "Truncation order");
  series_cmd->add_option("--route", series_flags.route, "recursion or closed")
      ->check(CLI::IsMember({"recursion", "closed"}));
  add_common(series_cmd, common);

  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite");
  verify::Options verify_options;
  verify_cmd->add_option("--max-size", verify_options.oracle_max_size,
                         "Largest size checked by exhaustive enumeration")
      ->check(CLI::Range(std::size_t{1}, trees::kDefaultButterflyLimit));
  verify_cmd->add_option("--order", verify_options.order, "Truncation order of identity checks")
      ->check(CLI::Range(std::size_t{1}, kMaxSeriesOrder));
  verify_cmd->add_flag("--inject-fault", verify_options.inject_fault)->group("");
  add_common(verify_cmd, common);

  auto* average = app.add_subcommand("average", "Exact average register function");
  std::string avg_family = "butterfly";
  std::vector<std::size_t> avg_n;
  unsigned avg_harmonics = asymptotics::kDefaultHarmonics;
  average->add_option("--family", avg_family, "binary or butterfly")
      ->check(CLI::IsMember({"binary", "butterfly"}));
  average->add_option("--n", avg_n, "Comma-separated sizes")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  average->add_option("--harmonics", avg_harmonics, "Fourier terms of psi")
      ->check(CLI::PositiveNumber);
  add_common(average, common);

  auto* compare = app.add_subcommand("compare", "Exact averages against the asymptotic formula");
  std::vector<std::size_t> cmp_n;
  unsigned cmp_harmonics = asymptotics::kDefaultHarmonics;
  compare->add_option("--n", cmp_n, "Comma-separated sizes")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  compare->add_option("--harmonics", cmp_harmonics, "Fourier terms of psi")
      ->check(CLI::PositiveNumber);
  add_common(compare, common);

  auto* fluctuation = app.add_subcommand("fluctuation", "Samples of the periodic fluctuation");
  unsigned fl_harmonics = asymptotics::kDefaultHarmonics;
  std::size_t fl_samples = 64;
  fluctuation->add_option("--harmonics", fl_harmonics, "Fourier terms of psi")
      ->check(CLI::PositiveNumber);
  fluctuation->add_option("--samples", fl_samples, "Equally spaced points on [0, 1]")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  add_common(fluctuation, common);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  int exit_code = kOk;
  Output output;
  try {
    if (*enumerate) {
      output = run_enumerate(enum_family, enum_max);
    } else if (*series_cmd) {
      output = run_series(series_flags);
    } else if (*verify_cmd) {
      output = run_verify(verify_options, exit_code);
    } else if (*average) {
      output = run_average(avg_family, avg_n, avg_harmonics);
    } else if (*compare) {
      output = run_compare(cmp_n, cmp_harmonics);
    } else {
      output = run_fluctuation(fl_harmonics, fl_samples);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  output.flags["format"] = common.format;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!common.out.empty()) {
    file.open(common.out);
    if (!file) {
      err << "error: --out: cannot open '" << common.out << "' for writing\n";
      return kUsageError;
    }
    sink = &file;
  }
  if (common.format == "json") {
    write_json(output, *sink);
  } else {
    write_csv(output.table, *sink);
  }
  return exit_code;
}

}  // namespace strahler::cli

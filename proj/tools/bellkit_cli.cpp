// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// bellkit command-line interface.
//
// Subcommands:
//
//   bound      classical bounds of a functional (exact enumeration, the
//              fixed-outcome bound, and the family closed form when one
//              exists), as a JSON report.
//
//   quantum    classical-vs-quantum report: exact LHV bound, quantum
//              ceiling, attained value with its phase parameter, violation
//              verdict, and for the ekb family the independent spectral
//              maximum.
//
//   transform  probability table -> correlation tensor (from a CSV/JSON
//              table or a seeded random table), or correlation tensor ->
//              probability table.
//
//   reproduce  recompute the full preset result table into reproduce.csv
//              and reproduce.json; byte-identical on every run.
//
// Functionals come either from --preset (with the family's scenario
// parameters) or from a --functional JSON file; exactly one of the two.
// A --config JSON file can hold any of the long flags; explicit
// command-line flags win over config values.
//
// Exit codes: 0 success, 2 usage error, 3 validation or data error,
// 4 enumeration larger than the cap.

#include <chrono>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellkit/bellkit.hpp"

namespace {

using bellkit::BellFunctional;
using bellkit::BoundResult;
using bellkit::EnumerationTooLarge;
using bellkit::IoError;
using bellkit::JsonValue;
using bellkit::ProbabilityTable;
using bellkit::QuantumMaxResult;
using bellkit::Scenario;
using bellkit::SignVector;
using bellkit::ValidationError;

// Usage-level mistakes (bad flag combinations, malformed flag values) exit
// with code 2, like CLI11's own parse errors.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct CommonOptions {
  std::string preset;
  std::string functional_path;
  int parties = 0;
  int settings = 0;
  int outcomes = 0;
  std::string f1_text;
  std::string sign_text;
  std::uint64_t seed = 0;
  std::uint64_t cap = Scenario::kDefaultStrategyCap;
  std::string table_path;
  std::string tensor_path;
  std::string out_path;
  std::string config_path;
  bool timing = false;
  nlohmann::json config;  // loaded by apply_config when --config is given

  // CLI11 option handles, used to tell "explicitly given" from "default".
  CLI::Option* preset_opt = nullptr;
  CLI::Option* functional_opt = nullptr;
  CLI::Option* parties_opt = nullptr;
  CLI::Option* settings_opt = nullptr;
  CLI::Option* outcomes_opt = nullptr;
  CLI::Option* f1_opt = nullptr;
  CLI::Option* sign_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* cap_opt = nullptr;
  CLI::Option* table_opt = nullptr;
  CLI::Option* tensor_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* timing_opt = nullptr;
};

// Merges --config JSON into options that were not set on the command line.
void apply_config(CommonOptions& o) {
  if (o.config_path.empty()) return;
  o.config =
      bellkit::parse_json_text(bellkit::read_text_file(o.config_path), o.config_path);
  if (!o.config.is_object()) {
    throw IoError(o.config_path + ": config must be a JSON object");
  }
  const nlohmann::json& cfg = o.config;
  const auto merge_string = [&](const char* key, CLI::Option* opt, std::string& slot) {
    if (opt != nullptr && opt->count() == 0 && cfg.contains(key)) {
      slot = cfg.at(key).get<std::string>();
    }
  };
  const auto merge_int = [&](const char* key, CLI::Option* opt, int& slot) {
    if (opt != nullptr && opt->count() == 0 && cfg.contains(key)) {
      slot = cfg.at(key).get<int>();
    }
  };
  const auto merge_u64 = [&](const char* key, CLI::Option* opt, std::uint64_t& slot) {
    if (opt != nullptr && opt->count() == 0 && cfg.contains(key)) {
      slot = cfg.at(key).get<std::uint64_t>();
    }
  };
  merge_string("preset", o.preset_opt, o.preset);
  merge_string("functional", o.functional_opt, o.functional_path);
  merge_int("n", o.parties_opt, o.parties);
  merge_int("k", o.settings_opt, o.settings);
  merge_int("d", o.outcomes_opt, o.outcomes);
  merge_string("f1", o.f1_opt, o.f1_text);
  merge_string("sign", o.sign_opt, o.sign_text);
  merge_u64("seed", o.seed_opt, o.seed);
  merge_u64("cap", o.cap_opt, o.cap);
  merge_string("table", o.table_opt, o.table_path);
  merge_string("tensor", o.tensor_opt, o.tensor_path);
  merge_string("out", o.out_opt, o.out_path);
  if (o.timing_opt != nullptr && o.timing_opt->count() == 0 && cfg.contains("timing")) {
    o.timing = cfg.at("timing").get<bool>();
  }
}

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }
bool set_by_user(const CommonOptions& o, const CLI::Option* opt, const char* key) {
  return given(opt) || (o.config.is_object() && o.config.contains(key));
}

std::complex<double> parse_f1(const std::string& text) {
  const std::size_t comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      return {std::stod(text), 0.0};
    }
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--f1 expects \"re\" or \"re,im\", got \"" + text + "\"");
  }
}

// Checks that a preset's fixed scenario parameter was not overridden.
void require_fixed(const CommonOptions& o, const CLI::Option* opt, const char* key,
                   int provided, int fixed, const char* preset) {
  if (set_by_user(o, opt, key) && provided != fixed) {
    throw UsageError(std::string("--preset ") + preset + " fixes --" + key + " to " +
                     std::to_string(fixed) + "; got " + std::to_string(provided));
  }
}

// Builds the functional named by --preset / --functional.
BellFunctional resolve_functional(const CommonOptions& o) {
  const bool have_preset = !o.preset.empty();
  const bool have_file = !o.functional_path.empty();
  if (have_preset == have_file) {
    throw UsageError("provide exactly one of --preset and --functional");
  }
  if (have_file) {
    if (set_by_user(o, o.sign_opt, "sign")) {
      throw UsageError("--sign applies to presets; a functional file carries its own");
    }
    return bellkit::functional_from_json(bellkit::parse_json_text(
        bellkit::read_text_file(o.functional_path), o.functional_path));
  }

  const bool sign_given = set_by_user(o, o.sign_opt, "sign");
  if (o.preset == "chsh") {
    require_fixed(o, o.parties_opt, "n", o.parties, 2, "chsh");
    require_fixed(o, o.settings_opt, "k", o.settings, 2, "chsh");
    require_fixed(o, o.outcomes_opt, "d", o.outcomes, 2, "chsh");
    if (sign_given && bellkit::parse_sign_vector(o.sign_text) != SignVector(2)) {
      throw UsageError("--preset chsh fixes --sign to ++");
    }
    return bellkit::make_chsh();
  }
  if (o.preset == "cglmp") {
    if (!set_by_user(o, o.outcomes_opt, "d")) {
      throw UsageError("--preset cglmp requires --d");
    }
    require_fixed(o, o.parties_opt, "n", o.parties, 2, "cglmp");
    require_fixed(o, o.settings_opt, "k", o.settings, 2, "cglmp");
    if (sign_given &&
        bellkit::parse_sign_vector(o.sign_text) != SignVector({+1, -1})) {
      throw UsageError("--preset cglmp fixes --sign to +-");
    }
    return bellkit::make_cglmp(o.outcomes);
  }
  if (o.preset == "mermin") {
    if (!set_by_user(o, o.parties_opt, "n")) {
      throw UsageError("--preset mermin requires --n");
    }
    require_fixed(o, o.settings_opt, "k", o.settings, 2, "mermin");
    require_fixed(o, o.outcomes_opt, "d", o.outcomes, 2, "mermin");
    if (sign_given &&
        bellkit::parse_sign_vector(o.sign_text) != SignVector(o.parties)) {
      throw UsageError("--preset mermin fixes --sign to all-plus");
    }
    return bellkit::make_mermin(o.parties);
  }
  if (o.preset == "zb") {
    if (!set_by_user(o, o.parties_opt, "n")) {
      throw UsageError("--preset zb requires --n");
    }
    require_fixed(o, o.settings_opt, "k", o.settings, 2, "zb");
    require_fixed(o, o.outcomes_opt, "d", o.outcomes, 2, "zb");
    const SignVector sign = sign_given ? bellkit::parse_sign_vector(o.sign_text)
                                       : SignVector(o.parties);
    return bellkit::make_zb(o.parties, sign);
  }
  if (o.preset == "ekb") {
    if (!set_by_user(o, o.settings_opt, "k")) {
      throw UsageError("--preset ekb requires --k");
    }
    require_fixed(o, o.parties_opt, "n", o.parties, 2, "ekb");
    require_fixed(o, o.outcomes_opt, "d", o.outcomes, 2, "ekb");
    if (sign_given && bellkit::parse_sign_vector(o.sign_text) != SignVector(2)) {
      throw UsageError("--preset ekb fixes --sign to ++");
    }
    const std::complex<double> f1 =
        set_by_user(o, o.f1_opt, "f1") ? parse_f1(o.f1_text)
                                       : std::complex<double>(0.5, 0.0);
    return bellkit::make_ekb(o.settings, f1);
  }
  throw UsageError("unknown preset \"" + o.preset +
                   "\" (expected chsh, cglmp, mermin, zb, or ekb)");
}

void emit(const CommonOptions& o, const std::string& content) {
  if (o.out_path.empty()) {
    std::fputs(content.c_str(), stdout);
  } else {
    bellkit::write_text_atomic(o.out_path, content);
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

// --- bound -----------------------------------------------------------------

int run_bound(CommonOptions& o) {
  apply_config(o);
  const auto start = std::chrono::steady_clock::now();
  const BellFunctional fn = resolve_functional(o);
  const BoundResult exact = bellkit::exact_lhv_bound(fn, o.cap);
  const BoundResult fixed = bellkit::fixed_alpha_bound(fn);

  JsonValue root = JsonValue::object();
  root.add("scenario", bellkit::json_from_scenario(fn.scenario()));
  root.add("sign", JsonValue::string(fn.sign().to_string()));
  root.add("name", JsonValue::string(fn.name()));
  JsonValue methods = JsonValue::array();
  {
    JsonValue m = JsonValue::object();
    m.add("method", JsonValue::string(exact.method));
    m.add("value", JsonValue::real(exact.value));
    m.add("argmax", JsonValue::integer(static_cast<std::int64_t>(exact.argmax)));
    methods.push(std::move(m));
  }
  {
    JsonValue m = JsonValue::object();
    m.add("method", JsonValue::string(fixed.method));
    m.add("value", JsonValue::real(fixed.value));
    m.add("argmax", JsonValue::integer(static_cast<std::int64_t>(fixed.argmax)));
    methods.push(std::move(m));
  }
  if (fn.name() == "ekb") {
    const std::complex<double> f1 = fn.weight().value({1, 1});
    try {
      const BoundResult closed =
          bellkit::ekb_closed_form_bound(fn.scenario().settings(), f1);
      JsonValue m = JsonValue::object();
      m.add("method", JsonValue::string(closed.method));
      m.add("value", JsonValue::real(closed.value));
      methods.push(std::move(m));
    } catch (const ValidationError&) {
      // Weight phase outside the closed form's domain: report only the
      // enumerated methods rather than an inapplicable formula.
    }
  } else if (fn.name() == "mermin") {
    JsonValue m = JsonValue::object();
    m.add("method", JsonValue::string("closed-form"));
    m.add("value",
          JsonValue::real(bellkit::mermin_reference_bound(fn.scenario().parties())));
    methods.push(std::move(m));
  }
  root.add("methods", std::move(methods));
  if (o.timing) {
    root.add("timing_ms", JsonValue::real(elapsed_ms(start)));
  }
  emit(o, root.dump());
  return 0;
}

// --- quantum ---------------------------------------------------------------

int run_quantum(CommonOptions& o) {
  apply_config(o);
  const auto start = std::chrono::steady_clock::now();
  const BellFunctional fn = resolve_functional(o);
  const BoundResult exact = bellkit::exact_lhv_bound(fn, o.cap);
  const QuantumMaxResult q = bellkit::me_quantum_max(fn);
  const bool violated = q.ceiling > exact.value + bellkit::kBoundComparisonTolerance;

  JsonValue root = JsonValue::object();
  root.add("scenario", bellkit::json_from_scenario(fn.scenario()));
  root.add("sign", JsonValue::string(fn.sign().to_string()));
  root.add("name", JsonValue::string(fn.name()));
  root.add("b_lr", JsonValue::real(exact.value));
  root.add("q_m", JsonValue::real(q.ceiling));
  root.add("attained", JsonValue::real(q.attained));
  root.add("gap", JsonValue::real(q.gap));
  root.add("nu_total", JsonValue::real(q.nu_total));
  root.add("violated", JsonValue::boolean(violated));
  if (fn.name() == "ekb") {
    const std::complex<double> f1 = fn.weight().value({1, 1});
    root.add("ekb_svd_max",
             JsonValue::real(bellkit::ekb_quantum_max(fn.scenario().settings(), f1)));
  }
  if (o.timing) {
    root.add("timing_ms", JsonValue::real(elapsed_ms(start)));
  }
  emit(o, root.dump());
  return 0;
}

// --- transform ---------------------------------------------------------------

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int run_transform(CommonOptions& o) {
  apply_config(o);
  const bool have_table = !o.table_path.empty();
  const bool have_tensor = !o.tensor_path.empty();
  const bool have_seed = set_by_user(o, o.seed_opt, "seed");
  const int sources = (have_table ? 1 : 0) + (have_tensor ? 1 : 0) + (have_seed ? 1 : 0);
  if (sources != 1) {
    throw UsageError("provide exactly one input: --table, --tensor, or --seed");
  }

  if (have_tensor) {
    // Inverse direction: tensor JSON -> probability table.
    const bellkit::CorrelationTensor tensor = bellkit::tensor_from_json(
        bellkit::parse_json_text(bellkit::read_text_file(o.tensor_path), o.tensor_path));
    const ProbabilityTable table = bellkit::probabilities_from_correlations(tensor);
    if (!o.out_path.empty() && ends_with(o.out_path, ".csv")) {
      emit(o, bellkit::csv_from_table(table));
    } else {
      emit(o, bellkit::json_from_table(table).dump());
    }
    return 0;
  }

  // Forward direction: table (from file or seeded generator) -> tensor JSON.
  std::optional<ProbabilityTable> table;
  if (have_table) {
    if (ends_with(o.table_path, ".csv")) {
      if (!set_by_user(o, o.parties_opt, "n") || !set_by_user(o, o.settings_opt, "k") ||
          !set_by_user(o, o.outcomes_opt, "d")) {
        throw UsageError("a CSV table does not carry its scenario; provide --n, --k, --d");
      }
      table.emplace(bellkit::table_from_csv(bellkit::read_text_file(o.table_path),
                                            Scenario(o.parties, o.settings, o.outcomes)));
    } else {
      table.emplace(bellkit::table_from_json(bellkit::parse_json_text(
          bellkit::read_text_file(o.table_path), o.table_path)));
    }
  } else {
    if (!set_by_user(o, o.parties_opt, "n") || !set_by_user(o, o.settings_opt, "k") ||
        !set_by_user(o, o.outcomes_opt, "d")) {
      throw UsageError("--seed requires the scenario flags --n, --k, --d");
    }
    table.emplace(
        bellkit::random_table(Scenario(o.parties, o.settings, o.outcomes), o.seed));
  }
  const SignVector sign = set_by_user(o, o.sign_opt, "sign")
                              ? bellkit::parse_sign_vector(o.sign_text)
                              : SignVector(table->scenario().parties());
  const bellkit::CorrelationTensor tensor =
      bellkit::correlations_from_probabilities(*table, sign);
  emit(o, bellkit::json_from_tensor(tensor).dump());
  return 0;
}

// --- reproduce ---------------------------------------------------------------

struct ReproduceRow {
  std::string inequality;
  int parties;
  int settings;
  int outcomes;
  double exact;
  double reference;
  double quantum;
  bool violated;
};

int run_reproduce(CommonOptions& o) {
  apply_config(o);
  const auto start = std::chrono::steady_clock::now();
  std::vector<ReproduceRow> rows;
  const double tol = bellkit::kBoundComparisonTolerance;

  {  // chsh: reference bound is the family constant 2
    const BellFunctional fn = bellkit::make_chsh();
    const double exact = bellkit::exact_lhv_bound(fn, o.cap).value;
    const double q = bellkit::me_quantum_max(fn).ceiling;
    rows.push_back({"chsh", 2, 2, 2, exact, 2.0, q, q > exact + tol});
  }
  for (int d = 2; d <= 4; ++d) {  // cglmp family: reference bound is 2 for every d
    const BellFunctional fn = bellkit::make_cglmp(d);
    const double exact = bellkit::exact_lhv_bound(fn, o.cap).value;
    const double q = bellkit::me_quantum_max(fn).ceiling;
    rows.push_back({"cglmp", 2, 2, d, exact, 2.0, q, q > exact + tol});
  }
  for (int n = 2; n <= 5; ++n) {  // mermin family
    const BellFunctional fn = bellkit::make_mermin(n);
    const double exact = bellkit::exact_lhv_bound(fn, o.cap).value;
    const double reference = bellkit::mermin_reference_bound(n);
    const double q = bellkit::me_quantum_max(fn).ceiling;
    rows.push_back({"mermin", n, 2, 2, exact, reference, q, q > exact + tol});
  }
  for (int n = 2; n <= 3; ++n) {
    // zb family: the bound columns describe the combined sum over all sign
    // vectors (exact enumeration vs the 2^N reference), while q_m and the
    // verdict describe one sign vector's functional, whose quantum ceiling
    // exceeds its per-sign-vector LHV bound.
    const double combined_exact = bellkit::zb_combined_exact_bound(n, o.cap);
    const double combined_reference =
        static_cast<double>(std::uint64_t{1} << n);
    const BellFunctional fn = bellkit::make_zb(n, SignVector(n));
    const double per_sign_exact = bellkit::exact_lhv_bound(fn, o.cap).value;
    const double q = bellkit::me_quantum_max(fn).ceiling;
    rows.push_back({"zb", n, 2, 2, combined_exact, combined_reference, q,
                    q > per_sign_exact + tol});
  }
  for (int k = 2; k <= 4; ++k) {  // ekb family at f1 = 1/2
    const std::complex<double> f1(0.5, 0.0);
    const BellFunctional fn = bellkit::make_ekb(k, f1);
    const double exact = bellkit::exact_lhv_bound(fn, o.cap).value;
    const double reference = bellkit::ekb_closed_form_bound(k, f1).value;
    const double q = bellkit::me_quantum_max(fn).ceiling;
    rows.push_back({"ekb", 2, k, 2, exact, reference, q, q > exact + tol});
  }

  std::string csv = "inequality,n,k,d,b_lr_exact,b_lr_reference,q_m,violated\n";
  JsonValue json_rows = JsonValue::array();
  for (const ReproduceRow& row : rows) {
    csv += row.inequality + "," + std::to_string(row.parties) + "," +
           std::to_string(row.settings) + "," + std::to_string(row.outcomes) + "," +
           bellkit::format_double(row.exact) + "," +
           bellkit::format_double(row.reference) + "," +
           bellkit::format_double(row.quantum) + "," +
           (row.violated ? "true" : "false") + "\n";
    JsonValue j = JsonValue::object();
    j.add("inequality", JsonValue::string(row.inequality));
    j.add("n", JsonValue::integer(row.parties));
    j.add("k", JsonValue::integer(row.settings));
    j.add("d", JsonValue::integer(row.outcomes));
    j.add("b_lr_exact", JsonValue::real(row.exact));
    j.add("b_lr_reference", JsonValue::real(row.reference));
    j.add("q_m", JsonValue::real(row.quantum));
    j.add("violated", JsonValue::boolean(row.violated));
    json_rows.push(std::move(j));
  }
  JsonValue root = JsonValue::object();
  root.add("rows", std::move(json_rows));

  // Every family's exact bound should agree with its reference formula; a
  // row where they split by more than the comparison tolerance is flagged
  // and turns the exit status into a data error.
  int discrepancies = 0;
  for (const ReproduceRow& row : rows) {
    if (std::abs(row.exact - row.reference) > tol) {
      ++discrepancies;
      std::fprintf(stderr, "discrepancy: %s n=%d k=%d d=%d exact=%s reference=%s\n",
                   row.inequality.c_str(), row.parties, row.settings,
                   row.outcomes, bellkit::format_double(row.exact).c_str(),
                   bellkit::format_double(row.reference).c_str());
    }
  }

  const std::string dir = o.out_path.empty() ? std::string(".") : o.out_path;
  const std::string csv_path = dir + "/reproduce.csv";
  const std::string json_path = dir + "/reproduce.json";
  bellkit::write_text_atomic(csv_path, csv);
  bellkit::write_text_atomic(json_path, root.dump());
  std::fprintf(stderr, "wrote %s\nwrote %s\n", csv_path.c_str(), json_path.c_str());
  std::fprintf(stderr, "discrepancies: %d\n", discrepancies);
  if (o.timing) {
    std::fprintf(stderr, "timing_ms %s\n",
                 bellkit::format_double(elapsed_ms(start)).c_str());
  }
  return discrepancies == 0 ? 0 : 3;
}

void add_common_flags(CLI::App* cmd, CommonOptions& o, bool functional_source,
                      bool transform_sources) {
  if (functional_source) {
    o.preset_opt = cmd->add_option("--preset", o.preset,
                                   "preset family: chsh, cglmp, mermin, zb, ekb");
    o.functional_opt =
        cmd->add_option("--functional", o.functional_path, "functional JSON file");
    o.f1_opt = cmd->add_option("--f1", o.f1_text,
                               "ekb weight as \"re\" or \"re,im\" (default 0.5)");
    o.cap_opt = cmd->add_option("--cap", o.cap,
                                "cap on enumerated deterministic strategies");
  }
  if (transform_sources) {
    o.table_opt = cmd->add_option("--table", o.table_path,
                                  "probability table file (.csv or .json)");
    o.tensor_opt =
        cmd->add_option("--tensor", o.tensor_path, "correlation tensor JSON file");
    o.seed_opt = cmd->add_option("--seed", o.seed,
                                 "generate the input table from this seed");
  }
  o.parties_opt = cmd->add_option("--n", o.parties, "parties");
  o.settings_opt = cmd->add_option("--k", o.settings, "settings per party");
  o.outcomes_opt = cmd->add_option("--d", o.outcomes, "outcomes per setting");
  o.sign_opt = cmd->add_option("--sign", o.sign_text,
                               "sign vector, e.g. \"+-\" or \"1,-1\"");
  o.out_opt = cmd->add_option("--out", o.out_path, "output file (default: stdout)");
  cmd->add_option("--config", o.config_path,
                  "JSON file with defaults for these flags");
  o.timing_opt = cmd->add_flag("--timing", o.timing,
                               "include wall-clock timing in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlation functionals: classical bounds, quantum maxima, "
               "and the Fourier transform between tables and tensors"};
  app.require_subcommand(1);

  CommonOptions bound_opts;
  CLI::App* bound_cmd =
      app.add_subcommand("bound", "classical bounds of a functional");
  add_common_flags(bound_cmd, bound_opts, /*functional_source=*/true,
                   /*transform_sources=*/false);

  CommonOptions quantum_opts;
  CLI::App* quantum_cmd =
      app.add_subcommand("quantum", "classical-vs-quantum report");
  add_common_flags(quantum_cmd, quantum_opts, /*functional_source=*/true,
                   /*transform_sources=*/false);

  CommonOptions transform_opts;
  CLI::App* transform_cmd = app.add_subcommand(
      "transform", "probability table <-> correlation tensor");
  add_common_flags(transform_cmd, transform_opts, /*functional_source=*/false,
                   /*transform_sources=*/true);

  CommonOptions reproduce_opts;
  CLI::App* reproduce_cmd = app.add_subcommand(
      "reproduce", "recompute the preset result table (reproduce.csv/.json)");
  reproduce_opts.out_opt = reproduce_cmd->add_option(
      "--out", reproduce_opts.out_path, "output directory (default: .)");
  reproduce_cmd->add_option("--config", reproduce_opts.config_path,
                            "JSON file with defaults for these flags");
  reproduce_opts.cap_opt = reproduce_cmd->add_option(
      "--cap", reproduce_opts.cap, "cap on enumerated deterministic strategies");
  reproduce_opts.timing_opt = reproduce_cmd->add_flag(
      "--timing", reproduce_opts.timing, "report wall-clock timing on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bound_cmd->parsed()) return run_bound(bound_opts);
    if (quantum_cmd->parsed()) return run_quantum(quantum_opts);
    if (transform_cmd->parsed()) return run_transform(transform_opts);
    if (reproduce_cmd->parsed()) return run_reproduce(reproduce_opts);
    std::fprintf(stderr, "error: no subcommand\n");
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const EnumerationTooLarge& e) {
    std::fprintf(stderr, "enumeration too large: %s\n", e.what());
    return 4;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

#include "relbps/cli/job.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "relbps/cli/io.hpp"
#include "relbps/congruence.hpp"
#include "relbps/dtlink.hpp"
#include "relbps/matrices.hpp"
#include "relbps/series.hpp"

namespace relbps::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Writes to --out when given, otherwise to `fallback`.
void emit(const JobSpec& job, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (!job.output) {
    write(fallback);
    return;
  }
  std::ofstream file(*job.output, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + *job.output + " for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("failed writing " + *job.output);
}

// Flags accept "local-gw" as well as the file spelling "local_gw".
SequenceKind kind_option(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  try {
    return parse_sequence_kind(name);
  } catch (const InputError&) {
    throw UsageError("unknown sequence kind '" + name + "'");
  }
}

MatrixKind matrix_kind(const std::string& name) {
  for (auto kind : {MatrixKind::R, MatrixKind::A, MatrixKind::L, MatrixKind::B,
                    MatrixKind::Ltilde, MatrixKind::LtildeInv, MatrixKind::C})
    if (to_string(kind) == name) return kind;
  throw UsageError("unknown matrix kind '" + name + "'");
}

bool all_integral(std::span<const Rational> values) {
  return std::all_of(values.begin(), values.end(), [](const Rational& q) { return is_integral(q); });
}

int run_transform(const JobSpec& job, std::ostream& out, std::ostream&) {
  const auto seq = load_sequence(*job.input);
  const auto& from = job.text("from");
  if (!from.empty() && kind_option(from) != seq.kind())
    throw InputError("input sequence has kind " + std::string(to_string(seq.kind())) +
                     ", but --from " + from + " was given");
  const auto result = convert(seq, kind_option(job.text("to")));
  emit(job, out, [&](std::ostream& os) { os << sequence_to_json(result).dump(2) << '\n'; });
  return kSuccess;
}

int run_pipeline(const JobSpec& job, std::ostream& out, std::ostream& err) {
  const auto seq = load_sequence(*job.input);
  std::optional<InvariantSequence> result;
  if (seq.kind() == SequenceKind::LocalBPS)
    result = pipeline_local_bps_to_relative_bps(seq);
  else if (seq.kind() == SequenceKind::RelativeBPS)
    result = pipeline_relative_bps_to_local_bps(seq);
  else
    throw InputError("pipeline expects a local_bps or relative_bps sequence, got " +
                     std::string(to_string(seq.kind())));
  emit(job, out, [&](std::ostream& os) { os << sequence_to_json(*result).dump(2) << '\n'; });

  if (job.text("check-integrality") != "true") return kSuccess;
  if (!all_integral(seq.values())) {
    err << "pipeline: input is not integral; integrality check skipped\n";
    return kSuccess;
  }
  // Relative BPS integral <=> dw * n_{d beta} integral.
  std::vector<Rational> checked(result->values().begin(), result->values().end());
  if (result->kind() == SequenceKind::LocalBPS)
    for (std::size_t d = 1; d <= checked.size(); ++d)
      checked[d - 1] *= Rational(static_cast<long>(d) * result->w());
  for (std::size_t d = 1; d <= checked.size(); ++d) {
    if (!is_integral(checked[d - 1])) {
      err << "pipeline: integrality fails in degree " << d << ": " << format_rational(checked[d - 1])
          << '\n';
      return kVerificationFailed;
    }
  }
  return kSuccess;
}

int run_matrix(const JobSpec& job, std::ostream& out, std::ostream& err) {
  const auto n = job.integer("n");
  const auto w = job.integer("w");
  const auto kind = matrix_kind(job.text("kind"));
  const auto& method = job.text("method");
  if (kind != MatrixKind::C) {
    const auto m = build_matrix(kind, n, w);
    emit(job, out, [&](std::ostream& os) { write_matrix_tsv(os, m); });
    return kSuccess;
  }
  const auto primary = build_C(method == "product" ? CMethod::Product : CMethod::ClosedForm, n, w);
  emit(job, out, [&](std::ostream& os) { write_matrix_tsv(os, primary); });
  if (method == "both" && !primary.same_entries(build_C(CMethod::Product, n, w))) {
    err << "c-matrix: closed form and product constructions disagree\n";
    return kVerificationFailed;
  }
  return kSuccess;
}

int write_report(const JobSpec& job, const std::vector<CongruenceReport>& reports, std::ostream& out) {
  nlohmann::json failures = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();
  std::int64_t total = 0;
  bool passed = true;
  for (const auto& r : reports) {
    total += r.total_cases;
    for (const auto& c : r.failures) failures.push_back(case_to_json(c, r.lemma));
    summary[std::string(to_string(r.lemma))] = report_summary(r);
    passed = passed && r.passed();
  }
  summary["passed"] = passed;
  const nlohmann::json doc = {{"job", job.to_json()},
                              {"total_cases", total},
                              {"failures", failures},
                              {"summary", summary},
                              {"meta", {{"version", kVersion}, {"timestamp", utc_timestamp()}}}};
  emit(job, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return passed ? kSuccess : kVerificationFailed;
}

int run_verify_congruences(const JobSpec& job, std::ostream& out, std::ostream&) {
  const auto& lemma = job.text("lemma");
  const bool all = lemma == "all";
  std::vector<CongruenceReport> reports;
  if (all || lemma == "peng") {
    PengGrid grid;
    grid.primes.clear();
    std::stringstream primes(job.text("primes"));
    for (std::string item; std::getline(primes, item, ',');) grid.primes.push_back(std::stoll(item));
    grid.alpha_max = static_cast<int>(job.integer("alpha-max"));
    grid.ab_max = job.integer("ab-max");
    reports.push_back(run_peng_grid(grid, job.jobs));
  }
  if (all || lemma == "special")
    reports.push_back(run_special_grid({job.integer("k-max"), job.integer("a-max")}, job.jobs));
  if (all || lemma == "divisibility")
    reports.push_back(run_divisibility_grid(
        {job.integer("s-max"), job.integer("w-min"), job.integer("w-max")}, job.jobs));
  return write_report(job, reports, out);
}

int run_verify_integrality(const JobSpec& job, std::ostream& out, std::ostream&) {
  return write_report(
      job, {run_integrality_grid({job.integer("n"), job.integer("w-min"), job.integer("w-max")}, job.jobs)},
      out);
}

int run_dt_table(const JobSpec& job, std::ostream& out, std::ostream& err) {
  const auto table = dt_table(job.integer("n-max"), job.integer("m-max"), job.jobs);
  emit(job, out, [&](std::ostream& os) { write_dt_tsv(os, table); });
  for (const auto& v : table.negative)
    err << "dt-table: warning: negative value DT_" << v.n << "^(" << v.m << ") = " << v.value.get_str()
        << '\n';
  for (const auto& c : table.conflicts)
    err << "dt-table: realizations (" << c.first.s << ',' << c.first.t << ',' << c.first.w << ") and ("
        << c.second.s << ',' << c.second.t << ',' << c.second.w << ") disagree for n=" << c.n
        << " m=" << c.m << '\n';
  for (const auto& r : table.non_integral)
    err << "dt-table: non-integral entry at (" << r.s << ',' << r.t << ',' << r.w << ")\n";
  return table.consistent() ? kSuccess : kVerificationFailed;
}

// Records a bound option value as its string form.
template <typename T>
void record(JobSpec& job, const std::string& name, const T& value) {
  std::ostringstream os;
  os << value;
  job.parameters[name] = os.str();
}

}  // namespace

std::string command_name(Command command) {
  switch (command) {
    case Command::Transform: return "transform";
    case Command::Pipeline: return "pipeline";
    case Command::Matrix: return "c-matrix";
    case Command::VerifyCongruences: return "verify congruences";
    case Command::VerifyIntegrality: return "verify integrality";
    case Command::DTTable: return "dt-table";
  }
  return "unknown";
}

std::int64_t JobSpec::integer(const std::string& name) const {
  auto it = parameters.find(name);
  if (it == parameters.end()) throw UsageError("missing parameter --" + name);
  try {
    std::size_t used = 0;
    const auto value = std::stoll(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(name);
    return value;
  } catch (const std::logic_error&) {
    throw UsageError("parameter --" + name + " must be an integer, got '" + it->second + "'");
  }
}

const std::string& JobSpec::text(const std::string& name) const {
  auto it = parameters.find(name);
  if (it == parameters.end()) throw UsageError("missing parameter --" + name);
  return it->second;
}

nlohmann::json JobSpec::to_json() const {
  nlohmann::json doc = {{"command", command_name(command)}, {"parameters", parameters}};
  doc["input"] = input ? nlohmann::json(*input) : nlohmann::json(nullptr);
  doc["output"] = output ? nlohmann::json(*output) : nlohmann::json(nullptr);
  return doc;
}

JobSpec parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Exact transforms between local and relative BPS state counts"};
  app.name(argv.empty() ? "relbps" : argv.front());
  app.require_subcommand(1);

  unsigned jobs = default_jobs();
  app.add_option("--jobs", jobs, "Worker threads for verification grids")->check(CLI::PositiveNumber);

  std::string input, output, from, to, kind = "C", method = "closed", lemma = "all";
  std::string primes = "2,3,5,7,11,13";
  std::int64_t n = 0, w = 0, alpha_max = 4, ab_max = 30, k_max = 99, a_max = 50, s_max = 60;
  std::int64_t w_min = 2, w_max = 0, n_max = 0, m_max = 0;
  bool check_integrality = false;

  auto* transform = app.add_subcommand("transform", "Convert a sequence between GW and BPS kinds");
  transform->add_option("--from", from, "Expected kind of the input sequence");
  transform->add_option("--to", to, "Target kind")->required();
  transform->add_option("--in", input, "Sequence JSON file")->required();
  transform->add_option("--out", output, "Output file (default: stdout)");

  auto* pipeline = app.add_subcommand("pipeline", "Local BPS <-> relative BPS through both GW sides");
  pipeline->add_option("--in", input, "Sequence JSON file (local_bps or relative_bps)")->required();
  pipeline->add_option("--out", output, "Output file (default: stdout)");
  pipeline->add_flag("--check-integrality", check_integrality,
                     "Fail unless integral input yields integral output");

  auto* matrix = app.add_subcommand("c-matrix", "Build and dump a divisor matrix as TSV");
  matrix->add_option("--n", n, "Matrix size N")->required()->check(CLI::PositiveNumber);
  matrix->add_option("--w", w, "Intersection number w")->required()->check(CLI::PositiveNumber);
  matrix->add_option("--method", method, "C construction")
      ->check(CLI::IsMember({"closed", "product", "both"}));
  matrix->add_option("--kind", kind, "Matrix kind")
      ->check(CLI::IsMember({"C", "R", "A", "L", "B", "Ltilde", "LtildeInv"}));
  matrix->add_option("--out", output, "Output file (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Run verification grids");
  verify->require_subcommand(1);
  auto* congruences = verify->add_subcommand("congruences", "Binomial congruence grids");
  congruences->add_option("--lemma", lemma, "Grid to run")
      ->check(CLI::IsMember({"all", "peng", "special", "divisibility"}));
  congruences->add_option("--primes", primes, "Comma-separated primes for the prime-power grid");
  congruences->add_option("--alpha-max", alpha_max)->check(CLI::PositiveNumber);
  congruences->add_option("--ab-max", ab_max)->check(CLI::PositiveNumber);
  congruences->add_option("--k-max", k_max)->check(CLI::PositiveNumber);
  congruences->add_option("--a-max", a_max)->check(CLI::PositiveNumber);
  congruences->add_option("--s-max", s_max)->check(CLI::PositiveNumber);
  congruences->add_option("--w-min", w_min)->check(CLI::PositiveNumber);
  congruences->add_option("--w-max", w_max, "Upper w for the divisibility grid (default 8)")
      ->check(CLI::PositiveNumber);
  congruences->add_option("--out", output, "Report file (default: stdout)");

  auto* integrality = verify->add_subcommand("integrality", "Integrality of C and its inverse");
  integrality->add_option("--n", n, "Matrix size N (default 60)")->check(CLI::PositiveNumber);
  integrality->add_option("--w-min", w_min)->check(CLI::PositiveNumber);
  integrality->add_option("--w-max", w_max, "Upper w (default 12)")->check(CLI::PositiveNumber);
  integrality->add_option("--out", output, "Report file (default: stdout)");

  auto* dt = app.add_subcommand("dt-table", "Tabulate DT invariants read off C");
  dt->add_option("--n-max", n_max)->required()->check(CLI::PositiveNumber);
  dt->add_option("--m-max", m_max)->required()->check(CLI::PositiveNumber);
  dt->add_option("--out", output, "Output TSV (default: stdout)");

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  JobSpec job;
  job.jobs = jobs;
  if (!output.empty()) job.output = output;
  if (!input.empty()) job.input = input;

  if (transform->parsed()) {
    job.command = Command::Transform;
    kind_option(to);
    if (!from.empty()) kind_option(from);
    record(job, "from", from);
    record(job, "to", to);
  } else if (pipeline->parsed()) {
    job.command = Command::Pipeline;
    record(job, "check-integrality", check_integrality ? "true" : "false");
  } else if (matrix->parsed()) {
    job.command = Command::Matrix;
    if (method != "closed" && kind != "C") throw UsageError("--method applies only to --kind C");
    record(job, "n", n);
    record(job, "w", w);
    record(job, "kind", kind);
    record(job, "method", method);
  } else if (congruences->parsed()) {
    job.command = Command::VerifyCongruences;
    std::stringstream list(primes);
    for (std::string item; std::getline(list, item, ',');) {
      std::size_t used = 0;
      long long p = 0;
      try {
        p = std::stoll(item, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used == 0 || used != item.size() || !is_prime(std::max(p, 1LL)))
        throw UsageError("--primes must list primes, got '" + item + "'");
    }
    if (w_max == 0) w_max = 8;
    if (w_min > w_max) throw UsageError("--w-min exceeds --w-max");
    record(job, "lemma", lemma);
    record(job, "primes", primes);
    record(job, "alpha-max", alpha_max);
    record(job, "ab-max", ab_max);
    record(job, "k-max", k_max);
    record(job, "a-max", a_max);
    record(job, "s-max", s_max);
    record(job, "w-min", w_min);
    record(job, "w-max", w_max);
  } else if (integrality->parsed()) {
    job.command = Command::VerifyIntegrality;
    if (n == 0) n = 60;
    if (w_max == 0) w_max = 12;
    if (w_min > w_max) throw UsageError("--w-min exceeds --w-max");
    record(job, "n", n);
    record(job, "w-min", w_min);
    record(job, "w-max", w_max);
  } else if (dt->parsed()) {
    job.command = Command::DTTable;
    record(job, "n-max", n_max);
    record(job, "m-max", m_max);
  }
  return job;
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  switch (job.command) {
    case Command::Transform: return run_transform(job, out, err);
    case Command::Pipeline: return run_pipeline(job, out, err);
    case Command::Matrix: return run_matrix(job, out, err);
    case Command::VerifyCongruences: return run_verify_congruences(job, out, err);
    case Command::VerifyIntegrality: return run_verify_integrality(job, out, err);
    case Command::DTTable: return run_dt_table(job, out, err);
  }
  throw UsageError("unknown command");
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  JobSpec job;
  try {
    job = parse_args(argv);
  } catch (const HelpRequested& help) {
    out << help.what();
    return kSuccess;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }
  try {
    return run(job, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const KindMismatchError& e) {
    err << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIoFailure;
  }
}

}  // namespace relbps::cli

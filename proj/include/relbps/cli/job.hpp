#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace relbps::cli {

enum class Command { Transform, Pipeline, Matrix, VerifyCongruences, VerifyIntegrality, DTTable };

std::string command_name(Command command);

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kBadInput = 3,
  kIoFailure = 4,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_args when --help was requested; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A validated invocation. Parameters hold every option of the command with
/// defaults filled in, as the strings the user would have typed.
struct JobSpec {
  Command command = Command::Transform;
  std::map<std::string, std::string> parameters;
  std::optional<std::string> input;
  std::optional<std::string> output;
  unsigned jobs = 1;

  std::int64_t integer(const std::string& name) const;
  const std::string& text(const std::string& name) const;

  /// The job as recorded in reports. Excludes `jobs`, which never affects output.
  nlohmann::json to_json() const;
};

/// argv[0] is the program name.
JobSpec parse_args(const std::vector<std::string>& argv);

/// Executes a job. Primary results go to the --out file or `out`; diagnostics
/// go to `err`. Returns the exit code.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

/// Full command-line entry point: parse, run, and map exceptions to exit codes.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace relbps::cli

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jumploci/groebner.hpp"
#include "jumploci/io.hpp"
#include "jumploci/points.hpp"

namespace jumploci {

struct CommandRequest {
  std::string command;
  /// Input documents by role: "cga", "complex", "nu", "presentation", "group".
  std::map<std::string, std::string> inputs;
  std::optional<std::int64_t> q;  // point field F_{q^ext}
  int ext = 1;
  long i = 1, d = 1;
  std::optional<long> k;
  bool torus = false;
  std::uint64_t seed = 0;
  std::uint64_t trials = 200;
  std::vector<std::size_t> shape{1, 2, 1};
  bool compare_v = false;
  bool timing = false;
  GroebnerLimits limits;
  EnumerationLimits enumeration;
};

const std::vector<std::string>& command_names();

enum ExitCode : int { exit_ok = 0, exit_verdict = 1, exit_input = 2, exit_scope = 3 };

struct Report {
  int exit_code = exit_ok;
  Json document;
};

/// Runs one command. Never throws for library errors: they are reported in
/// the document with a nonzero exit code.
Report run(const CommandRequest& request);

/// "text" or "structured" (a JSON document).
std::string render(const Report& report, const std::string& format);

}  // namespace jumploci

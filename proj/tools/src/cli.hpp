#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace graphconfig::cli {

enum class Command { analyze, sweep, bound, corolla, verify };
enum class Format { json, table };

struct RunConfig {
  Command command = Command::analyze;
  std::string graph_path;
  std::size_t n = 2;
  std::optional<std::string> r;
  std::optional<std::string> ray;
  Format format = Format::json;
  std::optional<std::string> mesh;
  bool include_empty = false;
  long edges = 1;
  long dim = 1;
  int k = 0;
  std::optional<std::string> output;
};

/// Runs one command. Exit status: 0 success, 1 invalid input, 2 internal
/// invariant violation (or an oracle disagreement in `verify`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace graphconfig::cli

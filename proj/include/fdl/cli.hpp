#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fdl::cli {

enum class OutputFormat { Table, Json, Csv };

struct RunConfig {
  std::uint32_t precision_bits = 96;
  std::uint64_t prime_limit = 10000;
  std::optional<std::string> cache_dir;
  OutputFormat format = OutputFormat::Table;
  unsigned threads = 0;  // 0 = one per hardware thread

  /// Throws std::invalid_argument unless precision_bits >= 64 and prime_limit >= 2.
  void validate() const;
};

/// Environment lookup; returns nullopt for unset variables.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads the process environment.
EnvLookup process_env();

/// Runs one command line (args excludes the program name). Writes the
/// report to `out` (or to --out FILE) and diagnostics to `err`.
/// Returns 0 on success, 2 on a usage error, 1 on an internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env());

int run(int argc, const char* const* argv);

}  // namespace fdl::cli

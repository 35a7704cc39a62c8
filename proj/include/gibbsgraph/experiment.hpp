#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gibbsgraph {

/// Invalid experiment configuration (missing/unknown/ill-typed keys,
/// out-of-range values).  The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// `key = value` experiment configuration.  '#' starts a comment (whole line
/// or trailing), blank lines are ignored, keys are snake_case.  Accessors
/// validate types and ranges and raise ConfigError with the key name; the
/// class also tracks which keys were consumed so a command can reject
/// unknown ones (typo protection).
class KeyValueConfig {
  public:
    static KeyValueConfig parse(std::istream& in, const std::string& source_name);
    static KeyValueConfig parse_file(const std::string& path);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key) const;
    long get_long(const std::string& key, long fallback) const;
    std::uint64_t get_u64(const std::string& key) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;

    /// Overrides/inserts a value (used for --seed/--output flags).
    void set(const std::string& key, const std::string& value);

    /// Throws ConfigError naming any key that was never read.
    void reject_unused() const;

    /// "key=value\n" lines, sorted by key - the canonical form that gets
    /// fingerprinted into output manifests.
    std::string canonical() const;

    const std::string& source() const { return source_; }

  private:
    const std::string& raw(const std::string& key) const;

    std::string source_;
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

/// Executes one CLI command: reads inputs named in `config`, writes the
/// output file(s), prints a one-line summary to `out`.  Throws ConfigError
/// for bad configuration (exit 2) and other std::exceptions for runtime
/// failures (exit 3).
void run_command(const std::string& command, KeyValueConfig& config, std::ostream& out);

/// All command names, for --help and validation.
const std::vector<std::string>& command_names();

/// Full CLI entry point (argument parsing + error-to-exit-code mapping);
/// the `gibbsgraph` binary is a thin wrapper so tests can call this
/// directly.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "gibbsgraph <version>".
std::string version_string();

} // namespace gibbsgraph

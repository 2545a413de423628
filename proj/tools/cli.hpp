#ifndef PARLIKE_TOOLS_CLI_HPP
#define PARLIKE_TOOLS_CLI_HPP

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace parlike::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Recognized configuration keys.
const std::vector<std::string>& known_keys();

// `key = value` per line, `#` starts a comment. Unknown keys, missing `=`
// and repeated keys raise ConfigError.
class JobConfig {
public:
    static JobConfig parse(const std::string& text);
    static JobConfig load(const std::string& path);

    void set(const std::string& key, const std::string& value);  // validates the key
    // Keys of `over` replace ours.
    void merge(const JobConfig& over);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string str(const std::string& key, const std::string& fallback) const;
    double real(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;

private:
    std::map<std::string, std::string> values_;
};

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kNumericalError = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace parlike::cli

#endif  // PARLIKE_TOOLS_CLI_HPP

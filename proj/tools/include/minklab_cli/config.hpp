#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace minklab::cli {

/// Flat key=value text.  `[name]` lines prefix the keys that follow with
/// "name."; `#` starts a comment.  Every getter throws ConfigError naming
/// the key on a missing or malformed value.
class Config {
public:
    static Config parse(std::string_view text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    /// Comma- or space-separated numbers.
    std::vector<double> get_doubles(const std::string& key) const;

    /// Adds or replaces a value (command-line overrides).
    void set(const std::string& key, const std::string& value);

    /// Throws ConfigError on the first key never read by a getter.
    void require_all_used() const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

/// "tag:k=v,k=v" split into its tag and parameters.
struct Tagged {
    std::string tag;
    std::map<std::string, std::string> params;
};
Tagged parse_tagged(const std::string& field, const std::string& value);

double parse_number(const std::string& field, const std::string& text);

} // namespace minklab::cli

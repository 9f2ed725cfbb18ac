#include "minklab_cli/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "minklab/error.hpp"

namespace minklab::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

double parse_number(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    const auto slash = t.find('/');
    if (slash != std::string::npos)
        return parse_number(field, t.substr(0, slash)) / parse_number(field, t.substr(slash + 1));
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw ConfigError(field, "expected a number, got '" + text + "'");
    return v;
}

Config Config::parse(std::string_view text) {
    Config c;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) throw ConfigError(where, "malformed section header '" + t + "'");
            section = trim(std::string_view(t).substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError(where, "expected key = value, got '" + t + "'");
        std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key.empty()) throw ConfigError(where, "empty key");
        if (!section.empty()) key = section + "." + key;
        if (c.values_.count(key)) throw ConfigError(key, "duplicate key");
        c.values_[key] = value;
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("--config", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Config::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "missing required key");
    used_.insert(key);
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const { return parse_number(key, get_string(key)); }

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long Config::get_int(const std::string& key) const {
    const double v = get_double(key);
    if (v != std::floor(v) || std::abs(v) > 1e15) throw ConfigError(key, "expected an integer");
    return static_cast<long>(v);
}

long Config::get_int(const std::string& key, long fallback) const { return has(key) ? get_int(key) : fallback; }

bool Config::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key, "expected a boolean, got '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
    std::string s = get_string(key);
    for (char& ch : s)
        if (ch == ',') ch = ' ';
    std::istringstream in(s);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_number(key, tok));
    if (out.empty()) throw ConfigError(key, "expected at least one number");
    return out;
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

void Config::require_all_used() const {
    for (const auto& [k, v] : values_)
        if (!used_.count(k)) throw ConfigError(k, "unknown key");
}

Tagged parse_tagged(const std::string& field, const std::string& value) {
    Tagged t;
    const auto colon = value.find(':');
    t.tag = trim(value.substr(0, colon));
    if (t.tag.empty()) throw ConfigError(field, "missing tag in '" + value + "'");
    if (colon == std::string::npos) return t;
    std::istringstream in(value.substr(colon + 1));
    std::string item;
    while (std::getline(in, item, ',')) {
        const std::string it = trim(item);
        if (it.empty()) continue;
        const auto eq = it.find('=');
        if (eq == std::string::npos) throw ConfigError(field, "expected k=v in '" + it + "'");
        t.params[trim(it.substr(0, eq))] = trim(it.substr(eq + 1));
    }
    return t;
}

} // namespace minklab::cli

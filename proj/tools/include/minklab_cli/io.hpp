#pragma once

#include <cstdint>
#include <exception>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "minklab/cantor.hpp"
#include "minklab/curve.hpp"
#include "minklab_cli/config.hpp"

namespace minklab::cli {

using Json = nlohmann::ordered_json;

/// Round-trip decimal ("%.17g"); non-finite values print as nan / inf / -inf.
std::string fmt(double v);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

/// CSV text with a header row; every cell goes through fmt().
class Csv {
public:
    explicit Csv(std::vector<std::string> header);
    void row(const std::vector<double>& values);
    std::string str() const { return text_; }

private:
    std::size_t cols_;
    std::string text_;
};

/// Artifacts of one run, written under `dir` and recorded for the manifest.
class RunOutput {
public:
    explicit RunOutput(std::string dir);
    void write(const std::string& name, const std::string& content);
    void write_json(const std::string& name, const Json& j);
    /// manifest.json: subcommand, config echo, flags and artifact hashes.
    void write_manifest(const std::string& subcommand, const Config& cfg,
                        const std::map<std::string, std::string>& flags);
    const std::string& dir() const { return dir_; }

private:
    struct Artifact {
        std::string name;
        std::size_t bytes;
        std::uint64_t hash;
    };
    std::string dir_;
    std::vector<Artifact> artifacts_;
};

/// {"error": {"kind", "message", "field"?, "index"?}}.
Json error_json(const std::exception& e);

Json to_json(const IntervalSet& s);
/// Exact endpoints as "p/q" strings plus their double values.
Json to_json(const ExactIntervalSet& s);
Json to_json(const ExactCantorSpec& s);
Json curve_json(const CurveAssembly& a);
std::string support_csv(const SupportFn& s);

} // namespace minklab::cli

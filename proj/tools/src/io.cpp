#include "minklab_cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "minklab/error.hpp"

namespace minklab::cli {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

Csv::Csv(std::vector<std::string> header) : cols_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
    text_ += '\n';
}

void Csv::row(const std::vector<double>& values) {
    if (values.size() != cols_) throw ArgumentError("csv row has the wrong number of cells");
    for (std::size_t i = 0; i < values.size(); ++i) text_ += (i ? "," : "") + fmt(values[i]);
    text_ += '\n';
}

RunOutput::RunOutput(std::string dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError("--out", "cannot create '" + dir_ + "': " + ec.message());
}

void RunOutput::write(const std::string& name, const std::string& content) {
    const std::filesystem::path p = std::filesystem::path(dir_) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("--out", "cannot write '" + p.string() + "'");
    f << content;
    artifacts_.push_back({name, content.size(), fnv1a64(content)});
}

void RunOutput::write_json(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }

void RunOutput::write_manifest(const std::string& subcommand, const Config& cfg,
                               const std::map<std::string, std::string>& flags) {
    Json m;
    m["subcommand"] = subcommand;
    m["config"] = Json::object();
    for (const auto& [k, v] : cfg.entries()) m["config"][k] = v;
    m["flags"] = Json::object();
    for (const auto& [k, v] : flags) m["flags"][k] = v;
    m["artifacts"] = Json::array();
    for (const Artifact& a : artifacts_)
        m["artifacts"].push_back({{"file", a.name}, {"bytes", a.bytes}, {"fnv1a64", hex64(a.hash)}});
    const std::string text = m.dump(2) + "\n";
    std::ofstream f(std::filesystem::path(dir_) / "manifest.json", std::ios::binary);
    f << text;
}

Json error_json(const std::exception& e) {
    Json err;
    if (const auto* me = dynamic_cast<const Error*>(&e)) {
        err["kind"] = me->kind();
    } else {
        err["kind"] = "internal";
    }
    err["message"] = e.what();
    if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) err["field"] = ce->field();
    if (const auto* he = dynamic_cast<const HypothesisError*>(&e)) err["index"] = he->index();
    return Json{{"error", err}};
}

Json to_json(const IntervalSet& s) {
    Json j = Json::array();
    for (const auto& iv : s.intervals()) j.push_back({iv.lo, iv.hi});
    return j;
}

namespace {

std::string rat(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace

Json to_json(const ExactIntervalSet& s) {
    Json j = Json::array();
    for (const auto& iv : s.intervals()) j.push_back({rat(iv.lo), rat(iv.hi)});
    return j;
}

Json to_json(const ExactCantorSpec& s) {
    Json r = Json::array();
    for (const Rational& q : s.ratios) r.push_back(rat(q));
    return {{"base", {rat(s.base_lo), rat(s.base_hi)}}, {"ratios", r}, {"depth", s.depth}};
}

Json curve_json(const CurveAssembly& a) {
    const ConvexCurve& c = a.curve;
    Json j;
    Json verts = Json::array();
    for (const Vec2& v : c.vertices) verts.push_back({v.x, v.y});
    j["symmetry_order"] = c.symmetry_order;
    j["n"] = c.n;
    j["cantor_spec"] = to_json(a.cantor);
    j["cantor_spec"]["unit"] = "pi/n";
    j["total_turning"] = c.total_turning;
    j["closure_gap"] = c.closure_gap;
    j["vertices"] = verts;
    j["gauss_angle"] = c.gauss_angle;
    j["curvature"] = c.curvature;
    j["flat_marks"] = c.flat_marks;
    j["zero_set"] = {{"depth", a.zeros.depth}, {"Z_units", to_json(a.zeros.Z_units)}, {"E", a.zeros.E}};
    return j;
}

std::string support_csv(const SupportFn& s) {
    Csv csv({"theta", "h", "dh", "d2h"});
    for (std::size_t i = 0; i < s.size(); ++i) csv.row({s.theta[i], s.h[i], s.dh[i], s.d2h[i]});
    return csv.str();
}

} // namespace minklab::cli

#include "minklab_cli/specs.hpp"

#include <cmath>
#include <sstream>

#include "minklab/error.hpp"
#include "minklab/hinge.hpp"

namespace minklab::cli {

namespace {

double param(const std::string& field, const Tagged& t, const std::string& key) {
    auto it = t.params.find(key);
    if (it == t.params.end()) throw ConfigError(field, "'" + t.tag + "' needs parameter " + key);
    return parse_number(field, it->second);
}

double param(const std::string& field, const Tagged& t, const std::string& key, double fallback) {
    return t.params.count(key) ? param(field, t, key) : fallback;
}

void allow_only(const std::string& field, const Tagged& t, std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : t.params) {
        bool ok = false;
        for (const char* a : keys) ok = ok || k == a;
        if (!ok) throw ConfigError(field, "'" + t.tag + "' has no parameter " + k);
    }
}

} // namespace

SmoothFn make_function(const std::string& field, const std::string& spec) {
    const Tagged t = parse_tagged(field, spec);
    if (t.tag == "poly") {
        allow_only(field, t, {"coeffs", "lo", "hi"});
        auto it = t.params.find("coeffs");
        if (it == t.params.end()) throw ConfigError(field, "poly needs coeffs");
        std::istringstream in(it->second);
        std::vector<double> c;
        std::string tok;
        while (in >> tok) c.push_back(parse_number(field, tok));
        if (c.empty()) throw ConfigError(field, "poly needs at least one coefficient");
        const double lo = param(field, t, "lo"), hi = param(field, t, "hi");
        if (!(lo < hi)) throw ConfigError(field, "poly domain is empty");
        return polynomial(c, {lo, hi});
    }
    if (t.tag == "exp_flat") {
        allow_only(field, t, {"A", "s", "tau"});
        const double A = param(field, t, "A", 20.0), s = param(field, t, "s", 1e-6), tau = param(field, t, "tau", 1.0);
        if (!(A > 0.0 && s > 0.0 && tau > 0.0)) throw ConfigError(field, "exp_flat parameters must be positive");
        return exp_flat_profile(A, s, tau);
    }
    throw ConfigError(field, "unknown function tag '" + t.tag + "'");
}

Sequence make_sequence(const std::string& field, const std::string& spec) {
    const Tagged t = parse_tagged(field, spec);
    if (t.tag == "gauss_exp") {
        allow_only(field, t, {"c0", "c1", "c2"});
        GaussExp g{param(field, t, "c0", 1.0), param(field, t, "c1", 1.0), param(field, t, "c2", 0.0)};
        if (!(g.c0 > 0.0)) throw ConfigError(field, "gauss_exp needs c0 > 0");
        return g;
    }
    if (t.tag == "geometric") {
        allow_only(field, t, {"c", "r"});
        const double c = param(field, t, "c"), r = param(field, t, "r");
        if (!(c > 0.0 && r > 0.0)) throw ConfigError(field, "geometric needs c > 0 and r > 0");
        return [c, r](int k) { return c * std::pow(r, k); };
    }
    throw ConfigError(field, "unknown sequence tag '" + t.tag + "'");
}

ProfileFamily make_family(const std::string& field, const std::string& spec, const Sequence& a) {
    if (spec == "quadratic") {
        if (!a) throw ConfigError(field, "quadratic family needs the a sequence");
        return quadratic_family(a);
    }
    if (spec == "quartic") return quartic_family();
    throw ConfigError(field, "unknown profile family '" + spec + "'");
}

} // namespace minklab::cli

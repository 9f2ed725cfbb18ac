#include "minklab/cantor.hpp"

#include <cstdlib>
#include <numeric>

namespace minklab {

Rational parse_rational(const std::string& s) {
    auto fail = [&] { return ArgumentError("cannot parse rational '" + s + "'"); };
    if (s.empty()) throw fail();
    const auto slash = s.find('/');
    auto parse_int = [&](const std::string& t) {
        char* end = nullptr;
        const long long v = std::strtoll(t.c_str(), &end, 10);
        if (t.empty() || *end != '\0') throw fail();
        return static_cast<std::int64_t>(v);
    };
    if (slash != std::string::npos) {
        const std::int64_t q = parse_int(s.substr(slash + 1));
        if (q == 0) throw fail();
        return Rational(parse_int(s.substr(0, slash)), q);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(parse_int(s));
    const std::string frac = s.substr(dot + 1);
    if (frac.size() > 15) throw fail();
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string whole = s.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    const std::int64_t w = whole.empty() || whole == "-" || whole == "+" ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    const std::int64_t mag = (w < 0 ? -w : w) * den + f;
    return Rational(neg ? -mag : mag, den);
}

namespace detail {

std::int64_t common_denominator(const ExactIntervalSet& A, const ExactIntervalSet& B) {
    constexpr std::int64_t kLimit = std::int64_t{1} << 50;
    std::int64_t L = 1;
    Rational biggest(0);
    for (const ExactIntervalSet* S : {&A, &B}) {
        for (const auto& iv : S->intervals()) {
            for (const Rational& r : {iv.lo, iv.hi}) {
                const std::int64_t d = r.denominator();
                const std::int64_t g = std::gcd(L, d);
                if (L / g > kLimit / d) return 0;
                L = L / g * d;
                const Rational a = r < Rational(0) ? -r : r;
                if (a > biggest) biggest = a;
            }
        }
    }
    // sums of two endpoints times L must stay below 2^62
    if (biggest > Rational(std::int64_t{1} << 10) || L > (std::int64_t{1} << 50)) return 0;
    return L;
}

} // namespace detail

IntervalSet to_double_set(const ExactIntervalSet& s) {
    std::vector<BasicInterval<double>> v;
    for (const auto& i : s.intervals()) v.push_back({to_double(i.lo), to_double(i.hi)});
    return IntervalSet(std::move(v), s.depth());
}

} // namespace minklab

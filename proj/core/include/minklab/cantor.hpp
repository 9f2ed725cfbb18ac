#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/rational.hpp>

#include "minklab/error.hpp"

namespace minklab {

using Rational = boost::rational<std::int64_t>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return boost::rational_cast<double>(x); }

inline std::int64_t floor_div(double x, double p) { return static_cast<std::int64_t>(std::floor(x / p)); }
inline std::int64_t floor_div(const Rational& x, const Rational& p) {
    const Rational q = x / p;
    std::int64_t n = q.numerator() / q.denominator();
    if (q.numerator() % q.denominator() != 0 && q.numerator() < 0) --n;
    return n;
}

template <class T>
struct BasicInterval {
    T lo, hi;
};

/// Merge slack: intervals closer than this are joined.  Zero for exact types.
template <class T>
inline T merge_tolerance() { return T(0); }
template <>
inline double merge_tolerance<double>() { return 1e-12; }

/// Finite union of disjoint closed intervals, kept sorted and merged.
template <class T>
class BasicIntervalSet {
public:
    using Iv = BasicInterval<T>;

    BasicIntervalSet() = default;
    explicit BasicIntervalSet(std::vector<Iv> iv, int depth = 0) : iv_(std::move(iv)), depth_(depth) {
        normalize();
    }

    const std::vector<Iv>& intervals() const { return iv_; }
    std::size_t size() const { return iv_.size(); }
    bool empty() const { return iv_.empty(); }
    int depth() const { return depth_; }
    void set_depth(int d) { depth_ = d; }

    T total_length() const {
        T s(0);
        for (const auto& i : iv_) s += i.hi - i.lo;
        return s;
    }

    bool contains(const T& x) const {
        auto it = std::upper_bound(iv_.begin(), iv_.end(), x, [](const T& v, const Iv& i) { return v < i.lo; });
        if (it == iv_.begin()) return false;
        --it;
        return x <= it->hi;
    }

    bool operator==(const BasicIntervalSet& o) const {
        if (iv_.size() != o.iv_.size()) return false;
        for (std::size_t i = 0; i < iv_.size(); ++i)
            if (!(iv_[i].lo == o.iv_[i].lo && iv_[i].hi == o.iv_[i].hi)) return false;
        return true;
    }

    /// Sorted-input union without re-sorting.
    static BasicIntervalSet merge_sorted(const std::vector<Iv>& a, const std::vector<Iv>& b) {
        BasicIntervalSet r;
        r.iv_.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        const T tol = merge_tolerance<T>();
        while (i < a.size() || j < b.size()) {
            const Iv& next = (j >= b.size() || (i < a.size() && a[i].lo < b[j].lo)) ? a[i++] : b[j++];
            if (!r.iv_.empty() && next.lo <= r.iv_.back().hi + tol) {
                if (next.hi > r.iv_.back().hi) r.iv_.back().hi = next.hi;
            } else {
                r.iv_.push_back(next);
            }
        }
        return r;
    }

private:
    void normalize() {
        for (const auto& i : iv_)
            if (i.hi < i.lo) throw ArgumentError("interval with hi < lo");
        std::sort(iv_.begin(), iv_.end(), [](const Iv& a, const Iv& b) { return a.lo < b.lo; });
        std::vector<Iv> out;
        const T tol = merge_tolerance<T>();
        for (const auto& i : iv_) {
            if (!out.empty() && i.lo <= out.back().hi + tol) {
                if (i.hi > out.back().hi) out.back().hi = i.hi;
            } else {
                out.push_back(i);
            }
        }
        iv_ = std::move(out);
    }

    std::vector<Iv> iv_;
    int depth_ = 0;
};

using IntervalSet = BasicIntervalSet<double>;
using ExactIntervalSet = BasicIntervalSet<Rational>;

/// Middle-portion removal: at step i each surviving interval loses the
/// middle fraction ratios[i] (the last ratio repeats beyond the list).
template <class T>
struct BasicCantorSpec {
    T base_lo = T(0), base_hi = T(1);
    std::vector<T> ratios;
    int depth = 0;

    T ratio(int step) const {
        if (ratios.empty()) throw ArgumentError("cantor spec needs at least one removal ratio");
        return ratios[static_cast<std::size_t>(std::min<int>(step, static_cast<int>(ratios.size()) - 1))];
    }
    /// (1 - ratio) / 2: length of each new interval relative to its parent.
    T remaining(int step) const { return (T(1) - ratio(step)) / T(2); }
};

using CantorSpec = BasicCantorSpec<double>;
using ExactCantorSpec = BasicCantorSpec<Rational>;

constexpr int kMaxCantorDepth = 24;

template <class T>
BasicIntervalSet<T> build_cantor(const BasicCantorSpec<T>& spec) {
    if (spec.depth < 0) throw ArgumentError("negative cantor depth");
    if (spec.depth > kMaxCantorDepth)
        throw ResourceError("cantor depth " + std::to_string(spec.depth) + " exceeds " +
                            std::to_string(kMaxCantorDepth));
    if (!(spec.base_lo < spec.base_hi)) throw ArgumentError("cantor base interval is empty");
    for (int s = 0; s < spec.depth; ++s) {
        const T r = spec.ratio(s);
        if (!(r > T(0) && r < T(1))) throw ArgumentError("cantor removal ratio outside (0, 1)");
    }
    std::vector<BasicInterval<T>> cur{{spec.base_lo, spec.base_hi}};
    for (int s = 0; s < spec.depth; ++s) {
        const T keep = spec.remaining(s);
        std::vector<BasicInterval<T>> next;
        next.reserve(cur.size() * 2);
        for (const auto& i : cur) {
            const T len = (i.hi - i.lo) * keep;
            next.push_back({i.lo, i.lo + len});
            next.push_back({i.hi - len, i.hi});
        }
        cur = std::move(next);
    }
    return BasicIntervalSet<T>(std::move(cur), spec.depth);
}

template <class T>
BasicIntervalSet<T> translate(const BasicIntervalSet<T>& a, const T& s) {
    std::vector<BasicInterval<T>> v;
    v.reserve(a.size());
    for (const auto& i : a.intervals()) v.push_back({i.lo + s, i.hi + s});
    return BasicIntervalSet<T>(std::move(v), a.depth());
}

template <class T>
BasicIntervalSet<T> reflect(const BasicIntervalSet<T>& a) {
    std::vector<BasicInterval<T>> v;
    v.reserve(a.size());
    for (auto it = a.intervals().rbegin(); it != a.intervals().rend(); ++it) v.push_back({-it->hi, -it->lo});
    return BasicIntervalSet<T>(std::move(v), a.depth());
}

template <class T>
BasicIntervalSet<T> unite(const BasicIntervalSet<T>& a, const BasicIntervalSet<T>& b) {
    auto r = BasicIntervalSet<T>::merge_sorted(a.intervals(), b.intervals());
    r.set_depth(std::max(a.depth(), b.depth()));
    return r;
}

/// Exact Minkowski sum.  The translates a + B (each already sorted) are
/// merged pairwise in a balanced tree, so the cost is O(|A||B| log |A|).
template <class T>
BasicIntervalSet<T> sum_sets_direct(const BasicIntervalSet<T>& A, const BasicIntervalSet<T>& B) {
    std::vector<BasicIntervalSet<T>> level;
    level.reserve(A.size());
    for (const auto& a : A.intervals()) {
        std::vector<BasicInterval<T>> shifted;
        shifted.reserve(B.size());
        for (const auto& b : B.intervals()) shifted.push_back({a.lo + b.lo, a.hi + b.hi});
        level.push_back(BasicIntervalSet<T>::merge_sorted(shifted, {}));
    }
    while (level.size() > 1) {
        std::vector<BasicIntervalSet<T>> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(BasicIntervalSet<T>::merge_sorted(level[i].intervals(), level[i + 1].intervals()));
        if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    BasicIntervalSet<T> out = level.empty() ? BasicIntervalSet<T>() : std::move(level.front());
    out.set_depth(std::max(A.depth(), B.depth()));
    return out;
}

namespace detail {

/// Common denominator of every endpoint, or 0 when it (or the scaled
/// endpoints) would not fit comfortably in 62 bits.
std::int64_t common_denominator(const ExactIntervalSet& A, const ExactIntervalSet& B);

} // namespace detail

template <class T>
BasicIntervalSet<T> sum_sets(const BasicIntervalSet<T>& A, const BasicIntervalSet<T>& B) {
    if constexpr (std::is_same_v<T, Rational>) {
        // same sum on integer numerators over a common denominator
        const std::int64_t L = detail::common_denominator(A, B);
        if (L > 0) {
            auto scale = [L](const ExactIntervalSet& S) {
                std::vector<BasicInterval<std::int64_t>> v;
                v.reserve(S.size());
                for (const auto& iv : S.intervals())
                    v.push_back({iv.lo.numerator() * (L / iv.lo.denominator()), iv.hi.numerator() * (L / iv.hi.denominator())});
                return BasicIntervalSet<std::int64_t>(std::move(v), S.depth());
            };
            const auto R = sum_sets_direct(scale(A), scale(B));
            std::vector<BasicInterval<Rational>> v;
            v.reserve(R.size());
            for (const auto& iv : R.intervals()) v.push_back({Rational(iv.lo, L), Rational(iv.hi, L)});
            return BasicIntervalSet<Rational>(std::move(v), R.depth());
        }
    }
    return sum_sets_direct(A, B);
}

template <class T>
BasicIntervalSet<T> difference_set(const BasicIntervalSet<T>& A, const BasicIntervalSet<T>& B) {
    return sum_sets(A, reflect(B));
}

template <class T>
struct CoverReport {
    bool covers = false;
    std::vector<BasicInterval<T>> gaps; ///< open gaps inside the target
};

template <class T>
CoverReport<T> covers(const BasicIntervalSet<T>& A, const BasicInterval<T>& target) {
    CoverReport<T> rep;
    T reach = target.lo;
    bool started = false;
    for (const auto& i : A.intervals()) {
        if (i.hi < target.lo) continue;
        if (i.lo > target.hi) break;
        if (i.lo > reach || (!started && i.lo > target.lo)) rep.gaps.push_back({reach, i.lo});
        started = true;
        if (i.hi > reach) reach = i.hi;
        if (reach >= target.hi) break;
    }
    if (reach < target.hi || !started) rep.gaps.push_back({reach, target.hi});
    rep.covers = rep.gaps.empty();
    return rep;
}

/// Reduce onto [0, period]: intervals longer than a period become the
/// whole circle, others are split at the period boundary.  A closed set
/// touching 0 also gets the point `period` and vice versa, so that
/// intersection tests see the seam.
template <class T>
BasicIntervalSet<T> wrap_mod(const BasicIntervalSet<T>& A, const T& period) {
    std::vector<BasicInterval<T>> v;
    for (const auto& i : A.intervals()) {
        if (i.hi - i.lo >= period) {
            v.push_back({T(0), period});
            continue;
        }
        const std::int64_t k = floor_div(i.lo, period);
        const T shift = period * T(k);
        const T lo = i.lo - shift, hi = i.hi - shift;
        if (hi <= period) {
            v.push_back({lo, hi});
            if (lo == T(0)) v.push_back({period, period});
            if (hi == period) v.push_back({T(0), T(0)});
        } else {
            v.push_back({lo, period});
            v.push_back({T(0), hi - period});
        }
    }
    return BasicIntervalSet<T>(std::move(v), A.depth());
}

/// Do two sorted interval unions share a point?
template <class T>
bool intersects(const BasicIntervalSet<T>& A, const BasicIntervalSet<T>& B) {
    std::size_t i = 0, j = 0;
    const auto& a = A.intervals();
    const auto& b = B.intervals();
    while (i < a.size() && j < b.size()) {
        if (a[i].lo <= b[j].hi && b[j].lo <= a[i].hi) return true;
        if (a[i].hi < b[j].hi) ++i; else ++j;
    }
    return false;
}

/// Angles s from `angles` for which (Z_A + s) mod period misses Z_B.
template <class T>
std::vector<T> rotations_avoiding(const BasicIntervalSet<T>& ZA, const BasicIntervalSet<T>& ZB,
                                  const std::vector<T>& angles, const T& period) {
    std::vector<T> out;
    const BasicIntervalSet<T> base = wrap_mod(ZA, period);
    const BasicIntervalSet<T> target = wrap_mod(ZB, period);
    for (const T& s : angles) {
        if (!intersects(wrap_mod(translate(base, s), period), target)) out.push_back(s);
    }
    return out;
}

/// Exact rational from a decimal or "p/q" string.
Rational parse_rational(const std::string& s);

IntervalSet to_double_set(const ExactIntervalSet& s);

} // namespace minklab

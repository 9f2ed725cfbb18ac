#pragma once

#include <array>
#include <cstddef>

namespace minklab {

/// Truncated Taylor series a_0 + a_1 t + ... + a_N t^N about some base
/// point, with a_k = f^(k)(x0) / k!.  All arithmetic truncates at kMaxDegree.
class Jet {
public:
    static constexpr int kMaxDegree = 10;

    Jet() { c_.fill(0.0); }
    explicit Jet(int degree, double constant = 0.0);

    /// Jet of the identity map t -> x0 + t.
    static Jet variable(int degree, double x0);
    /// Build from derivative values f(x0), f'(x0), ..., f^(n)(x0).
    template <class Range>
    static Jet from_derivatives(const Range& d, int degree);

    int degree() const noexcept { return n_; }
    double coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
    double& coeff(int k) { return c_[static_cast<std::size_t>(k)]; }
    double value() const noexcept { return c_[0]; }
    /// k-th derivative at the base point.
    double derivative(int k) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);
    Jet& operator+=(double s) { c_[0] += s; return *this; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

    /// Truncate (or zero-extend) to a new degree.
    Jet with_degree(int degree) const;
    /// Jet of t -> f(s t) given the jet of f: coefficients scaled by s^k.
    Jet scaled(double s) const;
    /// Coefficient-wise derivative: jet of f' (degree drops by one).
    Jet differentiate() const;

private:
    std::array<double, kMaxDegree + 1> c_{};
    int n_ = 0;
};

Jet reciprocal(const Jet& a);
Jet exp(const Jet& a);
Jet pow_int(const Jet& a, int p);

/// outer(inner(t)) where `outer` is expanded about inner.value(): only the
/// non-constant part of `inner` is substituted.
Jet compose(const Jet& outer, const Jet& inner);

/// Series reversion: given y = r(x0 + t) with r'(x0) != 0, returns the jet
/// of t as a function of (y - r(x0)).
Jet revert(const Jet& r);

template <class Range>
Jet Jet::from_derivatives(const Range& d, int degree) {
    Jet j(degree);
    double fact = 1.0;
    int k = 0;
    for (double v : d) {
        if (k > degree) break;
        if (k > 0) fact *= k;
        j.c_[static_cast<std::size_t>(k)] = v / fact;
        ++k;
    }
    return j;
}

} // namespace minklab

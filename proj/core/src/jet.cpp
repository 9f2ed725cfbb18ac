#include "minklab/jet.hpp"

#include <algorithm>
#include <cmath>

#include "minklab/error.hpp"

namespace minklab {

namespace {

int checked_degree(int degree) {
    if (degree < 0 || degree > Jet::kMaxDegree)
        throw CapabilityError("jet degree " + std::to_string(degree) + " out of range");
    return degree;
}

} // namespace

Jet::Jet(int degree, double constant) : n_(checked_degree(degree)) {
    c_.fill(0.0);
    c_[0] = constant;
}

Jet Jet::variable(int degree, double x0) {
    Jet j(degree, x0);
    if (degree >= 1) j.c_[1] = 1.0;
    return j;
}

double Jet::derivative(int k) const {
    if (k < 0 || k > n_) throw CapabilityError("jet derivative order beyond degree");
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return c_[static_cast<std::size_t>(k)] * fact;
}

Jet& Jet::operator+=(const Jet& o) {
    n_ = std::min(n_, o.n_);
    for (int k = 0; k <= n_; ++k) c_[k] += o.c_[k];
    for (int k = n_ + 1; k <= kMaxDegree; ++k) c_[k] = 0.0;
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    n_ = std::min(n_, o.n_);
    for (int k = 0; k <= n_; ++k) c_[k] -= o.c_[k];
    for (int k = n_ + 1; k <= kMaxDegree; ++k) c_[k] = 0.0;
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (int k = 0; k <= n_; ++k) c_[k] *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet r(std::min(a.n_, b.n_));
    for (int k = 0; k <= r.n_; ++k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
        r.c_[k] = s;
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet Jet::with_degree(int degree) const {
    Jet r(degree);
    for (int k = 0; k <= std::min(degree, n_); ++k) r.c_[k] = c_[k];
    return r;
}

Jet Jet::scaled(double s) const {
    Jet r = *this;
    double p = 1.0;
    for (int k = 0; k <= n_; ++k) {
        r.c_[k] *= p;
        p *= s;
    }
    return r;
}

Jet Jet::differentiate() const {
    Jet r(std::max(n_ - 1, 0));
    if (n_ == 0) return r;
    for (int k = 0; k < n_; ++k) r.c_[k] = c_[k + 1] * (k + 1);
    return r;
}

Jet reciprocal(const Jet& a) {
    const double a0 = a.coeff(0);
    if (a0 == 0.0) throw ArgumentError("reciprocal of a jet with zero constant term");
    Jet r(a.degree());
    r.coeff(0) = 1.0 / a0;
    for (int k = 1; k <= a.degree(); ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += a.coeff(i) * r.coeff(k - i);
        r.coeff(k) = -s / a0;
    }
    return r;
}

Jet exp(const Jet& a) {
    Jet r(a.degree());
    r.coeff(0) = std::exp(a.coeff(0));
    for (int k = 1; k <= a.degree(); ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += i * a.coeff(i) * r.coeff(k - i);
        r.coeff(k) = s / k;
    }
    return r;
}

Jet pow_int(const Jet& a, int p) {
    if (p < 0) return reciprocal(pow_int(a, -p));
    Jet r(a.degree(), 1.0);
    Jet base = a;
    while (p > 0) {
        if (p & 1) r = r * base;
        base = base * base;
        p >>= 1;
    }
    return r;
}

Jet compose(const Jet& outer, const Jet& inner) {
    const int n = std::min(outer.degree(), inner.degree());
    Jet u = inner.with_degree(n);
    u.coeff(0) = 0.0;
    Jet r(n, outer.coeff(n));
    for (int k = n - 1; k >= 0; --k) {
        r = r * u;
        r.coeff(0) += outer.coeff(k);
    }
    return r;
}

Jet revert(const Jet& r) {
    const int n = r.degree();
    Jet t(n);
    if (n == 0) return t;
    const double r1 = r.coeff(1);
    if (r1 == 0.0) throw ArgumentError("series reversion needs a nonzero linear term");
    Jet p = r;
    p.coeff(0) = 0.0;
    t.coeff(1) = 1.0 / r1;
    for (int k = 2; k <= n; ++k) {
        Jet q = compose(p, t);
        t.coeff(k) = -q.coeff(k) / r1;
    }
    return t;
}

} // namespace minklab

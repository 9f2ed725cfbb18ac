#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "minklab/jet.hpp"
#include "minklab/numeric.hpp"

namespace minklab {

enum class FnKind { closed_form, grid_integrated };

const char* to_string(FnKind k);

/// A 1-D function on a closed interval with derivatives up to max_order.
/// Cheap to copy; the implementation is shared and immutable.
class SmoothFn {
public:
    class Impl {
    public:
        Impl(Interval dom, int max_order, FnKind kind)
            : domain(dom), max_order(max_order), kind(kind) {}
        virtual ~Impl() = default;
        /// order-th derivative at x; x and order are already validated.
        virtual double value(double x, int order) const = 0;
        /// Taylor jet of the given degree at x.  The default assembles it
        /// from value(); implementations with cheaper jets override.
        virtual Jet jet(double x, int degree) const;

        Interval domain;
        int max_order;
        FnKind kind;
    };

    SmoothFn() = default;
    explicit SmoothFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    double eval(double x, int order = 0) const;
    double operator()(double x) const { return eval(x, 0); }
    Jet jet(double x, int degree) const;

    Interval domain() const { return impl().domain; }
    int max_order() const { return impl().max_order; }
    FnKind kind() const { return impl().kind; }
    bool valid() const noexcept { return static_cast<bool>(impl_); }
    const Impl& impl() const;

private:
    void check(double x, int order) const;
    std::shared_ptr<const Impl> impl_;
};

using JetFn = std::function<Jet(double x, int degree)>;

constexpr int kDefaultMaxOrder = 6;
constexpr std::size_t kDefaultGridPoints = (1u << 14) + 1;

/// Closed-form function given by its jet.
SmoothFn from_jet(Interval dom, JetFn fn, int max_order = kDefaultMaxOrder);

/// c[0] + c[1] x + c[2] x^2 + ...
SmoothFn polynomial(std::vector<double> coeffs, Interval dom, int max_order = kDefaultMaxOrder);

/// Function defined by its second derivative (a jet callable) and the values
/// f(lo), f'(lo); f' and f are cumulative Simpson integrals over `nodes`.
SmoothFn integrate_twice(Interval dom, JetFn second, std::vector<double> nodes, double f_lo,
                         double df_lo, int max_order = kDefaultMaxOrder);

/// Uniform node vector for integrate_twice.
std::vector<double> uniform_nodes(Interval dom, std::size_t n = kDefaultGridPoints);

/// Nodes 0, x0 and then `per_shell` uniform cells in every dyadic shell
/// [x0 2^j, x0 2^{j+1}] up to hi.  Used for functions that are flat near 0.
std::vector<double> dyadic_nodes(double x0, double hi, std::size_t per_shell);

/// Nodes and cumulative tables of a grid-integrated function, or nullptr.
struct GridTables {
    std::vector<double> x, f, df;
};
const GridTables* grid_tables(const SmoothFn& f);

/// x -> f(a x + b), a != 0; domain is the preimage of f's domain.
SmoothFn affine_compose(const SmoothFn& f, double a, double b);
/// x -> s f(x) + c0 + c1 x.
SmoothFn add_linear(const SmoothFn& f, double s, double c0, double c1);
/// Same function on a sub-interval.
SmoothFn restrict_to(const SmoothFn& f, Interval dom);
/// eval(x, j) = f.eval(x, j + order).
SmoothFn derivative_fn(const SmoothFn& f, int order);

struct NormReport {
    int r = 0;
    double value = 0.0;
    Interval interval;
    std::vector<double> per_order;
};

/// sum_{i<=r} max |f^(i)| over `samples` uniform points of the interval.
NormReport cr_norm(const SmoothFn& f, int r, Interval interval, std::size_t samples = 4097);

struct HolderReport {
    int k = 0;
    double alpha = 1.0;
    Interval window;
    double seminorm = 0.0;
    double x = 0.0, y = 0.0;
};

/// Discrete sup of |f^(k)(x) - f^(k)(y)| / |x - y|^alpha over all pairs of an
/// n-point uniform grid on the window.
HolderReport holder_seminorm(const SmoothFn& f, int k, double alpha, Interval window,
                             std::size_t n = 512);

/// Same as holder_seminorm for pre-sampled k-th derivative values.
HolderReport holder_from_samples(const std::vector<double>& xs, const std::vector<double>& v,
                                 double alpha);

/// CSV with columns x, f, d1, ..., d<orders>.
void write_csv(std::ostream& os, const SmoothFn& f, const std::vector<double>& xs, int orders);

} // namespace minklab

#include "minklab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "minklab/bump.hpp"
#include "minklab/numeric.hpp"

namespace minklab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

/// Smoothstep value and slope at u; exactly 0 / 1 outside (0, 1).
std::pair<double, double> step_and_slope(double u) {
    if (u <= 0.0) return {0.0, 0.0};
    if (u >= 1.0) return {1.0, 0.0};
    const Jet s = smoothstep(Jet::variable(1, u));
    return {s.value(), s.coeff(1)};
}

} // namespace

Vec2 rotate(Vec2 v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

const char* to_string(PieceKind k) {
    switch (k) {
    case PieceKind::straight: return "straight";
    case PieceKind::smoothing: return "smoothing";
    case PieceKind::residual: return "residual";
    }
    return "?";
}

double CurvePiece::heading_at(double u) const {
    switch (kind) {
    case PieceKind::straight: return heading0;
    case PieceKind::residual: return heading0 + turn * step_and_slope(u).first;
    case PieceKind::smoothing: {
        const double x = std::clamp(-d + 2.0 * d * u, -d, d);
        return heading0 + std::atan(F.eval(x, 1)) + gamma;
    }
    }
    return heading0;
}

double CurvePiece::curvature_at(double u) const {
    switch (kind) {
    case PieceKind::straight: return 0.0;
    case PieceKind::residual: return turn * step_and_slope(u).second / length;
    case PieceKind::smoothing: {
        const double x = std::clamp(-d + 2.0 * d * u, -d, d);
        const double s = F.eval(x, 1);
        return F.eval(x, 2) / std::pow(1.0 + s * s, 1.5);
    }
    }
    return 0.0;
}

double CurvePiece::speed(double u) const {
    if (kind != PieceKind::smoothing) return length;
    const double x = std::clamp(-d + 2.0 * d * u, -d, d);
    const double s = F.eval(x, 1);
    return 2.0 * d * std::sqrt(1.0 + s * s);
}

double CurvePiece::param_of_heading(double h) const {
    if (kind == PieceKind::straight || turn <= 0.0) return 0.0;
    if (h <= heading0) return 0.0;
    if (h >= heading0 + turn) return 1.0;
    // safeguarded Newton on u; heading'(u) = curvature * speed
    double a = 0.0, b = 1.0, u = (h - heading0) / turn;
    for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
        const double r = heading_at(u) - h;
        if (r == 0.0) return u;
        if (r < 0.0) a = u; else b = u;
        const double slope = curvature_at(u) * speed(u);
        double next = slope > 0.0 ? u - r / slope : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::abs(next - u) < 1e-16) return next;
        u = next;
    }
    return u;
}

namespace {

struct PieceSpec {
    PieceKind kind;
    int level;
};

void expand(int level, int depth, PieceKind leftover, std::vector<PieceSpec>& out) {
    if (level == depth) {
        out.push_back({leftover, depth});
        return;
    }
    expand(level + 1, depth, leftover, out);
    out.push_back({PieceKind::smoothing, level + 1});
    expand(level + 1, depth, leftover, out);
}

/// Position along a residual piece from u0 to u1 (5-point Gauss per step).
Vec2 residual_advance(const CurvePiece& p, double u0, double u1) {
    const double L = p.length;
    const double cx = gauss5([&](double u) { return std::cos(p.heading_at(u)); }, u0, u1);
    const double cy = gauss5([&](double u) { return std::sin(p.heading_at(u)); }, u0, u1);
    return {L * cx, L * cy};
}

} // namespace

Arc build_arc(const std::vector<SmoothingResult>& smoothings, int depth, double leftover_turn,
              std::size_t samples_per_piece) {
    const int M = static_cast<int>(smoothings.size());
    if (depth < 0 || depth > M) throw ArgumentError("arc depth outside the available smoothings");
    if (M == 0) throw ArgumentError("arc needs at least one smoothing");
    if (samples_per_piece < 3) throw ArgumentError("need at least 3 samples per piece");

    // Segment lengths: Lambda_M from the geometric tail, then Lambda_{m-1} = 2 Lambda_m + (l_m + r_m).
    auto lr = [&](int m) { return smoothings[m - 1].hinge_out.l + smoothings[m - 1].hinge_out.r; };
    double q = 1.0 / 3.0;
    if (M >= 2) q = std::min(0.45, smoothings[M - 1].d / smoothings[M - 2].d);
    Arc arc;
    arc.segment_length.assign(M + 1, 0.0);
    arc.segment_length[M] = lr(M) * q / (1.0 - 2.0 * q);
    for (int m = M; m >= 1; --m) arc.segment_length[m - 1] = 2.0 * arc.segment_length[m] + lr(m);
    arc.segment_length.resize(depth + 1);

    std::vector<PieceSpec> specs;
    expand(0, depth, leftover_turn > 0.0 ? PieceKind::residual : PieceKind::straight, specs);

    double heading = 0.0;
    Vec2 pos{};
    const std::size_t S = samples_per_piece;
    for (const PieceSpec& ps : specs) {
        CurvePiece p;
        p.kind = ps.kind;
        p.level = ps.level;
        p.heading0 = heading;
        p.start = pos;
        if (ps.kind == PieceKind::smoothing) {
            const SmoothingResult& s = smoothings[ps.level - 1];
            p.F = s.F;
            p.d = s.d;
            p.gamma = s.gamma;
            p.turn = 2.0 * s.gamma;
            p.length = 0.0;
            const std::size_t cells = 64;
            for (std::size_t i = 0; i < cells; ++i) {
                const double a = -s.d + 2.0 * s.d * static_cast<double>(i) / cells;
                const double b = -s.d + 2.0 * s.d * static_cast<double>(i + 1) / cells;
                p.length += gauss5([&](double x) { const double t = s.F.eval(x, 1); return std::sqrt(1.0 + t * t); }, a, b);
            }
        } else {
            p.length = arc.segment_length[depth];
            p.turn = ps.kind == PieceKind::residual ? leftover_turn : 0.0;
        }

        // samples; the first sample of every piece after the first is shared
        const double F0 = p.kind == PieceKind::smoothing ? p.F(-p.d) : 0.0;
        Vec2 cur = pos;
        for (std::size_t i = 0; i < S; ++i) {
            const double u = static_cast<double>(i) / static_cast<double>(S - 1);
            Vec2 pt;
            switch (p.kind) {
            case PieceKind::straight:
                pt = pos + (u * p.length) * Vec2{std::cos(heading), std::sin(heading)};
                break;
            case PieceKind::residual:
                if (i > 0) cur = cur + residual_advance(p, static_cast<double>(i - 1) / (S - 1), u);
                pt = cur;
                break;
            case PieceKind::smoothing: {
                const double x = std::clamp(-p.d + 2.0 * p.d * u, -p.d, p.d);
                pt = pos + rotate(Vec2{x + p.d, p.F(x) - F0}, heading + p.gamma);
                break;
            }
            }
            if (i == 0 && !arc.samples.points.empty()) continue;
            arc.samples.points.push_back(pt);
            arc.samples.heading.push_back(p.heading_at(u));
            arc.samples.curvature.push_back(p.curvature_at(u));
            arc.samples.piece.push_back(static_cast<int>(arc.pieces.size()));
        }
        p.end = arc.samples.points.back();
        pos = p.end;
        heading += p.turn;
        arc.total_turn += p.turn;
        arc.pieces.push_back(std::move(p));
    }
    return arc;
}

double ConvexCurve::curvature_at_angle(double theta) const {
    if (n <= 0 || arc.pieces.empty()) throw CapabilityError("curve has no analytic arc");
    const double unit = kPi / n;
    theta = wrap_angle(theta);
    double local = theta - unit * std::floor(theta / unit);
    local = std::clamp(local, 0.0, arc.total_turn);
    auto it = std::upper_bound(arc.pieces.begin(), arc.pieces.end(), local,
                               [](double v, const CurvePiece& p) { return v < p.heading0; });
    if (it != arc.pieces.begin()) --it;
    // zero-turn pieces sit on a single angle; any neighbour there is flat at the junction
    return it->curvature_at(it->param_of_heading(local));
}

GaussZeroSet point_zero_set(const std::vector<double>& angles) {
    GaussZeroSet z;
    std::vector<BasicInterval<double>> v;
    for (double a : angles) {
        const double w = wrap_angle(a);
        v.push_back({w, w});
    }
    z.Z = IntervalSet(std::move(v));
    z.E = angles;
    return z;
}

namespace {

/// max over upper's samples (inside lower's x-range) of lower(x) - upper(x),
/// lower interpolated linearly (a chord overestimates a convex graph).
MonotoneStep compare_graphs(const Arc& lower, const Arc& upper, int m) {
    MonotoneStep st;
    st.m = m;
    st.max_violation = -std::numeric_limits<double>::infinity();
    const auto& lp = lower.samples.points;
    std::vector<double> xs(lp.size());
    for (std::size_t i = 0; i < lp.size(); ++i) xs[i] = lp[i].x;
    for (const Vec2& p : upper.samples.points) {
        if (p.x < xs.front() || p.x > xs.back()) continue;
        auto it = std::upper_bound(xs.begin(), xs.end(), p.x);
        std::size_t j = static_cast<std::size_t>(it - xs.begin());
        double yl;
        if (j >= xs.size()) {
            yl = lp.back().y;
        } else {
            const std::size_t i = j - 1;
            const double w = xs[j] > xs[i] ? (p.x - xs[i]) / (xs[j] - xs[i]) : 1.0;
            yl = lp[i].y + w * (lp[j].y - lp[i].y);
        }
        st.max_violation = std::max(st.max_violation, yl - p.y);
        ++st.samples;
    }
    return st;
}

double circular_distance_to_set(double a, const IntervalSet& Z) {
    double best = std::numeric_limits<double>::infinity();
    for (double shift : {0.0, kTwoPi, -kTwoPi}) {
        const double x = a + shift;
        for (const auto& iv : Z.intervals()) {
            if (x >= iv.lo && x <= iv.hi) return 0.0;
            best = std::min({best, std::abs(x - iv.lo), std::abs(x - iv.hi)});
        }
    }
    return best;
}

ExactIntervalSet periodic_copies(const ExactIntervalSet& C, int copies) {
    std::vector<BasicInterval<Rational>> v;
    for (int k = 0; k < copies; ++k)
        for (const auto& iv : C.intervals()) v.push_back({iv.lo + Rational(k), iv.hi + Rational(k)});
    return ExactIntervalSet(std::move(v), C.depth());
}

IntervalSet to_radians(const ExactIntervalSet& Z, int n) {
    std::vector<BasicInterval<double>> v;
    const double unit = kPi / n;
    for (const auto& iv : Z.intervals()) v.push_back({to_double(iv.lo) * unit, to_double(iv.hi) * unit});
    return IntervalSet(std::move(v), Z.depth());
}

} // namespace

CurveAssembly assemble_curve(const std::vector<SmoothingResult>& smoothings, int n, const AssemblyOptions& opt) {
    if (n < 2) throw ArgumentError("symmetry parameter n must be >= 2");
    if (opt.m_max < 1 || static_cast<std::size_t>(opt.m_max) > smoothings.size())
        throw ArgumentError("m_max must lie in [1, number of smoothings]");
    const int M = opt.m_max;
    const double unit = kPi / n;
    const double ratio = to_double(opt.ratio);
    const double keep = 0.5 * (1.0 - ratio);

    // Each step must remove the middle `ratio` of every Gauss interval.
    double used = 0.0;
    for (int m = 1; m <= M; ++m) {
        const double want = ratio * unit * std::pow(keep, m - 1);
        const double got = 2.0 * smoothings[m - 1].gamma;
        if (std::abs(got - want) > 1e-9 * want)
            throw PreconditionError("smoothing " + std::to_string(m) + " turns by " + std::to_string(got) +
                                    ", expected " + std::to_string(want));
        used += std::ldexp(got, m - 1);
    }
    const double leftover = (unit - used) / std::ldexp(1.0, M);
    if (!(leftover > 0.0)) throw ConstructionError("no turning left for the leftover pieces");

    CurveAssembly out;
    AssemblyReport& rep = out.report;

    // Monotone limit: J_0 <= J_1 <= ... <= J_M <= closed arc.
    std::vector<Arc> J;
    for (int m = 0; m <= M; ++m) J.push_back(build_arc(smoothings, m, 0.0, opt.samples_per_piece));
    Arc arc = build_arc(smoothings, M, leftover, opt.samples_per_piece);
    double arc_scale = 0.0;
    for (const Vec2& p : arc.samples.points) arc_scale = std::max(arc_scale, std::hypot(p.x, p.y));
    for (int m = 0; m <= M; ++m) {
        const Arc& up = m < M ? J[m + 1] : arc;
        rep.monotone.push_back(compare_graphs(J[m], up, m));
        if (rep.monotone.back().max_violation > opt.monotone_tol * arc_scale)
            throw AssemblyError("h_" + std::to_string(m) + " <= h_" + std::to_string(m + 1) + " fails by " +
                                std::to_string(rep.monotone.back().max_violation));
    }

    // 2n rotated copies, each starting where the previous one ends.
    ConvexCurve& C = out.curve;
    C.n = n;
    C.symmetry_order = 2 * n;
    Vec2 pos{};
    const auto& pts = arc.samples.points;
    for (int k = 0; k < 2 * n; ++k) {
        const double phi = 0.5 * kPi + k * unit;
        const Vec2 base = pos;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            C.vertices.push_back(base + rotate(pts[i], phi));
            C.gauss_angle.push_back(wrap_angle(arc.samples.heading[i] + k * unit));
            C.curvature.push_back(arc.samples.curvature[i]);
        }
        pos = base + rotate(pts.back(), phi);
    }
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Vec2& v : C.vertices) {
        xmin = std::min(xmin, v.x), xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y), ymax = std::max(ymax, v.y);
    }
    C.scale = std::hypot(xmax - xmin, ymax - ymin);
    C.closure_gap = std::hypot(pos.x, pos.y);
    if (C.closure_gap > opt.closure_tol * C.scale)
        throw SymmetryError("curve fails to close: gap " + std::to_string(C.closure_gap));
    Vec2 centroid{};
    for (const Vec2& v : C.vertices) centroid = centroid + v;
    centroid = (1.0 / static_cast<double>(C.vertices.size())) * centroid;
    for (Vec2& v : C.vertices) v = v - centroid;
    C.total_turning = 2.0 * n * arc.total_turn;
    C.arc = std::move(arc);

    // Polyline checks: exterior angles and convexity.
    const std::size_t V = C.vertices.size();
    double ext = 0.0;
    rep.min_cross_scaled = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < V; ++i) {
        const Vec2 e0 = C.vertices[i] - C.vertices[(i + V - 1) % V];
        const Vec2 e1 = C.vertices[(i + 1) % V] - C.vertices[i];
        ext += std::atan2(cross(e0, e1), dot(e0, e1));
        rep.min_cross_scaled = std::min(rep.min_cross_scaled, cross(e0, e1) / (C.scale * C.scale));
    }
    rep.turning_error = std::max(std::abs(ext - kTwoPi), std::abs(C.total_turning - kTwoPi));

    const double kmax = *std::max_element(C.curvature.begin(), C.curvature.end());
    for (std::size_t i = 0; i < V; ++i)
        if (C.curvature[i] < opt.flat_rel * kmax) C.flat_marks.push_back(i);

    // Zero set at depth M: the Cantor intervals carried by the leftover pieces.
    out.cantor.base_lo = Rational(0);
    out.cantor.base_hi = Rational(1);
    out.cantor.ratios = {opt.ratio};
    out.cantor.depth = M;
    GaussZeroSet& Z = out.zeros;
    Z.n = n;
    Z.depth = M;
    Z.Z_units = periodic_copies(build_cantor(out.cantor), 2 * n);
    Z.Z = to_radians(Z.Z_units, n);
    for (int k = 0; k < 2 * n; ++k)
        for (const CurvePiece& p : C.arc.pieces)
            if (p.kind == PieceKind::smoothing) Z.E.push_back(wrap_angle(p.heading0 + k * unit));
    std::sort(Z.E.begin(), Z.E.end());

    rep.cantor_max_distance = 0.0;
    for (std::size_t i : C.flat_marks)
        rep.cantor_max_distance = std::max(rep.cantor_max_distance, circular_distance_to_set(C.gauss_angle[i], Z.Z));
    {
        std::vector<double> flat_angles;
        for (std::size_t i : C.flat_marks) flat_angles.push_back(C.gauss_angle[i]);
        std::sort(flat_angles.begin(), flat_angles.end());
        rep.cantor_uncovered = 0.0;
        for (const auto& iv : Z.Z.intervals()) {
            double best = std::numeric_limits<double>::infinity();
            for (double shift : {0.0, kTwoPi, -kTwoPi}) {
                auto it = std::lower_bound(flat_angles.begin(), flat_angles.end(), iv.lo + shift);
                if (it != flat_angles.end()) best = std::min(best, *it <= iv.hi + shift ? 0.0 : *it - (iv.hi + shift));
                if (it != flat_angles.begin()) best = std::min(best, (iv.lo + shift) - *std::prev(it));
            }
            rep.cantor_uncovered = std::max(rep.cantor_uncovered, best);
        }
    }

    const double etol = 1e-12 * kTwoPi;
    rep.E_in_Z = std::all_of(Z.E.begin(), Z.E.end(),
                             [&](double e) { return circular_distance_to_set(e, Z.Z) <= etol; });
    rep.E_dense = true;
    for (int j = 0; j < M && rep.E_dense; ++j) {
        ExactCantorSpec s = out.cantor;
        s.depth = j;
        const IntervalSet Cj = to_radians(periodic_copies(build_cantor(s), 2 * n), n);
        for (const auto& iv : Cj.intervals()) {
            auto it = std::lower_bound(Z.E.begin(), Z.E.end(), iv.lo - etol);
            if (it == Z.E.end() || *it > iv.hi + etol) {
                rep.E_dense = false;
                break;
            }
        }
    }

    const Rational period(2 * n);
    const ExactIntervalSet Zw = wrap_mod(Z.Z_units, period);
    rep.Z_reflection_symmetric = wrap_mod(reflect(Z.Z_units), period) == Zw;
    rep.Z_rotation_symmetric = wrap_mod(translate(Z.Z_units, Rational(1)), period) == Zw;

    rep.smoothing_interior_positive = true;
    for (const CurvePiece& p : C.arc.pieces) {
        if (p.kind != PieceKind::smoothing) continue;
        for (int i = 1; i < 64; ++i)
            if (!(p.curvature_at(i / 64.0) > 0.0)) rep.smoothing_interior_positive = false;
    }
    return out;
}

namespace {

std::vector<double> angle_grid(std::size_t N) {
    if (N < 8) throw ArgumentError("support grid needs at least 8 angles");
    std::vector<double> t(N);
    for (std::size_t i = 0; i < N; ++i) t[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(N);
    return t;
}

void centred_second(SupportFn& s) {
    const std::size_t N = s.size();
    const double dt = kTwoPi / static_cast<double>(N);
    s.d2h.assign(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) s.d2h[i] = (s.dh[(i + 1) % N] - s.dh[(i + N - 1) % N]) / (2.0 * dt);
}

} // namespace

SupportFn support_of_ellipse(double a, double b, std::size_t N, Vec2 center) {
    if (!(a > 0.0 && b > 0.0)) throw ArgumentError("ellipse semi-axes must be positive");
    SupportFn s;
    s.theta = angle_grid(N);
    const double k = b * b - a * a;
    for (double t : s.theta) {
        const double c = std::cos(t), sn = std::sin(t);
        const double H = std::sqrt(a * a * c * c + b * b * sn * sn);
        const double H1 = k * sn * c / H;
        const double H2 = (k * std::cos(2.0 * t) * H - k * sn * c * H1) / (H * H);
        const double ch = center.x * c + center.y * sn, ch1 = -center.x * sn + center.y * c;
        s.h.push_back(H + ch);
        s.dh.push_back(H1 + ch1);
        s.d2h.push_back(H2 - ch);
        s.rho.push_back(a * a * b * b / (H * H * H));
    }
    s.curvature = [a, b](double t) {
        const double c = std::cos(t), sn = std::sin(t);
        const double H = std::sqrt(a * a * c * c + b * b * sn * sn);
        return H * H * H / (a * a * b * b);
    };
    return s;
}

SupportFn support_of_circle(double r, std::size_t N, Vec2 center) { return support_of_ellipse(r, r, N, center); }

SupportFn support_of_polygon(const std::vector<Vec2>& poly, std::size_t N) {
    const std::size_t V = poly.size();
    if (V < 3) throw ArgumentError("polygon needs at least 3 vertices");
    SupportFn s;
    s.theta = angle_grid(N);
    // edge i runs from poly[i] to poly[i+1]; its outward normal angle
    std::vector<double> nu(V);
    std::size_t first = 0;
    for (std::size_t i = 0; i < V; ++i) {
        const Vec2 e = poly[(i + 1) % V] - poly[i];
        nu[i] = wrap_angle(std::atan2(e.y, e.x) - 0.5 * kPi);
        if (nu[i] < nu[first]) first = i;
    }
    // unwrapped normal angles in edge order starting from the smallest one;
    // rounding noise must not break monotonicity
    std::vector<double> nu_u(V);
    nu_u[0] = nu[first];
    for (std::size_t p = 1; p < V; ++p) {
        const double step = std::remainder(nu[(first + p) % V] - nu[(first + p - 1) % V], kTwoPi);
        nu_u[p] = nu_u[p - 1] + std::max(0.0, step);
    }
    for (double t : s.theta) {
        const double tt = t < nu_u[0] ? t + kTwoPi : t;
        const std::size_t p = static_cast<std::size_t>(std::lower_bound(nu_u.begin(), nu_u.end(), tt) - nu_u.begin());
        const Vec2 v = poly[(first + (p == V ? 0 : p)) % V];
        const double c = std::cos(t), sn = std::sin(t);
        s.h.push_back(v.x * c + v.y * sn);
        s.dh.push_back(-v.x * sn + v.y * c);
    }
    centred_second(s);
    s.rho.assign(N, std::numeric_limits<double>::quiet_NaN());
    return s;
}

SupportFn support_of_curve(const ConvexCurve& c, std::size_t N) {
    SupportFn s = support_of_polygon(c.vertices, N);
    auto shared = std::make_shared<const ConvexCurve>(c);
    s.curvature = [shared](double t) { return shared->curvature_at_angle(t); };
    for (std::size_t i = 0; i < N; ++i) {
        const double k = shared->curvature_at_angle(s.theta[i]);
        s.rho[i] = k > 0.0 ? 1.0 / k : std::numeric_limits<double>::infinity();
    }
    return s;
}

SupportFn minkowski_sum(const SupportFn& A, const SupportFn& B) {
    if (A.size() != B.size()) throw ArgumentError("support grids differ in size");
    for (std::size_t i = 0; i < A.size(); ++i)
        if (A.theta[i] != B.theta[i]) throw ArgumentError("support grids differ");
    SupportFn s;
    s.theta = A.theta;
    const std::size_t N = A.size();
    s.h.resize(N), s.dh.resize(N), s.rho.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        s.h[i] = A.h[i] + B.h[i];
        s.dh[i] = A.dh[i] + B.dh[i];
        const double ra = A.rho.empty() ? std::numeric_limits<double>::quiet_NaN() : A.rho[i];
        const double rb = B.rho.empty() ? std::numeric_limits<double>::quiet_NaN() : B.rho[i];
        s.rho[i] = ra + rb;
    }
    // the sum's own h'' comes from its own samples
    centred_second(s);
    if (A.curvature && B.curvature) {
        auto ka = A.curvature, kb = B.curvature;
        s.curvature = [ka, kb](double t) {
            const double a = ka(t), b = kb(t);
            if (a <= 0.0 || b <= 0.0) return 0.0;
            return 1.0 / (1.0 / a + 1.0 / b);
        };
    }
    return s;
}

std::vector<Vec2> boundary_points(const SupportFn& s) {
    std::vector<Vec2> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double c = std::cos(s.theta[i]), sn = std::sin(s.theta[i]);
        out.push_back({s.h[i] * c - s.dh[i] * sn, s.h[i] * sn + s.dh[i] * c});
    }
    return out;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (pts.size() < 3) return pts;
    std::vector<Vec2> H(2 * pts.size());
    std::size_t k = 0;
    for (const Vec2& p : pts) {
        while (k >= 2 && cross(H[k - 1] - H[k - 2], p - H[k - 2]) <= 0.0) --k;
        H[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(H[k - 1] - H[k - 2], pts[i] - H[k - 2]) <= 0.0) --k;
        H[k++] = pts[i];
    }
    H.resize(k - 1);
    return H;
}

std::vector<Vec2> polygon_minkowski_sum(const std::vector<Vec2>& P, const std::vector<Vec2>& Q) {
    std::vector<Vec2> all;
    all.reserve(P.size() * Q.size());
    for (const Vec2& p : P)
        for (const Vec2& q : Q) all.push_back(p + q);
    return convex_hull(std::move(all));
}

namespace {

double point_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double L2 = dot(ab, ab);
    const double t = L2 > 0.0 ? std::clamp(dot(p - a, ab) / L2, 0.0, 1.0) : 0.0;
    const Vec2 q = a + t * ab;
    return std::hypot(p.x - q.x, p.y - q.y);
}

double directed_hausdorff(const std::vector<Vec2>& A, const std::vector<Vec2>& B) {
    double worst = 0.0;
    for (const Vec2& p : A) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < B.size(); ++j) best = std::min(best, point_segment(p, B[j], B[(j + 1) % B.size()]));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

double hausdorff(const std::vector<Vec2>& A, const std::vector<Vec2>& B) {
    if (A.empty() || B.empty()) throw ArgumentError("hausdorff of an empty polyline");
    return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

std::vector<Vec2> ellipse_polygon(double a, double b, std::size_t N, Vec2 center) {
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < N; ++i) {
        const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(N);
        out.push_back({center.x + a * std::cos(t), center.y + b * std::sin(t)});
    }
    return out;
}

namespace {

double radius_at(const SupportFn& s, std::size_t i) {
    if (!s.rho.empty() && !std::isnan(s.rho[i])) return s.rho[i];
    return s.rho_fd(i);
}

double kappa_of(double rho) {
    if (std::isinf(rho)) return 0.0;
    return rho > 0.0 ? 1.0 / rho : std::numeric_limits<double>::infinity();
}

TransferEntry transfer_entry(const SupportFn& A, const SupportFn& B, const SupportFn& S, std::size_t i,
                             double kappa_min, double zero_tol) {
    TransferEntry e;
    e.theta = A.theta[i];
    e.rho_A = radius_at(A, i);
    e.rho_B = radius_at(B, i);
    e.rho_sum = radius_at(S, i);
    e.kappa_A = kappa_of(e.rho_A);
    if (!(e.kappa_A > std::max(kappa_min, 2.0 * zero_tol)))
        throw PreconditionError("kappa_A(" + std::to_string(e.theta) + ") = " + std::to_string(e.kappa_A) +
                                " does not exceed the positivity threshold");
    e.kappa_B = kappa_of(e.rho_B);
    e.kappa_sum = kappa_of(e.rho_sum);
    const double fd_sum = S.rho_fd(i), fd_parts = A.rho_fd(i) + B.rho_fd(i);
    e.additivity_residual = std::abs(fd_sum - fd_parts) / std::max(1.0, std::abs(fd_parts));
    e.flat_B = e.kappa_B <= zero_tol;
    e.flat_sum = e.kappa_sum <= zero_tol;
    e.consistent = e.flat_B == e.flat_sum;
    return e;
}

} // namespace

TransferEntry curvature_transfer_check(const SupportFn& A, const SupportFn& B, std::size_t i, double kappa_min,
                                       double zero_tol) {
    if (i >= A.size()) throw ArgumentError("angle index outside the support grid");
    const SupportFn S = minkowski_sum(A, B);
    return transfer_entry(A, B, S, i, kappa_min, zero_tol);
}

TransferEntry curvature_transfer_at(const SupportFn& A, const SupportFn& B, double theta, double kappa_min,
                                    double zero_tol) {
    if (!A.curvature || !B.curvature) throw CapabilityError("analytic curvature lookup unavailable");
    TransferEntry e;
    e.theta = theta;
    e.kappa_A = A.curvature(theta);
    if (!(e.kappa_A > std::max(kappa_min, 2.0 * zero_tol)))
        throw PreconditionError("kappa_A(" + std::to_string(theta) + ") = " + std::to_string(e.kappa_A) +
                                " does not exceed the positivity threshold");
    e.kappa_B = B.curvature(theta);
    const double inf = std::numeric_limits<double>::infinity();
    e.rho_A = 1.0 / e.kappa_A;
    e.rho_B = e.kappa_B > 0.0 ? 1.0 / e.kappa_B : inf;
    e.rho_sum = e.rho_A + e.rho_B;
    e.kappa_sum = std::isinf(e.rho_sum) ? 0.0 : 1.0 / e.rho_sum;
    e.flat_B = e.kappa_B <= zero_tol;
    e.flat_sum = e.kappa_sum <= zero_tol;
    e.consistent = e.flat_B == e.flat_sum;
    return e;
}

TransferReport curvature_transfer_sweep(const SupportFn& A, const SupportFn& B, double kappa_min, double zero_tol) {
    const SupportFn S = minkowski_sum(A, B);
    TransferReport rep;
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (!(kappa_of(radius_at(A, i)) > std::max(kappa_min, 2.0 * zero_tol))) {
            ++rep.skipped;
            continue;
        }
        const TransferEntry e = transfer_entry(A, B, S, i, kappa_min, zero_tol);
        ++rep.checked;
        if (e.flat_B || e.flat_sum) ++rep.flat_cases;
        if (!e.consistent) ++rep.inconsistent;
        rep.max_additivity_residual = std::max(rep.max_additivity_residual, e.additivity_residual);
    }
    return rep;
}

std::vector<double> rotations_avoiding_zero_sets(const GaussZeroSet& A, const GaussZeroSet& B, std::size_t grid_n) {
    if (grid_n == 0) return {};
    std::vector<double> out;
    if (A.n > 0 && A.n == B.n) {
        const std::int64_t period = 2 * A.n;
        std::vector<Rational> angles;
        angles.reserve(grid_n);
        for (std::size_t k = 0; k < grid_n; ++k)
            angles.emplace_back(period * static_cast<std::int64_t>(k), static_cast<std::int64_t>(grid_n));
        for (const Rational& s : rotations_avoiding(A.Z_units, B.Z_units, angles, Rational(period)))
            out.push_back(to_double(s) * kPi / A.n);
        return out;
    }
    std::vector<double> angles;
    angles.reserve(grid_n);
    for (std::size_t k = 0; k < grid_n; ++k) angles.push_back(kTwoPi * static_cast<double>(k) / grid_n);
    return rotations_avoiding(A.Z, B.Z, angles, kTwoPi);
}

GaussZeroSet cantor_zero_set(int n, const Rational& ratio, int depth) {
    if (n < 1) throw ArgumentError("zero set needs n >= 1");
    ExactCantorSpec spec;
    spec.ratios = {ratio};
    spec.depth = depth;
    const ExactIntervalSet C = build_cantor(spec);
    GaussZeroSet z;
    z.n = n;
    z.depth = depth;
    z.Z_units = periodic_copies(C, 2 * n);
    z.Z = to_radians(z.Z_units, n);
    const auto& iv = C.intervals();
    for (int k = 0; k < 2 * n; ++k)
        for (std::size_t i = 0; i + 1 < iv.size(); ++i) z.E.push_back((to_double(iv[i].hi) + k) * kPi / n);
    std::sort(z.E.begin(), z.E.end());
    return z;
}

} // namespace minklab

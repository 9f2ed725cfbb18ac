#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "minklab/cantor.hpp"
#include "minklab/hinge.hpp"

namespace minklab {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
Vec2 rotate(Vec2 v, double angle);

enum class PieceKind { straight, smoothing, residual };
const char* to_string(PieceKind k);

/// One piece of an arc in the graph frame.  Headings are tangent angles;
/// the piece turns from heading0 to heading0 + turn.
struct CurvePiece {
    PieceKind kind = PieceKind::straight;
    int level = 0;            ///< smoothing step m, or the leftover depth
    double heading0 = 0.0;
    double turn = 0.0;
    double length = 0.0;      ///< arc length
    Vec2 start, end;
    // smoothing data: F on [-d, d] in its hinge frame
    SmoothFn F;
    double d = 0.0, gamma = 0.0;

    /// Tangent angle, curvature and position at local parameter u in [0, 1].
    double heading_at(double u) const;
    double curvature_at(double u) const;
    /// ds/du.
    double speed(double u) const;
    /// Local parameter where the heading equals `heading` (bisection).
    double param_of_heading(double heading) const;
};

struct ArcSamples {
    std::vector<Vec2> points;
    std::vector<double> heading, curvature;
    std::vector<int> piece;
};

/// Arc from base point (0, 0) with initial heading 0.  Leftover segments
/// below `depth` are straight when leftover_turn == 0, otherwise they turn
/// by leftover_turn each with a flat smoothstep curvature profile.
struct Arc {
    std::vector<CurvePiece> pieces;
    ArcSamples samples;
    std::vector<double> segment_length; ///< Lambda_0 .. Lambda_depth
    double total_turn = 0.0;
};

Arc build_arc(const std::vector<SmoothingResult>& smoothings, int depth, double leftover_turn,
              std::size_t samples_per_piece = 65);

struct ConvexCurve {
    std::vector<Vec2> vertices;      ///< closed polyline, positively oriented, no repeated endpoint
    std::vector<double> gauss_angle; ///< outward normal angle in [0, 2 pi)
    std::vector<double> curvature;
    std::vector<std::size_t> flat_marks;
    int symmetry_order = 1;
    int n = 0;                        ///< arc covers pi / n of Gauss angle
    Arc arc;                          ///< one arc, graph frame
    double total_turning = 0.0;
    double closure_gap = 0.0;
    double scale = 1.0;               ///< bounding-box diameter

    /// Analytic curvature at outward-normal angle theta (via the arc pieces).
    double curvature_at_angle(double theta) const;
};

struct GaussZeroSet {
    int n = 0;                 ///< exact form uses units of pi / n when n > 0
    ExactIntervalSet Z_units;  ///< on [0, 2n]
    IntervalSet Z;             ///< radians on [0, 2 pi]
    std::vector<double> E;     ///< Gauss angles of smoothings' left endpoints
    int depth = 0;
};

/// 2n copies of the depth-`depth` Cantor set with removal `ratio` on [0, 1]
/// (units of pi / n); E holds the lower ends of the removed gaps.
GaussZeroSet cantor_zero_set(int n, const Rational& ratio, int depth);

/// Zero set made of isolated angles (radians); no exact form.
GaussZeroSet point_zero_set(const std::vector<double>& angles);

struct MonotoneStep {
    int m = 0;                 ///< compares h_m with h_{m+1} (m + 1 = depth + 1 means the closed arc)
    double max_violation = 0.0;
    std::size_t samples = 0;
};

struct AssemblyReport {
    std::vector<MonotoneStep> monotone;
    double min_cross_scaled = 0.0;     ///< min over vertices of edge cross product / scale^2
    double turning_error = 0.0;
    double cantor_max_distance = 0.0;  ///< max distance of a flat mark's angle to Z
    double cantor_uncovered = 0.0;     ///< max distance from a Z interval to the nearest flat mark
    bool E_in_Z = false;
    bool E_dense = false;
    bool Z_reflection_symmetric = false;
    bool Z_rotation_symmetric = false;
    bool smoothing_interior_positive = false;
};

struct AssemblyOptions {
    int m_max = 6;
    std::size_t samples_per_piece = 65;
    double flat_rel = 1e-8;
    double monotone_tol = 1e-9;        ///< relative to the arc scale
    double closure_tol = 1e-9;         ///< relative to the curve scale
    Rational ratio{1, 3};              ///< removal ratio used by the schedule
};

struct CurveAssembly {
    ConvexCurve curve;
    GaussZeroSet zeros;
    ExactCantorSpec cantor;            ///< base [0, 1] in units of pi / n
    AssemblyReport report;
};

/// Builds the closed curve from the first m_max smoothings of `smoothings`
/// (one per step; step m carries 2^{m-1} copies) and 2n rotated arcs.
CurveAssembly assemble_curve(const std::vector<SmoothingResult>& smoothings, int n,
                             const AssemblyOptions& opt = {});

/// Support function sampled on theta_i = 2 pi i / N.
struct SupportFn {
    std::vector<double> theta, h, dh, d2h;
    /// Exact curvature radius per sample where known (inf at zero curvature).
    std::vector<double> rho;
    /// Analytic curvature lookup; empty when only samples are known.
    std::function<double(double)> curvature;

    std::size_t size() const { return theta.size(); }
    /// h + h'' from the sampled (finite-difference) second derivative.
    double rho_fd(std::size_t i) const { return h[i] + d2h[i]; }
};

SupportFn support_of_ellipse(double a, double b, std::size_t N, Vec2 center = {});
SupportFn support_of_circle(double r, std::size_t N, Vec2 center = {});
/// Support function of a closed convex polygon (positively oriented).
/// h'' is a centred difference of h'.
SupportFn support_of_polygon(const std::vector<Vec2>& poly, std::size_t N);
SupportFn support_of_curve(const ConvexCurve& c, std::size_t N = std::size_t{1} << 16);

SupportFn minkowski_sum(const SupportFn& A, const SupportFn& B);
/// gamma(theta) = h u + h' u'.
std::vector<Vec2> boundary_points(const SupportFn& s);

/// Monotone-chain hull, counter-clockwise, no collinear points.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);
/// Hull of all vertex sums.
std::vector<Vec2> polygon_minkowski_sum(const std::vector<Vec2>& P, const std::vector<Vec2>& Q);
/// Symmetric Hausdorff distance between closed polylines (vertex-to-segment).
double hausdorff(const std::vector<Vec2>& A, const std::vector<Vec2>& B);
/// Regular N-gon approximation of an ellipse.
std::vector<Vec2> ellipse_polygon(double a, double b, std::size_t N, Vec2 center = {});

struct TransferEntry {
    double theta = 0.0;
    double rho_A = 0.0, rho_B = 0.0, rho_sum = 0.0; ///< exact or sampled radii
    double kappa_A = 0.0, kappa_B = 0.0, kappa_sum = 0.0;
    double additivity_residual = 0.0;               ///< relative, from h + h'' samples
    bool flat_B = false, flat_sum = false;
    bool consistent = false;                        ///< flat_B == flat_sum
};

/// Curvature transfer at grid index i.  kappa <= zero_tol counts as zero;
/// requires kappa_A > max(kappa_min, 2 zero_tol).
TransferEntry curvature_transfer_check(const SupportFn& A, const SupportFn& B, std::size_t i,
                                       double kappa_min = 1e-6, double zero_tol = 1e-10);
/// Same check at an arbitrary angle using the analytic curvature lookups.
TransferEntry curvature_transfer_at(const SupportFn& A, const SupportFn& B, double theta,
                                    double kappa_min = 1e-6, double zero_tol = 1e-10);

struct TransferReport {
    std::size_t checked = 0, skipped = 0, flat_cases = 0, inconsistent = 0;
    double max_additivity_residual = 0.0;
    bool pass() const { return inconsistent == 0 && max_additivity_residual <= 1e-8; }
};
TransferReport curvature_transfer_sweep(const SupportFn& A, const SupportFn& B, double kappa_min = 1e-6,
                                        double zero_tol = 1e-10);

/// Grid angles 2 pi k / grid_n (k < grid_n) at which Z_A rotated by the angle
/// misses Z_B.  Exact rational arithmetic when both sets share n > 0.
std::vector<double> rotations_avoiding_zero_sets(const GaussZeroSet& A, const GaussZeroSet& B,
                                                 std::size_t grid_n);

} // namespace minklab

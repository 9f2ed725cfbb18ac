#pragma once

#include <stdexcept>
#include <string>

namespace minklab {

/// Base class of every error raised by the library. `kind()` is a stable
/// machine-readable tag used in CLI error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// A derivative order beyond what the function carries.
struct CapabilityError : Error {
    explicit CapabilityError(const std::string& w) : Error("capability", w) {}
};

/// Malformed argument: empty interval, bad grid, mismatched sizes.
struct ArgumentError : Error {
    explicit ArgumentError(const std::string& w) : Error("argument", w) {}
};

/// Input fails a mathematical precondition (non-convex, hypothesis violated).
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error("validation", w) {}
};

/// A construction could not be completed (no K, b_eps <= 0, failed certificate).
struct ConstructionError : Error {
    explicit ConstructionError(const std::string& w) : Error("construction", w) {}
};

/// Root not bracketed by the supplied search window.
struct BracketError : Error {
    explicit BracketError(const std::string& w) : Error("root_not_bracketed", w) {}
};

/// f'' + g'' vanishes at a matched pair, so the minimiser is not a smooth map.
struct DegenerateHessian : Error {
    explicit DegenerateHessian(const std::string& w) : Error("degenerate_hessian", w) {}
};

/// Rotation too large for the rotated curve to remain a graph.
struct RotationError : Error {
    explicit RotationError(const std::string& w) : Error("rotation_too_large", w) {}
};

/// Hypothesis of an operation fails for a specific input (e.g. norm bound).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& w) : Error("precondition", w) {}
};

/// Requested size exceeds the supported limits.
struct ResourceError : Error {
    explicit ResourceError(const std::string& w) : Error("resource", w) {}
};

/// Curve assembly invariant broken (monotone limit h_m <= h_{m+1}).
struct AssemblyError : Error {
    explicit AssemblyError(const std::string& w) : Error("assembly", w) {}
};

/// Closed curve fails to close after piecing its symmetric copies.
struct SymmetryError : Error {
    explicit SymmetryError(const std::string& w) : Error("symmetry", w) {}
};

/// Config parsing problem; `field()` names the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& w)
        : Error("config", w), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Hypothesis check failure reported by experiments (e.g. a schedule that
/// does not satisfy the decay condition); `index()` is the offending k.
class HypothesisError : public Error {
public:
    HypothesisError(int index, const std::string& w) : Error("hypothesis", w), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

} // namespace minklab

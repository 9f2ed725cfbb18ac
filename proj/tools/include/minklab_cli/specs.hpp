#pragma once

#include <string>

#include "minklab/boman.hpp"
#include "minklab/smooth_fn.hpp"
#include "minklab_cli/config.hpp"

namespace minklab::cli {

/// Function specs:
///   poly:coeffs=c0 c1 c2 ...,lo=..,hi=..   (sum c_i x^i)
///   exp_flat:A=..,s=..,tau=..              (f'' = A exp(-s/x), flat at 0)
SmoothFn make_function(const std::string& field, const std::string& spec);

/// Sequence specs:
///   gauss_exp:c0=..,c1=..,c2=..   (c0 2^{-(c1 k + c2 k^2)})
///   geometric:c=..,r=..           (c r^k)
Sequence make_sequence(const std::string& field, const std::string& spec);

/// `quadratic` (needs the a-sequence) or `quartic`.
ProfileFamily make_family(const std::string& field, const std::string& spec, const Sequence& a);

} // namespace minklab::cli

#pragma once

#include <cstddef>
#include <span>

#include "ophc/complex_math.hpp"

namespace ophc::detail {

/// In-place unnormalized backward DFT (exponent +2 pi i m k / q) of `data`.
/// Thread safe; plans are cached per length.
void backward_dft(std::span<cplx> data);

}  // namespace ophc::detail

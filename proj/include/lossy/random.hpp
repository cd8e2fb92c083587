#pragma once

#include <random>

#include "lossy/matrix.hpp"

namespace lossy {

/// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& gen);

/// Random contraction V * diag(s) * U with unitary V, U and singular
/// values drawn uniformly from [0, 1].
ComplexMatrix random_contraction(std::size_t n, std::mt19937_64& gen);

}  // namespace lossy

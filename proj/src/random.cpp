#include "lossy/random.hpp"

#include <cmath>
#include <stdexcept>

namespace lossy {

namespace {

double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

cplx gaussian(std::mt19937_64& gen) {
    double u1 = uniform01(gen);
    const double u2 = uniform01(gen);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return cplx{r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

}  // namespace

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& gen) {
    if (n == 0) throw std::invalid_argument("random_unitary: n must be positive");
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = gaussian(gen);
    }
    // Modified Gram-Schmidt on columns, two orthogonalization passes.
    for (std::size_t c = 0; c < n; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t prev = 0; prev < c; ++prev) {
                cplx dot{0.0, 0.0};
                for (std::size_t r = 0; r < n; ++r) dot += std::conj(m(r, prev)) * m(r, c);
                for (std::size_t r = 0; r < n; ++r) m(r, c) -= dot * m(r, prev);
            }
        }
        double norm_sq = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm_sq += std::norm(m(r, c));
        if (norm_sq < 1e-24) {
            throw std::runtime_error("random_unitary: degenerate Gaussian draw");
        }
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (std::size_t r = 0; r < n; ++r) m(r, c) *= inv;
    }
    return m;
}

ComplexMatrix random_contraction(std::size_t n, std::mt19937_64& gen) {
    const ComplexMatrix v = random_unitary(n, gen);
    const ComplexMatrix u = random_unitary(n, gen);
    ComplexMatrix scaled(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const double s = uniform01(gen);
        for (std::size_t r = 0; r < n; ++r) scaled(r, c) = v(r, c) * s;
    }
    return scaled * u;
}

}  // namespace lossy

#include "lossy/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lossy {

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw std::invalid_argument("ComplexMatrix: ragged initializer rows");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cplx{1.0, 0.0};
    return m;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: dimension mismatch (" +
                                    std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()) + ")");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const cplx& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
    if (!a.is_square()) throw std::invalid_argument("is_unitary: matrix must be square");
    if (tol <= 0.0) throw std::invalid_argument("is_unitary: tolerance must be positive");
    return max_abs_diff(dagger(a) * a, ComplexMatrix::identity(a.rows())) < tol;
}

bool all_finite(const ComplexMatrix& a) {
    for (const cplx& z : a.data())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

cplx permanent(const ComplexMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("permanent: matrix must be square");
    const std::size_t n = a.rows();
    if (n > 4) throw std::invalid_argument("permanent: supported only up to 4x4");
    if (n == 0) return cplx{1.0, 0.0};

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    cplx sum{0.0, 0.0};
    do {
        cplx term{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

ComplexMatrix extend_with_identity(const ComplexMatrix& a, std::size_t extra) {
    ComplexMatrix out(a.rows() + extra, a.cols() + extra);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < extra; ++i) out(a.rows() + i, a.cols() + i) = cplx{1.0, 0.0};
    return out;
}

}  // namespace lossy

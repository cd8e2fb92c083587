#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace lossy {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. The universal carrier for transfer
/// matrices, unitaries and their factors throughout the library.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }

    bool operator==(const ComplexMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Standard matrix product. Throws std::invalid_argument on shape mismatch.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return multiply(a, b);
}

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

/// Largest entry magnitude, max over |a(i,j)|.
double max_abs(const ComplexMatrix& a);

/// max over |a(i,j) - b(i,j)|; infinity if shapes differ.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// True iff a is square and max_abs(dagger(a)*a - I) < tol.
/// Throws std::invalid_argument for non-square input.
bool is_unitary(const ComplexMatrix& a, double tol = 1e-10);

/// True iff no entry is NaN or infinite.
bool all_finite(const ComplexMatrix& a);

/// Matrix permanent by direct expansion over all permutations.
/// Restricted to square matrices of size <= 4 (two-photon work never
/// needs more); throws std::invalid_argument beyond that.
cplx permanent(const ComplexMatrix& a);

/// blockdiag(a, I_extra): a in the top-left corner, identity appended.
ComplexMatrix extend_with_identity(const ComplexMatrix& a, std::size_t extra);

}  // namespace lossy

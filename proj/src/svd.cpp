#include "lossy/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lossy {

namespace {

// Hermitian inner product of columns p and q: sum_k conj(w(k,p)) * w(k,q).
cplx column_dot(const ComplexMatrix& w, std::size_t p, std::size_t q) {
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < w.rows(); ++k) s += std::conj(w(k, p)) * w(k, q);
    return s;
}

double column_norm_sq(const ComplexMatrix& w, std::size_t p) {
    double s = 0.0;
    for (std::size_t k = 0; k < w.rows(); ++k) s += std::norm(w(k, p));
    return s;
}

// Right-multiplies columns (p, q) of m by the 2x2 unitary
// [[q00, q01], [q10, q11]].
void apply_column_rotation(ComplexMatrix& m, std::size_t p, std::size_t q,
                           cplx q00, cplx q01, cplx q10, cplx q11) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
        const cplx wp = m(k, p);
        const cplx wq = m(k, q);
        m(k, p) = wp * q00 + wq * q10;
        m(k, q) = wp * q01 + wq * q11;
    }
}

// Fills column j of v with a unit vector orthogonal to all columns in
// `done`, picked deterministically from the canonical basis.
void complete_orthonormal_column(ComplexMatrix& v, std::size_t j,
                                 const std::vector<std::size_t>& done) {
    const std::size_t n = v.rows();
    std::vector<cplx> best(n);
    double best_norm = -1.0;
    for (std::size_t cand = 0; cand < n; ++cand) {
        std::vector<cplx> r(n, cplx{0.0, 0.0});
        r[cand] = cplx{1.0, 0.0};
        for (std::size_t c : done) {
            cplx proj{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) proj += std::conj(v(k, c)) * r[k];
            for (std::size_t k = 0; k < n; ++k) r[k] -= proj * v(k, c);
        }
        double nr = 0.0;
        for (const cplx& z : r) nr += std::norm(z);
        if (nr > best_norm) {
            best_norm = nr;
            best = std::move(r);
        }
    }
    const double inv = 1.0 / std::sqrt(best_norm);
    for (std::size_t k = 0; k < n; ++k) v(k, j) = best[k] * inv;
}

}  // namespace

SvdFactors svd(const ComplexMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("svd: matrix must be square");
    if (!all_finite(a)) throw std::invalid_argument("svd: matrix has non-finite entries");

    const std::size_t n = a.rows();
    ComplexMatrix w = a;                          // becomes A * J, columns -> sigma_j * v_j
    ComplexMatrix j_acc = ComplexMatrix::identity(n);  // accumulated right rotations J

    // One-sided Jacobi: rotate column pairs until all are mutually
    // orthogonal relative to their norms.
    constexpr double kOrthTol = 1e-15;
    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps && n > 1; ++sweep) {
        bool converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double app = column_norm_sq(w, p);
                const double aqq = column_norm_sq(w, q);
                const cplx apq = column_dot(w, p, q);
                const double denom = std::sqrt(app) * std::sqrt(aqq);
                if (denom == 0.0 || std::abs(apq) <= kOrthTol * denom) continue;
                converged = false;

                // Diagonalize the 2x2 Gram block [[app, apq], [conj(apq), aqq]].
                // With apq = |apq| e^{i phi}, the block equals
                // P [[app, |apq|], [|apq|, aqq]] P^dagger for P = diag(e^{i phi/2}, e^{-i phi/2}),
                // so Q = P * G with a real Givens G does the job.
                const double abs_apq = std::abs(apq);
                const double phi = std::arg(apq);
                const double zeta = (aqq - app) / (2.0 * abs_apq);
                const double t = (zeta >= 0.0 ? -1.0 : 1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const cplx ph = std::polar(1.0, phi / 2.0);
                const cplx q00 = c * ph, q01 = -s * ph;
                const cplx q10 = s * std::conj(ph), q11 = c * std::conj(ph);
                apply_column_rotation(w, p, q, q00, q01, q10, q11);
                apply_column_rotation(j_acc, p, q, q00, q01, q10, q11);
            }
        }
        if (converged) break;
    }

    // Column norms are the singular values; sorted descending.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> norms(n);
    for (std::size_t p = 0; p < n; ++p) norms[p] = std::sqrt(column_norm_sq(w, p));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    SvdFactors f;
    f.singular_values.resize(n);
    f.V = ComplexMatrix(n, n);
    f.U = ComplexMatrix(n, n);
    std::vector<std::size_t> nonzero_cols;
    std::vector<std::size_t> zero_cols;
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t src = order[jj];
        const double sigma = norms[src];
        f.singular_values[jj] = sigma;
        if (sigma > 0.0) {
            const double inv = 1.0 / sigma;
            for (std::size_t k = 0; k < n; ++k) f.V(k, jj) = w(k, src) * inv;
            nonzero_cols.push_back(jj);
        } else {
            zero_cols.push_back(jj);
        }
        // U = J^dagger with rows permuted along with the singular values.
        for (std::size_t k = 0; k < n; ++k) f.U(jj, k) = std::conj(j_acc(k, src));
    }
    for (std::size_t jj : zero_cols) {
        complete_orthonormal_column(f.V, jj, nonzero_cols);
        nonzero_cols.push_back(jj);
    }
    return f;
}

ComplexMatrix reconstruct(const SvdFactors& f) {
    const std::size_t n = f.singular_values.size();
    ComplexMatrix vs = f.V;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) vs(i, j) *= f.singular_values[j];
    return vs * f.U;
}

double spectral_norm(const ComplexMatrix& a) {
    if (!all_finite(a)) throw std::invalid_argument("spectral_norm: non-finite entries");
    const SvdFactors f = svd(a);
    return f.singular_values.empty() ? 0.0 : f.singular_values.front();
}

}  // namespace lossy

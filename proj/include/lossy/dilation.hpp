#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "lossy/matrix.hpp"
#include "lossy/svd.hpp"

namespace lossy {

/// Requested transformation has a singular value above 1: it would need
/// gain, which a passive optical circuit cannot provide.
struct gain_error : std::domain_error {
    using std::domain_error::domain_error;
};

enum class LossConvention { amplitude, power };

/// An N x N transformation with spectral norm <= 1 together with its SVD.
/// `eta` is set when the matrix belongs to the canonical lossy 50/50
/// beamsplitter family, where the sub-unity singular value equals eta.
struct LossyTransform {
    ComplexMatrix matrix;
    SvdFactors factors;
    std::optional<double> eta;
};

/// Unitary embedding of a LossyTransform: system modes first, one ancilla
/// mode per singular value below 1, appended in descending singular-value
/// order. Ports are 1-based.
struct DilatedUnitary {
    ComplexMatrix matrix;
    std::vector<int> system_ports;
    std::vector<int> ancilla_ports;
    std::vector<double> thetas;  // coupling angles in [0, pi/2], one per ancilla
};

/// Wraps a matrix as a LossyTransform, computing its SVD.
/// Singular values in (1, 1 + 1e-9] are clamped to 1 (SVD round-off);
/// anything larger throws gain_error.
LossyTransform make_lossy_transform(const ComplexMatrix& m);

/// The lossy 50/50 beamsplitter family
///   T(eta) = (1/2) [[-eta + i, -1 + i eta], [-1 + i eta, eta - i]],
/// unitary at eta = 1, rank-1 at eta = 0. Every entry has squared
/// magnitude (1 + eta^2)/4, so the splitting is 50/50 for all eta.
/// The stored factors are the canonical analytic ones:
///   V = (1/sqrt2) [[i, i], [-1, 1]],  L = diag[1, eta],
///   U = (1/sqrt2) [[1, i], [i, 1]].
LossyTransform lossy_beamsplitter(double eta);

/// Embeds t into a unitary M = blockdiag(V, I_k) * Theta * blockdiag(U, I_k),
/// where Theta couples each deficient singular direction j to its ancilla
/// through the 2x2 block [[cos th, i sin th], [i sin th, cos th]] with
/// cos th = sigma_j. The top-left N x N block of M reproduces t.matrix.
DilatedUnitary dilate(const LossyTransform& t);

/// Loss of the transformation: 1 - eta (amplitude) or 1 - eta^2 (power),
/// with eta taken from the stored family parameter or, failing that, the
/// smallest singular value.
double loss_parameter(const LossyTransform& t, LossConvention convention);

const char* to_string(LossConvention c);
LossConvention loss_convention_from_string(const std::string& s);

nlohmann::json dilated_to_json(const DilatedUnitary& d);
DilatedUnitary dilated_from_json(const nlohmann::json& j);

}  // namespace lossy

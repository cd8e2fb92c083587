#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lossy/matrix.hpp"

namespace lossy {

/// A photon pair fed into two distinct input ports. `visibility` is the
/// source interference coefficient xi in [0, 1]; `coherence_time_ps` is
/// the width T of the Gaussian overlap in the delay tau.
struct PhotonPairSource {
    int port_a = 1;
    int port_b = 2;
    double coherence_time_ps = 1.0;
    double visibility = 1.0;
};

void validate(const PhotonPairSource& s, int n_modes);

/// Mutual coherence gamma = xi * exp(-tau^2 / T^2), in [0, xi].
/// This single factor weights the interference term of the two-photon
/// density matrix; there is no separate spectral model.
double mutual_coherence(const PhotonPairSource& s, double tau_ps);

/// Pure two-photon amplitude array over (signal mode, idler mode) pairs,
/// with the mutual coherence carried alongside.
struct TwoPhotonState {
    int n_modes = 0;
    std::vector<cplx> amplitudes;  // index = (signal-1) * n_modes + (idler-1)
    double coherence = 1.0;

    cplx& at(int signal_mode, int idler_mode);
    const cplx& at(int signal_mode, int idler_mode) const;
    double norm_sq() const;
};

/// Product state with the signal photon in `port_signal` and the idler in
/// `port_idler` (1-based).
TwoPhotonState input_pair_state(int n_modes, int port_signal, int port_idler, double coherence);

/// Transforms both species' creation operators through m:
/// amp'[o_s, o_i] = sum_{j,k} m(o_s, j) m(o_i, k) amp[j, k].
TwoPhotonState apply_mode_transform(const ComplexMatrix& m, const TwoPhotonState& s);

/// Coincidence probabilities over unordered output-port pairs (m <= n).
struct CoincidenceMap {
    int n_modes = 0;
    std::vector<double> probabilities;  // packed upper triangle, row-major

    double& at(int m, int n);
    double at(int m, int n) const;
    double total() const;
};

nlohmann::json coincidence_map_to_json(const CoincidenceMap& map);

/// Probability of detecting one photon at output m and one at output n
/// (same port allowed) for a unitary m-by-m transfer matrix and a pair
/// injected at the source ports with mutual coherence gamma:
///   m != n:  |M(m,p)M(n,q)|^2 + |M(m,q)M(n,p)|^2
///            + 2 gamma Re[ M(m,p)M(n,q) conj(M(m,q)M(n,p)) ]
///   m == n:  (1 + gamma) |M(m,p)M(m,q)|^2
/// Ports are 1-based. Throws if M is not unitary within 1e-8: probability
/// bookkeeping is exact only on the full unitary, so lossy matrices must
/// be dilated first.
double coincidence(const ComplexMatrix& m, const PhotonPairSource& source, double gamma,
                   int out_m, int out_n);

/// coincidence() over every unordered pair; totals 1 within 1e-12.
CoincidenceMap coincidence_map(const ComplexMatrix& m, const PhotonPairSource& source,
                               double gamma);

/// Closed-form coincidence between the two interferometer outputs of the
/// lossy Mach-Zehnder with coupling angle theta (eta = cos theta):
///   P12 = (1/8)(cos^2 th + 1)^2 - (g/2) cos^2 th + (g/8) sin^4 th
double p12_closed(double theta, double gamma);

/// Closed-form coincidence between interferometer output 1 and the loss
/// channel (mode 3):
///   P13 = (1/4)(cos^2 th + 1) sin^2 th - (g/4) sin^4 th
double p13_closed(double theta, double gamma);

/// Brute-force oracle: builds the two-species density matrix explicitly
/// (four outer-product terms with weights 1/2 and gamma/2), transforms
/// each species through m, and projects onto the (out_m, out_n) detection
/// subspace. Agrees with coincidence() to 1e-12; kept as an independent
/// computational route.
double oracle_coincidence(const ComplexMatrix& m, const PhotonPairSource& source, double gamma,
                          int out_m, int out_n);

}  // namespace lossy

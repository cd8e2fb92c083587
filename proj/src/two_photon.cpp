#include "lossy/two_photon.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lossy {

namespace {

void check_port(int port, int n_modes, const char* what) {
    if (port < 1 || port > n_modes) {
        throw std::invalid_argument(std::string(what) + " port " + std::to_string(port) +
                                    " out of range 1.." + std::to_string(n_modes));
    }
}

double checked_gamma(double gamma) {
    if (!std::isfinite(gamma) || gamma < -1e-12 || gamma > 1.0 + 1e-12) {
        throw std::invalid_argument("mutual coherence must lie in [0, 1], got " +
                                    std::to_string(gamma));
    }
    if (gamma < 0.0) return 0.0;
    if (gamma > 1.0) return 1.0;
    return gamma;
}

void check_transfer_matrix(const ComplexMatrix& m, const PhotonPairSource& source) {
    if (!m.is_square() || m.rows() == 0) {
        throw std::invalid_argument("coincidence: transfer matrix must be square and non-empty");
    }
    if (!is_unitary(m, 1e-8)) {
        throw std::invalid_argument(
            "coincidence: transfer matrix is not unitary within 1e-8; "
            "dilate lossy transformations before computing probabilities");
    }
    validate(source, static_cast<int>(m.rows()));
}

}  // namespace

void validate(const PhotonPairSource& s, int n_modes) {
    check_port(s.port_a, n_modes, "source");
    check_port(s.port_b, n_modes, "source");
    if (s.port_a == s.port_b) {
        throw std::invalid_argument("source ports must be distinct");
    }
    if (!(s.coherence_time_ps > 0.0) || !std::isfinite(s.coherence_time_ps)) {
        throw std::invalid_argument("coherence time must be positive");
    }
    if (!std::isfinite(s.visibility) || s.visibility < 0.0 || s.visibility > 1.0) {
        throw std::invalid_argument("source visibility must lie in [0, 1]");
    }
}

double mutual_coherence(const PhotonPairSource& s, double tau_ps) {
    if (!std::isfinite(tau_ps)) {
        throw std::invalid_argument("delay must be finite");
    }
    const double ratio = tau_ps / s.coherence_time_ps;
    return s.visibility * std::exp(-ratio * ratio);
}

cplx& TwoPhotonState::at(int signal_mode, int idler_mode) {
    return amplitudes[static_cast<std::size_t>(signal_mode - 1) * n_modes + (idler_mode - 1)];
}

const cplx& TwoPhotonState::at(int signal_mode, int idler_mode) const {
    return amplitudes[static_cast<std::size_t>(signal_mode - 1) * n_modes + (idler_mode - 1)];
}

double TwoPhotonState::norm_sq() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return s;
}

TwoPhotonState input_pair_state(int n_modes, int port_signal, int port_idler, double coherence) {
    if (n_modes < 1) throw std::invalid_argument("state needs at least one mode");
    check_port(port_signal, n_modes, "signal");
    check_port(port_idler, n_modes, "idler");
    TwoPhotonState s;
    s.n_modes = n_modes;
    s.amplitudes.assign(static_cast<std::size_t>(n_modes) * n_modes, cplx{0.0, 0.0});
    s.coherence = coherence;
    s.at(port_signal, port_idler) = cplx{1.0, 0.0};
    return s;
}

TwoPhotonState apply_mode_transform(const ComplexMatrix& m, const TwoPhotonState& s) {
    const int n = s.n_modes;
    if (!m.is_square() || static_cast<int>(m.rows()) != n) {
        throw std::invalid_argument("mode transform must be square with the state's mode count");
    }
    // amp'(a, b) = sum_{j,k} m(a, j) m(b, k) amp(j, k), split as m * A * m^T.
    std::vector<cplx> half(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
    for (int a = 0; a < n; ++a) {
        for (int j = 0; j < n; ++j) {
            const cplx maj = m(a, j);
            if (maj == cplx{0.0, 0.0}) continue;
            for (int k = 0; k < n; ++k) {
                half[static_cast<std::size_t>(a) * n + k] +=
                    maj * s.amplitudes[static_cast<std::size_t>(j) * n + k];
            }
        }
    }
    TwoPhotonState out;
    out.n_modes = n;
    out.coherence = s.coherence;
    out.amplitudes.assign(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            cplx acc{0.0, 0.0};
            for (int k = 0; k < n; ++k) {
                acc += half[static_cast<std::size_t>(a) * n + k] * m(b, k);
            }
            out.amplitudes[static_cast<std::size_t>(a) * n + b] = acc;
        }
    }
    return out;
}

double& CoincidenceMap::at(int m, int n) {
    if (m > n) std::swap(m, n);
    check_port(m, n_modes, "output");
    check_port(n, n_modes, "output");
    // row m-1 of the packed upper triangle starts after (m-1) full rows
    const int i = m - 1;
    const int j = n - 1;
    const std::size_t offset = static_cast<std::size_t>(i) * n_modes - static_cast<std::size_t>(i) * (i - 1) / 2;
    return probabilities[offset + (j - i)];
}

double CoincidenceMap::at(int m, int n) const {
    return const_cast<CoincidenceMap*>(this)->at(m, n);
}

double CoincidenceMap::total() const {
    double t = 0.0;
    for (double p : probabilities) t += p;
    return t;
}

nlohmann::json coincidence_map_to_json(const CoincidenceMap& map) {
    nlohmann::json pairs = nlohmann::json::array();
    for (int m = 1; m <= map.n_modes; ++m) {
        for (int n = m; n <= map.n_modes; ++n) {
            pairs.push_back({m, n, map.at(m, n)});
        }
    }
    return nlohmann::json{{"pairs", pairs}, {"total", map.total()}};
}

double coincidence(const ComplexMatrix& m, const PhotonPairSource& source, double gamma,
                   int out_m, int out_n) {
    check_transfer_matrix(m, source);
    const double g = checked_gamma(gamma);
    const int n_modes = static_cast<int>(m.rows());
    check_port(out_m, n_modes, "output");
    check_port(out_n, n_modes, "output");
    const int p = source.port_a - 1;
    const int q = source.port_b - 1;
    const int a = out_m - 1;
    const int b = out_n - 1;
    const cplx direct = m(a, p) * m(b, q);
    const cplx swapped = m(a, q) * m(b, p);
    if (out_m == out_n) {
        return (1.0 + g) * std::norm(direct);
    }
    return std::norm(direct) + std::norm(swapped) +
           2.0 * g * std::real(direct * std::conj(swapped));
}

CoincidenceMap coincidence_map(const ComplexMatrix& m, const PhotonPairSource& source,
                               double gamma) {
    check_transfer_matrix(m, source);
    const int n_modes = static_cast<int>(m.rows());
    CoincidenceMap map;
    map.n_modes = n_modes;
    map.probabilities.assign(static_cast<std::size_t>(n_modes) * (n_modes + 1) / 2, 0.0);
    for (int out_m = 1; out_m <= n_modes; ++out_m) {
        for (int out_n = out_m; out_n <= n_modes; ++out_n) {
            map.at(out_m, out_n) = coincidence(m, source, gamma, out_m, out_n);
        }
    }
    return map;
}

double p12_closed(double theta, double gamma) {
    const double g = checked_gamma(gamma);
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = 1.0 - c2;
    return 0.125 * (c2 + 1.0) * (c2 + 1.0) - 0.5 * g * c2 + 0.125 * g * s2 * s2;
}

double p13_closed(double theta, double gamma) {
    const double g = checked_gamma(gamma);
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = 1.0 - c2;
    return 0.25 * (c2 + 1.0) * s2 - 0.25 * g * s2 * s2;
}

double oracle_coincidence(const ComplexMatrix& m, const PhotonPairSource& source, double gamma,
                          int out_m, int out_n) {
    check_transfer_matrix(m, source);
    const double g = checked_gamma(gamma);
    const int n = static_cast<int>(m.rows());
    check_port(out_m, n, "output");
    check_port(out_n, n, "output");

    const int p = source.port_a - 1;
    const int q = source.port_b - 1;
    const std::size_t dim = static_cast<std::size_t>(n) * n;

    // Output kets for the two ways the pair can propagate: signal through
    // column p and idler through column q, and the species-swapped version.
    std::vector<cplx> psi1(dim), psi2(dim);
    for (int s = 0; s < n; ++s) {
        for (int i = 0; i < n; ++i) {
            psi1[static_cast<std::size_t>(s) * n + i] = m(s, p) * m(i, q);
            psi2[static_cast<std::size_t>(s) * n + i] = m(s, q) * m(i, p);
        }
    }

    // rho = 1/2 (|1><1| + |2><2|) + g/2 (|1><2| + |2><1|), built in full.
    ComplexMatrix rho(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            rho(r, c) = 0.5 * (psi1[r] * std::conj(psi1[c]) + psi2[r] * std::conj(psi2[c])) +
                        0.5 * g * (psi1[r] * std::conj(psi2[c]) + psi2[r] * std::conj(psi1[c]));
        }
    }

    const auto basis_index = [n](int signal, int idler) {
        return static_cast<std::size_t>(signal - 1) * n + (idler - 1);
    };
    const std::size_t mn = basis_index(out_m, out_n);
    if (out_m == out_n) {
        return std::real(rho(mn, mn));
    }
    const std::size_t nm = basis_index(out_n, out_m);
    return std::real(rho(mn, mn)) + std::real(rho(nm, nm));
}

}  // namespace lossy

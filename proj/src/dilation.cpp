#include "lossy/dilation.hpp"

#include <cmath>

#include "lossy/matrix_io.hpp"

namespace lossy {

namespace {

constexpr double kGainWindow = 1e-9;      // sigma in (1, 1+window] is round-off, clamp
constexpr double kDeficientTol = 1e-12;   // sigma >= 1 - tol gets no ancilla

void check_norm_and_clamp(SvdFactors& f) {
    for (double& sigma : f.singular_values) {
        if (sigma > 1.0 + kGainWindow)
            throw gain_error("transformation has singular value " + format_double(sigma) +
                             " > 1: gain is not representable");
        if (sigma > 1.0) sigma = 1.0;
    }
}

}  // namespace

LossyTransform make_lossy_transform(const ComplexMatrix& m) {
    LossyTransform t;
    t.matrix = m;
    t.factors = svd(m);
    check_norm_and_clamp(t.factors);
    return t;
}

LossyTransform lossy_beamsplitter(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("lossy_beamsplitter: eta must be in [0, 1]");
    const cplx i{0.0, 1.0};
    LossyTransform t;
    t.matrix = ComplexMatrix{{0.5 * (-eta + i), 0.5 * (-1.0 + i * eta)},
                             {0.5 * (-1.0 + i * eta), 0.5 * (eta - i)}};
    const double r = 1.0 / std::sqrt(2.0);
    t.factors.V = ComplexMatrix{{r * i, r * i}, {cplx{-r, 0.0}, cplx{r, 0.0}}};
    t.factors.singular_values = {1.0, eta};
    t.factors.U = ComplexMatrix{{cplx{r, 0.0}, r * i}, {r * i, cplx{r, 0.0}}};
    t.eta = eta;
    return t;
}

DilatedUnitary dilate(const LossyTransform& t) {
    SvdFactors f = t.factors;
    check_norm_and_clamp(f);

    const std::size_t n = f.singular_values.size();
    std::size_t k = 0;  // deficient singular values sit at the tail (sorted descending)
    for (double sigma : f.singular_values)
        if (sigma < 1.0 - kDeficientTol) ++k;

    DilatedUnitary d;
    for (std::size_t p = 0; p < n; ++p) d.system_ports.push_back(static_cast<int>(p + 1));
    for (std::size_t a = 0; a < k; ++a) d.ancilla_ports.push_back(static_cast<int>(n + a + 1));

    // Theta: identity except a coupler between singular direction j and its
    // ancilla; the on-diagonal cos(theta) entries reproduce diag(sigma).
    ComplexMatrix theta_m = ComplexMatrix::identity(n + k);
    for (std::size_t p = 0; p < n; ++p)
        theta_m(p, p) = cplx{std::min(f.singular_values[p], 1.0), 0.0};
    for (std::size_t a = 0; a < k; ++a) {
        const std::size_t j = n - k + a;
        const std::size_t anc = n + a;
        const double sigma = std::min(f.singular_values[j], 1.0);
        const double theta = std::acos(sigma);
        d.thetas.push_back(theta);
        const cplx is{0.0, std::sin(theta)};
        theta_m(j, j) = cplx{sigma, 0.0};
        theta_m(j, anc) = is;
        theta_m(anc, j) = is;
        theta_m(anc, anc) = cplx{sigma, 0.0};
    }

    d.matrix = extend_with_identity(f.V, k) * theta_m * extend_with_identity(f.U, k);
    return d;
}

double loss_parameter(const LossyTransform& t, LossConvention convention) {
    double eta;
    if (t.eta) {
        eta = *t.eta;
    } else {
        if (t.factors.singular_values.empty())
            throw std::invalid_argument("loss_parameter: empty transformation");
        eta = std::min(t.factors.singular_values.back(), 1.0);
    }
    return convention == LossConvention::amplitude ? 1.0 - eta : 1.0 - eta * eta;
}

const char* to_string(LossConvention c) {
    return c == LossConvention::amplitude ? "amplitude" : "power";
}

LossConvention loss_convention_from_string(const std::string& s) {
    if (s == "amplitude") return LossConvention::amplitude;
    if (s == "power") return LossConvention::power;
    throw std::invalid_argument("unknown loss convention '" + s +
                                "' (expected 'amplitude' or 'power')");
}

nlohmann::json dilated_to_json(const DilatedUnitary& d) {
    return {{"matrix", matrix_to_json(d.matrix)},
            {"system_ports", d.system_ports},
            {"ancilla_ports", d.ancilla_ports},
            {"thetas", d.thetas}};
}

DilatedUnitary dilated_from_json(const nlohmann::json& j) {
    DilatedUnitary d;
    d.matrix = matrix_from_json(j.at("matrix"));
    d.system_ports = j.at("system_ports").get<std::vector<int>>();
    d.ancilla_ports = j.at("ancilla_ports").get<std::vector<int>>();
    d.thetas = j.at("thetas").get<std::vector<double>>();
    return d;
}

}  // namespace lossy

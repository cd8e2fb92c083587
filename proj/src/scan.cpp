#include "lossy/scan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lossy/matrix_io.hpp"

namespace lossy {

std::string to_string(Observable o) {
    switch (o) {
        case Observable::p12: return "P12";
        case Observable::p13: return "P13";
        case Observable::p23: return "P23";
        case Observable::map: return "map";
    }
    throw std::logic_error("unknown observable");
}

Observable observable_from_string(const std::string& s) {
    if (s == "P12" || s == "p12") return Observable::p12;
    if (s == "P13" || s == "p13") return Observable::p13;
    if (s == "P23" || s == "p23") return Observable::p23;
    if (s == "map" || s == "Map") return Observable::map;
    throw std::invalid_argument("unknown observable '" + s + "' (expected P12, P13, P23 or map)");
}

std::string to_string(VisibilityMetric m) {
    switch (m) {
        case VisibilityMetric::dip: return "dip";
        case VisibilityMetric::peak: return "peak";
        case VisibilityMetric::michelson: return "michelson";
    }
    throw std::logic_error("unknown metric");
}

VisibilityMetric visibility_metric_from_string(const std::string& s) {
    if (s == "dip") return VisibilityMetric::dip;
    if (s == "peak") return VisibilityMetric::peak;
    if (s == "michelson") return VisibilityMetric::michelson;
    throw std::invalid_argument("unknown visibility metric '" + s +
                                "' (expected dip, peak or michelson)");
}

std::vector<double> default_tau_grid() {
    std::vector<double> grid(81);
    for (int i = 0; i < 81; ++i) grid[i] = -2.0 + 4.0 * i / 80.0;
    return grid;
}

void validate(const ScanConfig& cfg) {
    if (cfg.tau_grid_ps.empty()) {
        throw std::invalid_argument("scan config: tau_grid_ps must be non-empty");
    }
    if (!std::is_sorted(cfg.tau_grid_ps.begin(), cfg.tau_grid_ps.end())) {
        throw std::invalid_argument("scan config: tau_grid_ps must be sorted ascending");
    }
    for (double t : cfg.tau_grid_ps) {
        if (!std::isfinite(t)) throw std::invalid_argument("scan config: tau_grid_ps has a non-finite entry");
    }
    if (cfg.losses.empty()) {
        throw std::invalid_argument("scan config: losses must be non-empty");
    }
    for (double l : cfg.losses) {
        if (!std::isfinite(l) || l < 0.0 || l > 1.0) {
            throw std::invalid_argument("scan config: losses must lie in [0, 1], got " +
                                        std::to_string(l));
        }
    }
    validate(cfg.source, 3);
    const bool canonical = (cfg.source.port_a == 1 && cfg.source.port_b == 2) ||
                           (cfg.source.port_a == 2 && cfg.source.port_b == 1);
    if (!canonical) {
        throw std::invalid_argument(
            "scan config: the pair must enter interferometer ports 1 and 2; "
            "mode 3 is the loss channel");
    }
}

nlohmann::json scan_config_to_json(const ScanConfig& cfg) {
    return nlohmann::json{
        {"tau_grid_ps", cfg.tau_grid_ps},
        {"losses", cfg.losses},
        {"loss_convention", to_string(cfg.convention)},
        {"source",
         {{"port_a", cfg.source.port_a},
          {"port_b", cfg.source.port_b},
          {"coherence_time_ps", cfg.source.coherence_time_ps},
          {"visibility", cfg.source.visibility}}},
        {"observable", to_string(cfg.observable)},
        {"oracle_check", cfg.oracle_check},
    };
}

ScanConfig scan_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("scan config: expected a JSON object");
    ScanConfig cfg;
    cfg.tau_grid_ps = j.value("tau_grid_ps", default_tau_grid());
    cfg.losses = j.value("losses", std::vector<double>{0.0});
    if (j.contains("loss_convention")) {
        cfg.convention = loss_convention_from_string(j.at("loss_convention").get<std::string>());
    }
    if (j.contains("source")) {
        const nlohmann::json& s = j.at("source");
        cfg.source.port_a = s.value("port_a", 1);
        cfg.source.port_b = s.value("port_b", 2);
        cfg.source.coherence_time_ps = s.value("coherence_time_ps", 1.0);
        cfg.source.visibility = s.value("visibility", 1.0);
    }
    if (j.contains("observable")) {
        cfg.observable = observable_from_string(j.at("observable").get<std::string>());
    }
    cfg.oracle_check = j.value("oracle_check", false);
    validate(cfg);
    return cfg;
}

double eta_from_loss(double loss, LossConvention convention) {
    if (!std::isfinite(loss) || loss < 0.0 || loss > 1.0) {
        throw std::invalid_argument("loss must lie in [0, 1], got " + std::to_string(loss));
    }
    return convention == LossConvention::amplitude ? 1.0 - loss : std::sqrt(1.0 - loss);
}

ComplexMatrix dilated_splitter_matrix(double eta) {
    DilatedUnitary d = dilate(lossy_beamsplitter(eta));
    if (d.matrix.rows() == 3) return d.matrix;
    return extend_with_identity(d.matrix, 3 - d.matrix.rows());
}

namespace {

double observable_value(Observable obs, const ComplexMatrix& m3, const PhotonPairSource& source,
                        double theta, double gamma) {
    switch (obs) {
        case Observable::p12: return p12_closed(theta, gamma);
        case Observable::p13: return p13_closed(theta, gamma);
        case Observable::p23: return coincidence(m3, source, gamma, 2, 3);
        case Observable::map: return coincidence_map(m3, source, gamma).total();
    }
    throw std::logic_error("unknown observable");
}

double oracle_value(Observable obs, const ComplexMatrix& m3, const PhotonPairSource& source,
                    double gamma) {
    switch (obs) {
        case Observable::p12: return oracle_coincidence(m3, source, gamma, 1, 2);
        case Observable::p13: return oracle_coincidence(m3, source, gamma, 1, 3);
        case Observable::p23: return oracle_coincidence(m3, source, gamma, 2, 3);
        case Observable::map: {
            double total = 0.0;
            for (int m = 1; m <= 3; ++m) {
                for (int n = m; n <= 3; ++n) {
                    total += oracle_coincidence(m3, source, gamma, m, n);
                }
            }
            return total;
        }
    }
    throw std::logic_error("unknown observable");
}

}  // namespace

ScanResult run_scan(const ScanConfig& cfg) {
    validate(cfg);
    ScanResult result;
    result.config = cfg;
    const std::size_t n_loss = cfg.losses.size();
    const std::size_t n_tau = cfg.tau_grid_ps.size();
    result.values.assign(n_loss, std::vector<double>(n_tau, 0.0));
    if (cfg.observable == Observable::map) {
        result.maps.assign(n_loss, std::vector<CoincidenceMap>(n_tau));
    }
    result.long_delay_baseline.resize(n_loss);
    result.zero_delay_value.resize(n_loss);

    for (std::size_t i = 0; i < n_loss; ++i) {
        const double eta = eta_from_loss(cfg.losses[i], cfg.convention);
        const double theta = std::acos(std::min(1.0, std::max(0.0, eta)));
        const ComplexMatrix m3 = dilated_splitter_matrix(eta);
        for (std::size_t j = 0; j < n_tau; ++j) {
            const double gamma = mutual_coherence(cfg.source, cfg.tau_grid_ps[j]);
            result.values[i][j] = observable_value(cfg.observable, m3, cfg.source, theta, gamma);
            if (cfg.observable == Observable::map) {
                result.maps[i][j] = coincidence_map(m3, cfg.source, gamma);
            }
            if (cfg.oracle_check) {
                const double dev =
                    std::abs(result.values[i][j] - oracle_value(cfg.observable, m3, cfg.source, gamma));
                result.oracle_max_deviation = std::max(result.oracle_max_deviation, dev);
            }
        }
        result.long_delay_baseline[i] = observable_value(cfg.observable, m3, cfg.source, theta, 0.0);
        result.zero_delay_value[i] =
            observable_value(cfg.observable, m3, cfg.source, theta, cfg.source.visibility);
    }
    return result;
}

double visibility(double zero_delay, double long_delay, VisibilityMetric metric) {
    switch (metric) {
        case VisibilityMetric::dip:
        case VisibilityMetric::peak: {
            if (long_delay == 0.0) {
                throw std::domain_error("visibility: long-delay baseline is zero");
            }
            const double ratio = zero_delay / long_delay;
            return metric == VisibilityMetric::dip ? 1.0 - ratio : ratio - 1.0;
        }
        case VisibilityMetric::michelson: {
            const double denom = zero_delay + long_delay;
            if (denom == 0.0) {
                throw std::domain_error("visibility: zero-delay and long-delay values sum to zero");
            }
            return std::abs(zero_delay - long_delay) / denom;
        }
    }
    throw std::logic_error("unknown metric");
}

double crossing_loss(double xi) {
    if (!(xi > 0.0) || xi > 1.0) {
        throw std::invalid_argument("crossing_loss: xi must lie in (0, 1]");
    }
    // Balance equation in c = cos^2 theta: c^2 - 6c + 1 = 0; xi cancels.
    const double c = 3.0 - 2.0 * std::sqrt(2.0);
    if (c < 0.0 || c > 1.0) {
        throw std::domain_error("crossing_loss: no root in [0, 1]");
    }
    return 1.0 - std::sqrt(c);
}

std::string scan_to_csv(const ScanResult& result) {
    std::string out = "loss,tau_ps,gamma,value,observable,convention\n";
    const std::string convention = to_string(result.config.convention);
    for (std::size_t i = 0; i < result.config.losses.size(); ++i) {
        for (std::size_t j = 0; j < result.config.tau_grid_ps.size(); ++j) {
            const double gamma = mutual_coherence(result.config.source, result.config.tau_grid_ps[j]);
            const std::string prefix = format_double(result.config.losses[i]) + "," +
                                       format_double(result.config.tau_grid_ps[j]) + "," +
                                       format_double(gamma) + ",";
            if (result.config.observable == Observable::map) {
                const CoincidenceMap& map = result.maps[i][j];
                for (int m = 1; m <= map.n_modes; ++m) {
                    for (int n = m; n <= map.n_modes; ++n) {
                        out += prefix + format_double(map.at(m, n)) + ",P" + std::to_string(m) +
                               std::to_string(n) + "," + convention + "\n";
                    }
                }
            } else {
                out += prefix + format_double(result.values[i][j]) + "," +
                       to_string(result.config.observable) + "," + convention + "\n";
            }
        }
    }
    return out;
}

}  // namespace lossy

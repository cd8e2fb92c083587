#include "lossy/counts.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "lossy/matrix_io.hpp"

namespace lossy {

namespace {

double next_uniform(std::mt19937_64& gen) {
    // 53 random bits into [0, 1); avoids distribution objects so the
    // stream is identical across standard library implementations.
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::int64_t sample_poisson(std::mt19937_64& gen, double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
        // Inversion by sequential search.
        const double target = next_uniform(gen);
        double p = std::exp(-mean);
        double cdf = p;
        std::int64_t k = 0;
        while (cdf < target && k < 1000000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }
    // Normal approximation with a Box-Muller draw, adequate at large mean.
    double u1 = next_uniform(gen);
    const double u2 = next_uniform(gen);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    const double value = std::round(mean + std::sqrt(mean) * z);
    return value < 0.0 ? 0 : static_cast<std::int64_t>(value);
}

}  // namespace

void validate(const CountsModel& model) {
    if (!std::isfinite(model.pair_rate) || model.pair_rate < 0.0) {
        throw std::invalid_argument("counts model: pair_rate must be >= 0");
    }
    if (!std::isfinite(model.integration_time_s) || model.integration_time_s < 0.0) {
        throw std::invalid_argument("counts model: integration_time_s must be >= 0");
    }
    if (!std::isfinite(model.dark_coincidence_rate) || model.dark_coincidence_rate < 0.0) {
        throw std::invalid_argument("counts model: dark_coincidence_rate must be >= 0");
    }
}

std::vector<std::vector<std::int64_t>> synthesize_counts(const ScanResult& scan,
                                                         const CountsModel& model) {
    validate(model);
    std::mt19937_64 gen(model.rng_seed);
    std::vector<std::vector<std::int64_t>> counts(scan.values.size());
    for (std::size_t i = 0; i < scan.values.size(); ++i) {
        counts[i].resize(scan.values[i].size());
        const double baseline = scan.long_delay_baseline[i];
        for (std::size_t j = 0; j < scan.values[i].size(); ++j) {
            const double ratio = baseline == 0.0 ? 0.0 : scan.values[i][j] / baseline;
            const double mean =
                model.integration_time_s * (model.pair_rate * ratio + model.dark_coincidence_rate);
            counts[i][j] = sample_poisson(gen, mean);
        }
    }
    return counts;
}

std::string counts_to_csv(const ScanResult& scan,
                          const std::vector<std::vector<std::int64_t>>& counts,
                          const CountsModel& model) {
    if (counts.size() != scan.config.losses.size()) {
        throw std::invalid_argument("counts matrix does not match the scan grid");
    }
    std::string out = "loss,tau_ps,gamma,value,observable,convention,counts,seed\n";
    const std::string convention = to_string(scan.config.convention);
    const std::string obs = to_string(scan.config.observable);
    const std::string seed = std::to_string(model.rng_seed);
    for (std::size_t i = 0; i < scan.config.losses.size(); ++i) {
        if (counts[i].size() != scan.config.tau_grid_ps.size()) {
            throw std::invalid_argument("counts matrix does not match the scan grid");
        }
        for (std::size_t j = 0; j < scan.config.tau_grid_ps.size(); ++j) {
            const double gamma = mutual_coherence(scan.config.source, scan.config.tau_grid_ps[j]);
            out += format_double(scan.config.losses[i]) + "," +
                   format_double(scan.config.tau_grid_ps[j]) + "," + format_double(gamma) + "," +
                   format_double(scan.values[i][j]) + "," + obs + "," + convention + "," +
                   std::to_string(counts[i][j]) + "," + seed + "\n";
        }
    }
    return out;
}

}  // namespace lossy

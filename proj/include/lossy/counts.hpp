#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lossy/scan.hpp"

namespace lossy {

/// Detected-coincidence model: pairs at the long-delay baseline rate plus
/// a flat accidental background from dark counts.
struct CountsModel {
    double pair_rate = 1000.0;            // coincidences per second at baseline
    double integration_time_s = 1.0;
    double dark_coincidence_rate = 0.0;   // flat accidentals per second
    std::uint64_t rng_seed = 12345;
};

void validate(const CountsModel& model);

/// Poisson draws per grid point, mean
///   pair_rate * t * (value / long_delay_baseline) + dark_rate * t.
/// A zero baseline contributes no pair term. Sampling is sequential in
/// grid order (loss-major), so a fixed seed fixes the whole matrix.
std::vector<std::vector<std::int64_t>> synthesize_counts(const ScanResult& scan,
                                                         const CountsModel& model);

/// Scan CSV with `counts,seed` appended to every row.
std::string counts_to_csv(const ScanResult& scan,
                          const std::vector<std::vector<std::int64_t>>& counts,
                          const CountsModel& model);

}  // namespace lossy

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lossy/dilation.hpp"
#include "lossy/matrix.hpp"
#include "lossy/two_photon.hpp"

namespace lossy {

enum class Observable { p12, p13, p23, map };

std::string to_string(Observable o);
Observable observable_from_string(const std::string& s);

/// Delay-vs-loss scan of the three-mode lossy interferometer. The photon
/// pair always enters the two interferometer ports (1 and 2); mode 3 is
/// the loss channel of the dilated splitter.
struct ScanConfig {
    std::vector<double> tau_grid_ps;
    std::vector<double> losses;
    LossConvention convention = LossConvention::amplitude;
    PhotonPairSource source;
    Observable observable = Observable::p12;
    bool oracle_check = false;
};

/// 81 delays over [-2, 2] ps.
std::vector<double> default_tau_grid();

void validate(const ScanConfig& cfg);

nlohmann::json scan_config_to_json(const ScanConfig& cfg);
ScanConfig scan_config_from_json(const nlohmann::json& j);

struct ScanResult {
    ScanConfig config;
    /// values[i][j]: observable at losses[i], tau_grid_ps[j]. For the map
    /// observable this holds the map totals; the maps themselves are in
    /// `maps` with the same indexing.
    std::vector<std::vector<double>> values;
    std::vector<std::vector<CoincidenceMap>> maps;
    std::vector<double> long_delay_baseline;  // per loss, coherence 0
    std::vector<double> zero_delay_value;     // per loss, coherence xi
    double oracle_max_deviation = 0.0;        // populated when oracle_check
};

ScanResult run_scan(const ScanConfig& cfg);

/// eta for a given loss under the chosen convention:
/// amplitude keeps eta = 1 - loss, power keeps eta = sqrt(1 - loss).
double eta_from_loss(double loss, LossConvention convention);

/// Dilated splitter transfer matrix at a given eta, always 3x3 (the
/// lossless case is padded with an untouched third mode).
ComplexMatrix dilated_splitter_matrix(double eta);

enum class VisibilityMetric { dip, peak, michelson };

std::string to_string(VisibilityMetric m);
VisibilityMetric visibility_metric_from_string(const std::string& s);

/// dip: 1 - zero/long; peak: zero/long - 1; michelson: |z-l|/(z+l).
/// Throws on a zero denominator.
double visibility(double zero_delay, double long_delay, VisibilityMetric metric);

/// Loss (amplitude convention) at which the zero-delay and long-delay
/// P12 curves meet. Solving (xi/2)c = (xi/8)(1-c)^2 for c = cos^2 theta
/// gives 4c = (1-c)^2, independent of xi; the root in [0,1] is
/// c = 3 - 2*sqrt(2) and the loss is 1 - sqrt(c) = 2 - sqrt(2).
double crossing_loss(double xi);

/// One row per (loss, tau): `loss,tau_ps,gamma,value,observable,convention`.
/// The map observable emits one row per output pair with observable set
/// to P11, P12, ... instead.
std::string scan_to_csv(const ScanResult& result);

}  // namespace lossy

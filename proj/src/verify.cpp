#include "lossy/verify.hpp"

#include <cmath>
#include <random>
#include <string>

#include "lossy/dilation.hpp"
#include "lossy/matrix.hpp"
#include "lossy/netlist.hpp"
#include "lossy/random.hpp"
#include "lossy/scan.hpp"
#include "lossy/svd.hpp"
#include "lossy/two_photon.hpp"

namespace lossy {

namespace {

struct DeviationTracker {
    double max = 0.0;
    std::string worst;

    void record(double dev, const std::string& label) {
        if (dev > max) {
            max = dev;
            worst = label;
        }
    }
};

SuiteResult finish(const std::string& name, int cases, const DeviationTracker& t, double tol) {
    SuiteResult r;
    r.name = name;
    r.cases = cases;
    r.max_deviation = t.max;
    r.tolerance = tol;
    r.passed = std::isfinite(t.max) && t.max < tol;
    r.worst_case = t.worst;
    return r;
}

std::string size_label(const char* what, int trial, std::size_t n) {
    return std::string(what) + " trial " + std::to_string(trial) + ", n=" + std::to_string(n);
}

SuiteResult suite_svd_reconstruction(int trials, std::mt19937_64& gen) {
    DeviationTracker t;
    int cases = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ComplexMatrix a = random_contraction(n, gen);
        const SvdFactors f = svd(a);
        t.record(max_abs_diff(reconstruct(f), a), size_label("reconstruct", trial, n));
        t.record(max_abs_diff(multiply(dagger(f.V), f.V), ComplexMatrix::identity(n)),
                 size_label("V unitarity", trial, n));
        t.record(max_abs_diff(multiply(f.U, dagger(f.U)), ComplexMatrix::identity(n)),
                 size_label("U unitarity", trial, n));
        ++cases;
    }
    return finish("svd_reconstruction", cases, t, 1e-10);
}

SuiteResult suite_dilation_unitarity(int trials, std::mt19937_64& gen) {
    DeviationTracker t;
    int cases = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ComplexMatrix a = random_contraction(n, gen);
        const DilatedUnitary d = dilate(make_lossy_transform(a));
        const std::size_t total = d.matrix.rows();
        t.record(max_abs_diff(multiply(dagger(d.matrix), d.matrix), ComplexMatrix::identity(total)),
                 size_label("unitarity", trial, n));
        ComplexMatrix block(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) block(r, c) = d.matrix(r, c);
        }
        t.record(max_abs_diff(block, a), size_label("block recovery", trial, n));
        ++cases;
    }
    return finish("dilation_unitarity", cases, t, 1e-10);
}

SuiteResult suite_oracle_equivalence(int trials, std::mt19937_64& gen) {
    DeviationTracker t;
    int cases = 0;
    PhotonPairSource source;

    // Closed forms against the density-matrix oracle on the three-mode
    // device, 21 theta values x 11 gamma values.
    for (int it = 0; it <= 20; ++it) {
        const double theta = (M_PI / 2.0) * it / 20.0;
        const ComplexMatrix m3 = dilated_splitter_matrix(std::cos(theta));
        for (int ig = 0; ig <= 10; ++ig) {
            const double gamma = ig / 10.0;
            const std::string label = "theta=" + std::to_string(theta) +
                                      ", gamma=" + std::to_string(gamma);
            t.record(std::abs(p12_closed(theta, gamma) - oracle_coincidence(m3, source, gamma, 1, 2)),
                     "P12 " + label);
            t.record(std::abs(p13_closed(theta, gamma) - oracle_coincidence(m3, source, gamma, 1, 3)),
                     "P13 " + label);
            ++cases;
        }
    }

    // Random unitaries, random source/output ports, the four gamma values.
    const double gammas[] = {0.0, 0.3, 0.87, 1.0};
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 3 + trial % 3;
        const ComplexMatrix u = random_unitary(n, gen);
        PhotonPairSource s;
        s.port_a = 1 + static_cast<int>(gen() % n);
        do {
            s.port_b = 1 + static_cast<int>(gen() % n);
        } while (s.port_b == s.port_a);
        const int out_m = 1 + static_cast<int>(gen() % n);
        const int out_n = 1 + static_cast<int>(gen() % n);
        for (double gamma : gammas) {
            const double closed = coincidence(u, s, gamma, out_m, out_n);
            const double oracle = oracle_coincidence(u, s, gamma, out_m, out_n);
            t.record(std::abs(closed - oracle), size_label("random unitary", trial, n) +
                                                    ", gamma=" + std::to_string(gamma));
            ++cases;
        }
    }
    return finish("oracle_equivalence", cases, t, 1e-12);
}

SuiteResult suite_normalization(int trials, std::mt19937_64& gen) {
    DeviationTracker t;
    int cases = 0;
    const double gammas[] = {0.0, 0.3, 0.87, 1.0};
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ComplexMatrix u = random_unitary(n, gen);
        PhotonPairSource s;
        s.port_a = 1 + static_cast<int>(gen() % n);
        do {
            s.port_b = 1 + static_cast<int>(gen() % n);
        } while (s.port_b == s.port_a);
        for (double gamma : gammas) {
            const double total = coincidence_map(u, s, gamma).total();
            t.record(std::abs(total - 1.0), size_label("map total", trial, n) +
                                                ", gamma=" + std::to_string(gamma));
            ++cases;
        }
    }
    return finish("normalization", cases, t, 1e-12);
}

SuiteResult suite_phase_invariance(int trials, std::mt19937_64& gen) {
    DeviationTracker t;
    int cases = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ComplexMatrix u = random_unitary(n, gen);
        PhotonPairSource s;
        s.port_a = 1 + static_cast<int>(gen() % n);
        do {
            s.port_b = 1 + static_cast<int>(gen() % n);
        } while (s.port_b == s.port_a);
        const double gamma = static_cast<double>(gen() >> 11) * 0x1.0p-53;

        ComplexMatrix gauged = u;
        const std::size_t col = gen() % n;
        const std::size_t row = gen() % n;
        const double phi_col = 2.0 * M_PI * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
        const double phi_row = 2.0 * M_PI * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
        const cplx pc = std::polar(1.0, phi_col);
        const cplx pr = std::polar(1.0, phi_row);
        for (std::size_t r = 0; r < n; ++r) gauged(r, col) *= pc;
        for (std::size_t c = 0; c < n; ++c) gauged(row, c) *= pr;

        const CoincidenceMap base = coincidence_map(u, s, gamma);
        const CoincidenceMap shifted = coincidence_map(gauged, s, gamma);
        for (int m = 1; m <= static_cast<int>(n); ++m) {
            for (int nn = m; nn <= static_cast<int>(n); ++nn) {
                t.record(std::abs(base.at(m, nn) - shifted.at(m, nn)),
                         size_label("gauging", trial, n));
                ++cases;
            }
        }
    }
    return finish("phase_invariance", cases, t, 1e-14);
}

SuiteResult suite_netlist_roundtrip(int trials, std::mt19937_64& gen) {
    DeviationTracker t;
    int cases = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const ComplexMatrix u = random_unitary(n, gen);
        const Netlist nl = decompose(u);
        t.record(max_abs_diff(compile_netlist(nl), u), size_label("decompose", trial, n));
        const Netlist reparsed = parse_netlist(serialize_netlist(nl));
        t.record(reparsed == nl ? 0.0 : 1.0, size_label("serialize round-trip", trial, n));
        ++cases;
    }
    for (int i = 0; i < 50; ++i) {
        const double theta = (M_PI / 2.0) * i / 49.0;
        const ComplexMatrix compiled = compile_netlist(lossy_mzi_netlist(theta));
        const ComplexMatrix dilated = dilated_splitter_matrix(std::cos(theta));
        t.record(max_abs_diff(compiled, dilated), "mzi theta=" + std::to_string(theta));
        ++cases;
    }
    return finish("netlist_roundtrip", cases, t, 1e-8);
}

SuiteResult suite_crossing(std::mt19937_64& gen) {
    DeviationTracker t;
    // Zero-delay minus long-delay P12 changes sign exactly once in loss;
    // bracket the root and compare with the closed-form location.
    const auto imbalance = [](double loss, double xi) {
        const double theta = std::acos(1.0 - loss);
        return p12_closed(theta, xi) - p12_closed(theta, 0.0);
    };
    int cases = 0;
    for (int i = 0; i < 3; ++i) {
        const double xi = i == 0 ? 1.0 : (i == 1 ? 0.87 : 0.25 + 0.5 * (static_cast<double>(gen() >> 11) * 0x1.0p-53));
        double lo = 0.0;
        double hi = 1.0;
        for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (imbalance(mid, xi) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double found = 0.5 * (lo + hi);
        t.record(std::abs(found - crossing_loss(xi)), "xi=" + std::to_string(xi));
        ++cases;
    }
    return finish("crossing", cases, t, 1e-10);
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
    std::mt19937_64 gen(options.seed);
    VerifyReport report;
    report.suites.push_back(suite_svd_reconstruction(options.trials, gen));
    report.suites.push_back(suite_dilation_unitarity(options.trials, gen));
    report.suites.push_back(suite_oracle_equivalence(options.trials, gen));
    report.suites.push_back(suite_normalization(options.trials, gen));
    report.suites.push_back(suite_phase_invariance(options.trials, gen));
    report.suites.push_back(suite_netlist_roundtrip(options.trials, gen));
    report.suites.push_back(suite_crossing(gen));
    if (options.inject_failure) {
        SuiteResult injected;
        injected.name = "injected_failure";
        injected.cases = 1;
        injected.max_deviation = 1.0;
        injected.tolerance = 0.0;
        injected.passed = false;
        injected.worst_case = "deliberate failure requested via options";
        report.suites.push_back(injected);
    }
    report.all_passed = true;
    for (const SuiteResult& s : report.suites) report.all_passed = report.all_passed && s.passed;
    return report;
}

nlohmann::json verify_report_to_json(const VerifyReport& report) {
    nlohmann::json suites = nlohmann::json::array();
    for (const SuiteResult& s : report.suites) {
        suites.push_back({{"name", s.name},
                          {"cases", s.cases},
                          {"max_deviation", s.max_deviation},
                          {"tolerance", s.tolerance},
                          {"passed", s.passed},
                          {"worst_case", s.worst_case}});
    }
    return nlohmann::json{{"suites", suites}, {"all_passed", report.all_passed}};
}

}  // namespace lossy

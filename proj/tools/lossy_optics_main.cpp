#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lossy/counts.hpp"
#include "lossy/dilation.hpp"
#include "lossy/matrix_io.hpp"
#include "lossy/netlist.hpp"
#include "lossy/scan.hpp"
#include "lossy/two_photon.hpp"
#include "lossy/verify.hpp"
#include "lossy/version.hpp"

namespace {

using lossy::ComplexMatrix;
using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const std::string& command, const json& config,
                    const std::vector<std::string>& outputs, const json& seed,
                    const std::string& path) {
    const json manifest{{"command", command},
                        {"config", config},
                        {"outputs", outputs},
                        {"version", lossy::kVersion},
                        {"seed", seed}};
    write_file(path, manifest.dump(2) + "\n");
    std::cout << "wrote: " << path << "\n";
}

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("LOSSY_OPTICS_SEED");
    if (v == nullptr || *v == '\0') return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (errno != 0 || end == v || *end != '\0') {
        throw std::invalid_argument("LOSSY_OPTICS_SEED must be an unsigned integer, got '" +
                                    std::string(v) + "'");
    }
    return static_cast<std::uint64_t>(parsed);
}

double parse_number(const std::string& token) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + token + "'");
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size()) throw std::invalid_argument("not a number: '" + token + "'");
    return value;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

/// "grid(a,b,n)" for n evenly spaced values over [a,b], or "v1,v2,...".
std::vector<double> parse_value_list(const std::string& text) {
    if (text.rfind("grid(", 0) == 0) {
        if (text.back() != ')') throw std::invalid_argument("malformed grid spec: " + text);
        const std::vector<std::string> parts = split_commas(text.substr(5, text.size() - 6));
        if (parts.size() != 3) {
            throw std::invalid_argument("grid spec needs grid(start,stop,count): " + text);
        }
        const double start = parse_number(parts[0]);
        const double stop = parse_number(parts[1]);
        const double count_raw = parse_number(parts[2]);
        const int count = static_cast<int>(count_raw);
        if (count < 1 || count != count_raw) {
            throw std::invalid_argument("grid count must be a positive integer: " + text);
        }
        std::vector<double> values(count);
        for (int i = 0; i < count; ++i) {
            values[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
        }
        return values;
    }
    std::vector<double> values;
    for (const std::string& part : split_commas(text)) values.push_back(parse_number(part));
    return values;
}

std::string default_out_prefix(const std::string& input, const char* suffix) {
    const std::filesystem::path p(input);
    return (p.parent_path() / p.stem()).string() + suffix;
}

int fail(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
}

// ---------------------------------------------------------------- dilate

struct DilateArgs {
    std::string input;
    std::string out_prefix;
};

int run_dilate(const DilateArgs& args) {
    try {
        const ComplexMatrix m = lossy::matrix_from_text(read_file(args.input));
        const lossy::LossyTransform t = lossy::make_lossy_transform(m);
        const lossy::DilatedUnitary d = lossy::dilate(t);

        const std::string prefix =
            args.out_prefix.empty() ? default_out_prefix(args.input, ".dilated") : args.out_prefix;
        const std::string unitary_path = prefix + ".json";
        write_file(unitary_path, lossy::dilated_to_json(d).dump(2) + "\n");
        std::vector<std::string> outputs{unitary_path};

        std::cout << "system modes: " << d.system_ports.size() << "\n";
        std::cout << "ancilla modes: " << d.ancilla_ports.size() << "\n";
        for (std::size_t i = 0; i < d.thetas.size(); ++i) {
            std::cout << "theta[" << (i + 1) << "] = " << lossy::format_double(d.thetas[i])
                      << " rad\n";
        }

        if (d.matrix.rows() <= 8) {
            const std::string netlist_path = prefix + ".netlist";
            write_file(netlist_path, lossy::serialize_netlist(lossy::decompose(d.matrix)));
            outputs.push_back(netlist_path);
        } else {
            std::cout << "netlist skipped: decomposition supports at most 8 modes\n";
        }
        for (const std::string& path : outputs) std::cout << "wrote: " << path << "\n";

        write_manifest("dilate", json{{"input", args.input}, {"out", prefix}}, outputs, nullptr,
                       prefix + ".manifest.json");
        return 0;
    } catch (const lossy::gain_error& e) {
        std::cerr << "gain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

// ------------------------------------------------- compile / decompose

int run_compile(const std::string& input, const std::string& out) {
    try {
        const lossy::Netlist nl = lossy::parse_netlist(read_file(input));
        const ComplexMatrix m = lossy::compile_netlist(nl);
        const std::string text = lossy::matrix_to_json_text(m);
        if (out.empty()) {
            std::cout << text << "\n";
        } else {
            write_file(out, text + "\n");
            std::cout << "wrote: " << out << "\n";
            write_manifest("compile", json{{"input", input}, {"out", out}}, {out}, nullptr,
                           out + ".manifest.json");
        }
        return 0;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

int run_decompose(const std::string& input, const std::string& out) {
    try {
        const ComplexMatrix m = lossy::matrix_from_text(read_file(input));
        const std::string text = lossy::serialize_netlist(lossy::decompose(m));
        if (out.empty()) {
            std::cout << text;
        } else {
            write_file(out, text);
            std::cout << "wrote: " << out << "\n";
            write_manifest("decompose", json{{"input", input}, {"out", out}}, {out}, nullptr,
                           out + ".manifest.json");
        }
        return 0;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

int run_parse_check(const std::string& input) {
    try {
        const lossy::Netlist nl = lossy::parse_netlist(read_file(input));
        std::cout << "OK: " << nl.n_modes << " modes, " << nl.elements.size() << " elements\n";
        return 0;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

// ------------------------------------------------------------------ scan

struct ScanArgs {
    std::string config_path;
    std::string observable;
    std::string losses;
    std::string taus;
    double xi = 1.0;
    double coherence_time = 1.0;
    std::string convention;
    bool check = false;
    std::string out = "scan.csv";
    bool counts = false;
    double pair_rate = 1000.0;
    double integration_time = 1.0;
    double dark_rate = 0.0;
    std::uint64_t seed = 12345;
    // which flags were given explicitly (CLI count > 0)
    bool has_observable = false, has_losses = false, has_taus = false, has_xi = false,
         has_coherence = false, has_convention = false, has_seed = false, has_pair_rate = false,
         has_integration = false, has_dark_rate = false;
};

lossy::CountsModel counts_model_from_json(const json& j) {
    lossy::CountsModel model;
    model.pair_rate = j.value("pair_rate", model.pair_rate);
    model.integration_time_s = j.value("integration_time_s", model.integration_time_s);
    model.dark_coincidence_rate = j.value("dark_coincidence_rate", model.dark_coincidence_rate);
    model.rng_seed = j.value("rng_seed", model.rng_seed);
    return model;
}

json counts_model_to_json(const lossy::CountsModel& model) {
    return json{{"pair_rate", model.pair_rate},
                {"integration_time_s", model.integration_time_s},
                {"dark_coincidence_rate", model.dark_coincidence_rate},
                {"rng_seed", model.rng_seed}};
}

/// Accepts a bare scan config, a {"scan":..., "counts":...} pair, or a
/// full manifest (the "config" field is then unwrapped), so a previous
/// run's manifest reproduces its outputs.
void load_scan_request(const json& j, lossy::ScanConfig& cfg,
                       std::optional<lossy::CountsModel>& counts) {
    if (j.is_object() && j.contains("command") && j.contains("config")) {
        load_scan_request(j.at("config"), cfg, counts);
        return;
    }
    if (j.is_object() && j.contains("scan")) {
        cfg = lossy::scan_config_from_json(j.at("scan"));
        if (j.contains("counts") && !j.at("counts").is_null()) {
            counts = counts_model_from_json(j.at("counts"));
        }
        return;
    }
    cfg = lossy::scan_config_from_json(j);
}

int run_scan_command(const ScanArgs& args, const std::string& command_name) {
    try {
        lossy::ScanConfig cfg;
        cfg.tau_grid_ps = lossy::default_tau_grid();
        cfg.losses = {0.0};
        std::optional<lossy::CountsModel> counts_model;
        if (!args.config_path.empty()) {
            load_scan_request(json::parse(read_file(args.config_path)), cfg, counts_model);
        }
        if (args.has_observable) cfg.observable = lossy::observable_from_string(args.observable);
        if (args.has_losses) cfg.losses = parse_value_list(args.losses);
        if (args.has_taus) cfg.tau_grid_ps = parse_value_list(args.taus);
        if (args.has_xi) cfg.source.visibility = args.xi;
        if (args.has_coherence) cfg.source.coherence_time_ps = args.coherence_time;
        if (args.has_convention) cfg.convention = lossy::loss_convention_from_string(args.convention);
        if (args.check) cfg.oracle_check = true;
        lossy::validate(cfg);

        if (args.counts && !counts_model) counts_model = lossy::CountsModel{};
        if (counts_model) {
            if (args.has_pair_rate) counts_model->pair_rate = args.pair_rate;
            if (args.has_integration) counts_model->integration_time_s = args.integration_time;
            if (args.has_dark_rate) counts_model->dark_coincidence_rate = args.dark_rate;
            if (args.has_seed) {
                counts_model->rng_seed = args.seed;
            } else if (const auto env = env_seed()) {
                counts_model->rng_seed = *env;
            }
        }

        const lossy::ScanResult result = lossy::run_scan(cfg);
        std::string csv;
        if (counts_model) {
            const auto counts = lossy::synthesize_counts(result, *counts_model);
            csv = lossy::counts_to_csv(result, counts, *counts_model);
        } else {
            csv = lossy::scan_to_csv(result);
        }
        write_file(args.out, csv);
        std::cout << "wrote: " << args.out << " (" << cfg.losses.size() << " losses x "
                  << cfg.tau_grid_ps.size() << " delays)\n";

        json config{{"scan", lossy::scan_config_to_json(cfg)},
                    {"counts", counts_model ? counts_model_to_json(*counts_model) : json(nullptr)}};
        write_manifest(command_name, config, {args.out},
                       counts_model ? json(counts_model->rng_seed) : json(nullptr),
                       args.out + ".manifest.json");

        if (cfg.oracle_check) {
            std::cout << "oracle max deviation: " << lossy::format_double(result.oracle_max_deviation)
                      << "\n";
            if (!(result.oracle_max_deviation < 1e-12)) {
                std::cerr << "oracle deviation exceeds 1e-12\n";
                return 3;
            }
        }
        return 0;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

// --------------------------------------------------------------- figures

int run_figures(const std::string& figure, const std::string& out_dir, double xi) {
    ScanArgs args;
    args.xi = xi;
    args.has_xi = true;
    args.has_observable = true;
    args.has_losses = true;
    if (figure == "fig2") {
        args.observable = "P12";
        args.losses = "grid(0,1,41)";
    } else if (figure == "fig3") {
        args.observable = "P12";
        args.losses = "0.07,0.26,0.96";
    } else {
        args.observable = "P13";
        args.losses = "0,0.26,0.96";
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    args.out = (std::filesystem::path(out_dir) / (figure + ".csv")).string();
    return run_scan_command(args, "figures " + figure);
}

// ---------------------------------------------------------------- verify

int run_verify_command(lossy::VerifyOptions options, bool seed_given,
                       const std::string& report_path) {
    try {
        if (!seed_given) {
            if (const auto env = env_seed()) options.seed = *env;
        }
        const lossy::VerifyReport report = lossy::run_verify(options);
        std::printf("%-22s %8s %15s %11s  %s\n", "suite", "cases", "max deviation", "tolerance",
                    "status");
        for (const lossy::SuiteResult& s : report.suites) {
            std::printf("%-22s %8d %15.3e %11.1e  %s\n", s.name.c_str(), s.cases, s.max_deviation,
                        s.tolerance, s.passed ? "PASS" : "FAIL");
            if (!s.passed) {
                std::printf("  worst case: %s\n", s.worst_case.c_str());
            }
        }
        if (!report_path.empty()) {
            write_file(report_path, lossy::verify_report_to_json(report).dump(2) + "\n");
            std::cout << "wrote: " << report_path << "\n";
        }
        return report.all_passed ? 0 : 3;
    } catch (const std::exception& e) {
        return fail(e);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lossy linear optics: dilation, netlists, two-photon interference"};
    app.require_subcommand(1);
    int rc = 0;

    DilateArgs dilate_args;
    CLI::App* dilate = app.add_subcommand(
        "dilate", "Embed a lossy transformation into a unitary with ancilla modes");
    dilate->add_option("input", dilate_args.input, "matrix file (JSON rows of [re,im] or text)")
        ->required();
    dilate->add_option("--out", dilate_args.out_prefix, "output prefix (default: <input>.dilated)");
    dilate->callback([&] { rc = run_dilate(dilate_args); });

    std::string compile_in, compile_out;
    CLI::App* compile = app.add_subcommand("compile", "Compile a netlist to its transfer matrix");
    compile->add_option("input", compile_in, "netlist file")->required();
    compile->add_option("--out", compile_out, "matrix JSON output (default: stdout)");
    compile->callback([&] { rc = run_compile(compile_in, compile_out); });

    std::string decompose_in, decompose_out;
    CLI::App* decompose =
        app.add_subcommand("decompose", "Decompose a unitary into couplers and phases");
    decompose->add_option("input", decompose_in, "matrix file")->required();
    decompose->add_option("--out", decompose_out, "netlist output (default: stdout)");
    decompose->callback([&] { rc = run_decompose(decompose_in, decompose_out); });

    std::string parse_in;
    CLI::App* parse_check = app.add_subcommand("parse-check", "Validate a netlist file");
    parse_check->add_option("input", parse_in, "netlist file")->required();
    parse_check->callback([&] { rc = run_parse_check(parse_in); });

    ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand("scan", "Delay scan of the lossy interferometer");
    scan->add_option("--config", scan_args.config_path, "scan config JSON (or a prior manifest)");
    CLI::Option* obs_opt =
        scan->add_option("--observable", scan_args.observable, "P12, P13, P23 or map");
    CLI::Option* losses_opt =
        scan->add_option("--losses", scan_args.losses, "comma list or grid(start,stop,count)");
    CLI::Option* taus_opt =
        scan->add_option("--taus", scan_args.taus, "delays in ps, comma list or grid(...)");
    CLI::Option* xi_opt = scan->add_option("--xi", scan_args.xi, "source visibility in [0,1]");
    CLI::Option* coh_opt =
        scan->add_option("--coherence-time", scan_args.coherence_time, "coherence time in ps");
    CLI::Option* conv_opt =
        scan->add_option("--convention", scan_args.convention, "loss convention: amplitude or power");
    scan->add_flag("--check", scan_args.check, "cross-check every grid point against the oracle");
    scan->add_option("--out", scan_args.out, "CSV output path");
    scan->add_flag("--counts", scan_args.counts, "emit synthetic Poisson counts");
    CLI::Option* rate_opt =
        scan->add_option("--pair-rate", scan_args.pair_rate, "pairs/s at the long-delay baseline");
    CLI::Option* time_opt =
        scan->add_option("--integration-time", scan_args.integration_time, "seconds per grid point");
    CLI::Option* dark_opt =
        scan->add_option("--dark-rate", scan_args.dark_rate, "flat accidental coincidences/s");
    CLI::Option* seed_opt = scan->add_option("--seed", scan_args.seed, "counts RNG seed");
    scan->callback([&] {
        scan_args.has_observable = obs_opt->count() > 0;
        scan_args.has_losses = losses_opt->count() > 0;
        scan_args.has_taus = taus_opt->count() > 0;
        scan_args.has_xi = xi_opt->count() > 0;
        scan_args.has_coherence = coh_opt->count() > 0;
        scan_args.has_convention = conv_opt->count() > 0;
        scan_args.has_seed = seed_opt->count() > 0;
        scan_args.has_pair_rate = rate_opt->count() > 0;
        scan_args.has_integration = time_opt->count() > 0;
        scan_args.has_dark_rate = dark_opt->count() > 0;
        rc = run_scan_command(scan_args, "scan");
    });

    std::string figure, figures_dir = ".";
    double figures_xi = 0.87;
    CLI::App* figures = app.add_subcommand("figures", "Reference datasets for the three figures");
    figures->add_option("figure", figure, "fig2, fig3 or fig4")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
    figures->add_option("--out-dir", figures_dir, "output directory");
    figures->add_option("--xi", figures_xi, "source visibility (default 0.87)");
    figures->callback([&] { rc = run_figures(figure, figures_dir, figures_xi); });

    lossy::VerifyOptions verify_options;
    std::string verify_report_path;
    CLI::App* verify = app.add_subcommand("verify", "Run the oracle and invariant suites");
    verify->add_option("--trials", verify_options.trials, "random trials per suite")
        ->check(CLI::PositiveNumber);
    CLI::Option* vseed_opt = verify->add_option("--seed", verify_options.seed, "RNG seed");
    verify->add_option("--report", verify_report_path, "JSON report output path");
    verify->add_flag("--inject-failure", verify_options.inject_failure)->group("");
    verify->callback(
        [&] { rc = run_verify_command(verify_options, vseed_opt->count() > 0, verify_report_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return rc;
}

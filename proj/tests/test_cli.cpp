#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lossy/dilation.hpp"
#include "lossy/matrix.hpp"
#include "lossy/matrix_io.hpp"
#include "lossy/netlist.hpp"

namespace fs = std::filesystem;

namespace {

const char* kCli = LOSSY_OPTICS_CLI_PATH;

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "lossy-optics-cli-tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(kCli) + " " + args;
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("cli: dilate then compile reproduces the unitary") {
    const fs::path dir = scratch_dir();
    const lossy::ComplexMatrix input = lossy::lossy_beamsplitter(0.5).matrix;
    spit(dir / "in.txt", lossy::matrix_to_csv_text(input));

    CHECK(run_cli("dilate " + (dir / "in.txt").string() + " --out " + (dir / "d").string() +
                  " > " + (dir / "dilate.log").string()) == 0);
    const std::string log = slurp(dir / "dilate.log");
    CHECK(log.find("ancilla modes: 1") != std::string::npos);
    CHECK(log.find("theta[1] = 1.0471975511965979") != std::string::npos);

    const auto d = lossy::dilated_from_json(nlohmann::json::parse(slurp(dir / "d.json")));
    REQUIRE(d.matrix.rows() == 3);
    CHECK(is_unitary(d.matrix, 1e-10));
    lossy::ComplexMatrix block(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) block(r, c) = d.matrix(r, c);
    CHECK(lossy::max_abs_diff(block, input) < 1e-12);

    CHECK(run_cli("compile " + (dir / "d.netlist").string() + " --out " +
                  (dir / "compiled.json").string() + " >/dev/null") == 0);
    const lossy::ComplexMatrix compiled =
        lossy::matrix_from_json_text(slurp(dir / "compiled.json"));
    CHECK(lossy::max_abs_diff(compiled, d.matrix) < 1e-8);

    // manifest names the artifacts
    const auto manifest = nlohmann::json::parse(slurp(dir / "d.manifest.json"));
    CHECK(manifest["command"] == "dilate");
    CHECK(manifest["version"] == "0.1.0");
    CHECK(manifest["outputs"].size() == 2);
}

TEST_CASE("cli: gain exits 2, parse failure exits 1") {
    const fs::path dir = scratch_dir();
    spit(dir / "gain.txt", "2 0\n0 2\n");
    CHECK(run_cli("dilate " + (dir / "gain.txt").string() + " >/dev/null 2>&1") == 2);
    spit(dir / "junk.txt", "not a matrix\n");
    CHECK(run_cli("dilate " + (dir / "junk.txt").string() + " >/dev/null 2>&1") == 1);
    CHECK(run_cli("dilate " + (dir / "missing.txt").string() + " >/dev/null 2>&1") == 1);
}

TEST_CASE("cli: decompose and parse-check") {
    const fs::path dir = scratch_dir();
    const double r = 1.0 / std::sqrt(2.0);
    const lossy::ComplexMatrix u{{lossy::cplx{r, 0}, lossy::cplx{0, r}},
                                 {lossy::cplx{0, r}, lossy::cplx{r, 0}}};
    spit(dir / "u.txt", lossy::matrix_to_csv_text(u));
    CHECK(run_cli("decompose " + (dir / "u.txt").string() + " --out " +
                  (dir / "u.netlist").string() + " >/dev/null") == 0);
    CHECK(run_cli("parse-check " + (dir / "u.netlist").string() + " >/dev/null") == 0);

    spit(dir / "bad.netlist", "modes 2\ncoupler 1 1 0.5\n");
    CHECK(run_cli("parse-check " + (dir / "bad.netlist").string() + " >/dev/null 2>&1") == 1);

    // non-unitary input cannot be decomposed
    spit(dir / "half.txt", "0.5 0\n0 0.5\n");
    CHECK(run_cli("decompose " + (dir / "half.txt").string() + " >/dev/null 2>&1") == 1);
}

TEST_CASE("cli: scan writes CSV and a reproducible manifest") {
    const fs::path dir = scratch_dir();
    const std::string out = (dir / "scan.csv").string();
    CHECK(run_cli("scan --observable P12 --losses 0,1 --taus 'grid(-2,2,5)' --xi 0.87 --out " + out +
                  " >/dev/null") == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("loss,tau_ps,gamma,value,observable,convention\n", 0) == 0);
    CHECK(count_lines(csv) == 1 + 2 * 5);

    // replaying the manifest reproduces the CSV bit for bit
    const std::string replay = (dir / "replay.csv").string();
    CHECK(run_cli("scan --config " + out + ".manifest.json --out " + replay + " >/dev/null") == 0);
    CHECK(slurp(replay) == csv);

    CHECK(run_cli("scan --losses 3 >/dev/null 2>&1") == 1);
    CHECK(run_cli("scan --observable P99 >/dev/null 2>&1") == 1);
}

TEST_CASE("cli: counts respect the seed environment override") {
    const fs::path dir = scratch_dir();
    const std::string out = (dir / "counts.csv").string();
    CHECK(run_cli("scan --losses 0.5 --taus 'grid(-1,1,5)' --counts --seed 1 --out " + out +
                  " >/dev/null") == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("loss,tau_ps,gamma,value,observable,convention,counts,seed\n", 0) == 0);
    CHECK(csv.find(",1\n") != std::string::npos);

    const std::string env_out = (dir / "counts_env.csv").string();
    const std::string cmd = std::string("LOSSY_OPTICS_SEED=777 ") + kCli +
                            " scan --losses 0.5 --taus 'grid(-1,1,5)' --counts --out " + env_out +
                            " >/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(slurp(env_out).find(",777\n") != std::string::npos);
}

TEST_CASE("cli: figure presets") {
    const fs::path dir = scratch_dir() / "figs";
    CHECK(run_cli("figures fig4 --out-dir " + dir.string() + " >/dev/null") == 0);
    const std::string csv = slurp(dir / "fig4.csv");
    CHECK(csv.find(",P13,") != std::string::npos);
    CHECK(count_lines(csv) == 1 + 3 * 81);
    CHECK(run_cli("figures fig9 --out-dir " + dir.string() + " >/dev/null 2>&1") != 0);
}

TEST_CASE("cli: verify exit codes") {
    const fs::path dir = scratch_dir();
    const std::string report = (dir / "report.json").string();
    CHECK(run_cli("verify --trials 5 --report " + report + " >/dev/null") == 0);
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j["all_passed"] == true);
    CHECK(j["suites"].size() == 7);
    CHECK(run_cli("verify --trials 5 --inject-failure >/dev/null 2>&1") == 3);
}

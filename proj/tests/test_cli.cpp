// Drives the built CLI binary end to end: numbers on stdout, exit codes,
// format switches, and byte-level determinism.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int g_failures = 0;

#define REQUIRE(cond, msg)                                                   \
    do {                                                                     \
        if (!(cond)) {                                                       \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << "  "    \
                      << msg << "\n";                                        \
            ++g_failures;                                                    \
        }                                                                    \
    } while (0)

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(WEDGECAS_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

// parse CSV: header row + data rows of doubles
std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           std::vector<std::string>* header = nullptr) {
    std::vector<std::vector<double>> rows;
    std::istringstream ss(text);
    std::string line;
    bool first = true;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        if (first) {
            first = false;
            if (header)
                while (std::getline(ls, cell, ',')) header->push_back(cell);
            continue;
        }
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::atof(cell.c_str()));
        rows.push_back(std::move(row));
    }
    return rows;
}

double relerr(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

int main() {
    // tensor closed form, p = 2, vacuum
    {
        auto r = run_cli("tensor --p 2 --r 1 --format csv");
        REQUIRE(r.exit_code == 0, "tensor exit code");
        std::vector<std::string> header;
        auto rows = parse_csv(r.out, &header);
        REQUIRE(rows.size() == 1, "tensor row count");
        REQUIRE(header.size() == 5 && header[2] == "Theta_thth", "tensor csv header");
        REQUIRE(relerr(rows[0][2], -1.8997721932938e-2) < 1e-9,
                "Theta_thth value, got " << rows[0][2]);
    }
    // p = 1: zero row
    {
        auto r = run_cli("tensor --p 1 --r 1 --format csv");
        auto rows = parse_csv(r.out);
        REQUIRE(r.exit_code == 0 && rows.size() == 1, "p=1 tensor runs");
        for (int i = 1; i <= 4; ++i) REQUIRE(rows[0][i] == 0.0, "p=1 zero tensor");
    }
    // medium scaling: eps = 2.25 divides the vacuum values by 1.5
    {
        auto vac = parse_csv(run_cli("tensor --p 3 --r 1 --format csv").out);
        auto med =
            parse_csv(run_cli("tensor --p 3 --eps 2.25 --mu 1 --r 1 --format csv").out);
        REQUIRE(relerr(med[0][1] * 1.5, vac[0][1]) < 1e-12, "1/sqrt(eps mu) scaling");
    }
    // force: the worked numbers
    {
        auto r = run_cli("force --alpha 1e-4 --r 1cm --units cgs --format csv");
        REQUIRE(r.exit_code == 0, "force exit code");
        auto rows = parse_csv(r.out);
        REQUIRE(relerr(rows[0][1], 0.0043) < 0.05, "sigma 0.0043 dyn/cm^2, got "
                                                       << rows[0][1]);
        auto r4 = parse_csv(
            run_cli("force --alpha 1e-4 --r 1cm --units cgs --eps 4 --mu 1 --format csv")
                .out);
        REQUIRE(relerr(r4[0][1], 0.5 * rows[0][1]) < 1e-12, "eps mu = 4 halves sigma");
    }
    // force in natural units carries the tensor scalar: sigma = Theta_rr
    {
        auto f = parse_csv(run_cli("force --p 2 --r 1 --units natural --format csv").out);
        auto t = parse_csv(run_cli("tensor --p 2 --r 1 --format csv").out);
        REQUIRE(relerr(f[0][1], t[0][1]) < 1e-12, "sigma = Theta_rr identity");
        // 12-digit machine output round-trips to ~1e-11
        REQUIRE(relerr(f[0][1], -t[0][2] / 3.0) < 1e-11, "sigma = -Theta_thth/3");
    }
    // polder: midplane azimuthal force vanishes
    {
        auto r = run_cli("polder --p 2 --r 1 --format csv");
        auto rows = parse_csv(r.out);
        REQUIRE(r.exit_code == 0 && rows.size() == 1, "polder runs");
        REQUIRE(rows[0][2] < 0.0, "U < 0");
        REQUIRE(std::abs(rows[0][4]) < 1e-12 * std::abs(rows[0][3]),
                "midplane F_theta = 0");
    }
    // string: beta = 1 zeros; beta = p matches the wedge
    {
        auto flat = parse_csv(run_cli("string --beta 1 --r 1 --format csv").out);
        REQUIRE(flat[0][1] == 0.0 && flat[0][2] == 0.0, "flat space zeros");
        std::vector<std::string> header;
        auto cmp = parse_csv(run_cli("string --beta 2 --p 2 --r 1 --format csv").out,
                             &header);
        REQUIRE(header.back() == "max_rel_dev", "analogy column present");
        REQUIRE(cmp[0].back() < 1e-12, "beta = p analogy, dev " << cmp[0].back());
    }
    // json format carries the schema version
    {
        auto r = run_cli("tensor --p 2 --r 1 --format json");
        REQUIRE(r.exit_code == 0, "json exit code");
        REQUIRE(r.out.find("\"schema_version\": 1") != std::string::npos,
                "schema_version in json");
        REQUIRE(r.out.find("\"rows\"") != std::string::npos, "rows in json");
    }
    // sweep determinism: identical config -> byte-identical output
    {
        const std::string args =
            "sweep --quantity force --p 2 --from 0.5 --to 2 --steps 5 --format csv";
        auto a = run_cli(args);
        auto b = run_cli(args);
        REQUIRE(a.exit_code == 0, "sweep exit code");
        REQUIRE(!a.out.empty() && a.out == b.out, "sweep byte determinism");
        auto rows = parse_csv(a.out);
        REQUIRE(rows.size() == 5, "sweep row count");
        REQUIRE(rows[0][0] == 0.5 && rows[4][0] == 2.0, "sweep endpoints");
    }
    // polder oracle column
    {
        std::vector<std::string> header;
        auto rows = parse_csv(run_cli("polder --p 2 --r 1 --oracle --format csv").out,
                              &header);
        REQUIRE(header.back() == "rel_dev", "polder oracle columns");
        REQUIRE(rows.size() == 1 && rows[0].back() < 1e-3,
                "polder oracle agreement, dev " << rows[0].back());
    }
    // config file: values read, flags take precedence
    {
        const std::string cfg = "/tmp/wedgecas_cli_cfg.ini";
        FILE* f = fopen(cfg.c_str(), "w");
        REQUIRE(f != nullptr, "write config");
        fputs("[force]\nalpha = 1e-4\nunits = cgs\nr = 1cm\n", f);
        fclose(f);
        auto base = parse_csv(run_cli("force --config " + cfg + " --format csv").out);
        REQUIRE(relerr(base[0][1], 0.0043) < 0.05, "config file drives force");
        auto eps4 =
            parse_csv(run_cli("force --config " + cfg + " --eps 4 --format csv").out);
        REQUIRE(relerr(eps4[0][1], 0.5 * base[0][1]) < 1e-12,
                "flag overrides config (eps)");
        std::remove(cfg.c_str());
    }
    // validate subcommand: structured report, overall pass
    {
        auto r = run_cli("validate --format json");
        REQUIRE(r.exit_code == 0, "validate exit code");
        REQUIRE(r.out.find("\"all_pass\": true") != std::string::npos,
                "validate all_pass");
        REQUIRE(r.out.find("graf_addition_theorem") != std::string::npos,
                "validate lists checks");
    }
    // exit codes: usage errors and numerical failure
    {
        REQUIRE(run_cli("tensor --p 2 --no-such-flag").exit_code == 1, "bad flag -> 1");
        REQUIRE(run_cli("tensor").exit_code == 1, "missing geometry -> 1");
        REQUIRE(run_cli("polder --p 2 --theta 3.0 --r 1").exit_code == 1,
                "out-of-wedge theta -> 1");
        REQUIRE(run_cli("force --alpha 1e-4 --r 1cm --units natural").exit_code == 1,
                "length suffix in natural units -> 1");
        REQUIRE(run_cli("tensor --alpha 0.5 --oracle --r 1").exit_code == 1,
                "--oracle requires integer p");
        REQUIRE(run_cli("force --alpha 4.0 --r 1").exit_code == 1,
                "opening angle beyond pi -> 1");
        REQUIRE(run_cli("tensor --p 2 --r 1 --oracle --max-subdiv 1").exit_code == 2,
                "numerical failure -> 2");
    }

    if (g_failures == 0) {
        std::puts("cli smoke: all checks passed");
        return 0;
    }
    std::cerr << "cli smoke: " << g_failures << " failures\n";
    return 1;
}

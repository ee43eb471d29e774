// wedgecas: Casimir stress, wall force, and Casimir-Polder potential for a
// perfectly conducting wedge filled with a nondispersive medium.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <cstdio>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wedgecas/wedgecas.hpp"

namespace {

using json = nlohmann::json;
using namespace wedgecas;

enum class Format { table, csv, json_fmt };

std::string fmt_machine(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_human(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

// Rows of named doubles with a fixed column order.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void emit(const Table& t, Format f, const json& meta) {
    if (f == Format::json_fmt) {
        json out;
        out["meta"] = meta;
        out["meta"]["schema_version"] = 1;
        out["rows"] = json::array();
        for (const auto& r : t.rows) {
            json row;
            for (size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = r[i];
            out["rows"].push_back(row);
        }
        std::cout << out.dump(2) << "\n";
        return;
    }
    if (f == Format::csv) {
        for (size_t i = 0; i < t.columns.size(); ++i)
            std::cout << (i ? "," : "") << csv_quote(t.columns[i]);
        std::cout << "\n";
        for (const auto& r : t.rows) {
            for (size_t i = 0; i < r.size(); ++i)
                std::cout << (i ? "," : "") << fmt_machine(r[i]);
            std::cout << "\n";
        }
        return;
    }
    for (size_t i = 0; i < t.columns.size(); ++i)
        std::cout << (i ? "  " : "") << t.columns[i];
    std::cout << "\n";
    for (const auto& r : t.rows) {
        for (size_t i = 0; i < r.size(); ++i) {
            if (i) std::cout << "  ";
            std::cout << fmt_human(r[i]);
        }
        std::cout << "\n";
    }
}

UnitSystem parse_units(const std::string& s) {
    if (s == "natural") return UnitSystem::natural();
    if (s == "cgs") return UnitSystem::cgs();
    if (s == "si") return UnitSystem::si();
    throw CLI::ValidationError("--units", "expected natural|cgs|si");
}

Format parse_format(const std::string& s) {
    if (s == "table") return Format::table;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json_fmt;
    throw CLI::ValidationError("--format", "expected table|csv|json");
}

// Length with an optional unit suffix (m, cm, mm, um, nm), converted to the
// unit system's base length (cm for cgs, m for SI). Bare numbers are taken
// in the base unit.
double parse_length(const std::string& text, const UnitSystem& units) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--r", "not a number: " + text);
    }
    std::string suffix = text.substr(pos);
    if (suffix.empty()) return v;
    double meters;
    if (suffix == "m") meters = v;
    else if (suffix == "cm") meters = v * 1e-2;
    else if (suffix == "mm") meters = v * 1e-3;
    else if (suffix == "um") meters = v * 1e-6;
    else if (suffix == "nm") meters = v * 1e-9;
    else throw CLI::ValidationError("--r", "unknown length suffix: " + suffix);
    switch (units.kind) {
        case UnitSystem::Kind::si: return meters;
        case UnitSystem::Kind::cgs: return meters * 1e2;
        case UnitSystem::Kind::natural:
            throw CLI::ValidationError("--r",
                                       "length suffixes need --units cgs or si");
    }
    return v;
}

struct CommonOpts {
    double eps = 1.0;
    double mu = 1.0;
    std::string units = "natural";
    std::string format = "table";
    QuadratureSpec quad;

    void attach(CLI::App* cmd) {
        cmd->add_option("--eps", eps, "relative permittivity")->check(CLI::PositiveNumber);
        cmd->add_option("--mu", mu, "relative permeability")->check(CLI::PositiveNumber);
        cmd->add_option("--units", units, "unit system: natural|cgs|si");
        cmd->add_option("--format", format, "output format: table|csv|json");
        cmd->add_option("--rel-tol", quad.rel_tol, "quadrature relative tolerance");
        cmd->add_option("--abs-tol", quad.abs_tol, "quadrature absolute tolerance");
        cmd->add_option("--tail-cutoff", quad.tail_cutoff_scale,
                        "tail cutoff in decay lengths");
        cmd->add_option("--max-subdiv", quad.max_subdivisions,
                        "max adaptive subdivisions");
    }
    Medium medium() const { return Medium(eps, mu); }
    json meta(const std::string& command) const {
        json m;
        m["command"] = command;
        m["eps"] = eps;
        m["mu"] = mu;
        m["units"] = units;
        return m;
    }
};

int run_tensor(const CommonOpts& common, std::optional<int> p,
               std::optional<double> alpha, const std::vector<double>& rs,
               bool with_oracle) {
    if (!p && !alpha) throw CLI::ValidationError("tensor", "need --p or --alpha");
    if (with_oracle && !p)
        throw CLI::ValidationError("tensor", "--oracle requires integer --p");
    const Medium med = common.medium();

    Table t;
    t.columns = {"r", "Theta_rr", "Theta_thth", "Theta_zz", "w"};
    if (with_oracle)
        for (const char* c : {"oracle_rr", "oracle_thth", "oracle_zz", "oracle_w",
                              "max_rel_dev"})
            t.columns.push_back(c);

    for (double r : rs) {
        StressTensor closed = p ? theta_tensor(WedgeGeometry(*p), med, r)
                                : theta_tensor(WedgeAngle(*alpha), med, r);
        std::vector<double> row = {r, closed.r_r, closed.theta_theta, closed.z_z,
                                   closed.energy_density};
        if (with_oracle) {
            const auto oracle =
                regularized_tensor_oracle(WedgeGeometry(*p), med, r, common.quad);
            double dev = 0.0;
            auto upd = [&dev](double a, double b) {
                dev = std::max(dev, std::abs(a - b) / std::max(std::abs(b), 1e-300));
            };
            upd(oracle.r_r, closed.r_r);
            upd(oracle.theta_theta, closed.theta_theta);
            upd(oracle.z_z, closed.z_z);
            upd(oracle.energy_density, closed.energy_density);
            row.insert(row.end(), {oracle.r_r, oracle.theta_theta, oracle.z_z,
                                   oracle.energy_density, dev});
        }
        t.rows.push_back(std::move(row));
    }
    json meta = common.meta("tensor");
    if (p) meta["p"] = *p;
    if (alpha) meta["alpha"] = *alpha;
    emit(t, parse_format(common.format), meta);
    return 0;
}

int run_force(const CommonOpts& common, std::optional<int> p,
              std::optional<double> alpha, const std::vector<std::string>& rs) {
    if (!p && !alpha) throw CLI::ValidationError("force", "need --p or --alpha");
    const UnitSystem units = parse_units(common.units);
    const Medium med = common.medium();
    const WedgeAngle angle = p ? WedgeAngle(WedgeGeometry(*p)) : WedgeAngle(*alpha);

    Table t;
    t.columns = {"r", "sigma"};
    for (const auto& rtext : rs) {
        const double r = parse_length(rtext, units);
        const auto sf = surface_force_density(angle, med, r, units);
        t.rows.push_back({r, sf.value});
    }
    json meta = common.meta("force");
    meta["alpha"] = angle.alpha();
    meta["pressure_unit"] = units.pressure_unit();
    meta["length_unit"] = units.length_unit();
    emit(t, parse_format(common.format), meta);
    return 0;
}

int run_polder(const CommonOpts& common, int p, double alpha0,
               const std::vector<double>& rs, const std::vector<double>& thetas,
               bool with_oracle) {
    const Medium med = common.medium();
    const WedgeGeometry geom(p);
    const DipoleParams dip(alpha0);

    Table t;
    t.columns = {"r", "theta", "U", "F_r", "F_theta"};
    if (with_oracle) {
        t.columns.push_back("oracle_U");
        t.columns.push_back("rel_dev");
    }
    for (double r : rs) {
        for (double theta : thetas) {
            const auto res = u_closed(geom, med, dip, r, theta);
            std::vector<double> row = {r, theta, res.u, res.f_r, res.f_theta};
            if (with_oracle) {
                const double oracle =
                    u_regularized_oracle(geom, med, dip, r, theta, common.quad);
                row.push_back(oracle);
                row.push_back(std::abs(oracle - res.u) /
                              std::max(std::abs(res.u), 1e-300));
            }
            t.rows.push_back(std::move(row));
        }
    }
    json meta = common.meta("polder");
    meta["p"] = p;
    meta["alpha0"] = alpha0;
    emit(t, parse_format(common.format), meta);
    return 0;
}

int run_string(const CommonOpts& common, std::optional<double> beta,
               std::optional<double> g_mu, const std::vector<double>& rs,
               std::optional<int> compare_p) {
    if (!beta && !g_mu) throw CLI::ValidationError("string", "need --beta or --g-mu");
    const StringParams params =
        beta ? StringParams::from_beta(*beta) : StringParams::from_g_mu(*g_mu);

    Table t;
    t.columns = {"r", "Theta_rr", "Theta_thth", "Theta_zz", "w", "beta", "g_mu"};
    const bool compare = compare_p.has_value();
    if (compare) {
        t.columns.push_back("wedge_rr_scaled");
        t.columns.push_back("max_rel_dev");
    }
    for (double r : rs) {
        const auto s = string_tensor(params, r);
        std::vector<double> row = {r,      s.r_r,        s.theta_theta, s.z_z,
                                   s.energy_density, params.beta, params.g_mu()};
        if (compare) {
            const Medium med = common.medium();
            const auto w = theta_tensor(WedgeGeometry(*compare_p), med, r);
            const double n = med.refractive_index();
            double dev = 0.0;
            auto upd = [&dev](double a, double b) {
                dev = std::max(dev, std::abs(a - b) / std::max(std::abs(b), 1e-300));
            };
            upd(n * w.r_r, s.r_r);
            upd(n * w.theta_theta, s.theta_theta);
            upd(n * w.z_z, s.z_z);
            upd(n * w.energy_density, s.energy_density);
            row.push_back(n * w.r_r);
            row.push_back(dev);
        }
        t.rows.push_back(std::move(row));
    }
    json meta = common.meta("string");
    meta["beta"] = params.beta;
    if (compare) meta["compare_p"] = *compare_p;
    emit(t, parse_format(common.format), meta);
    return 0;
}

int run_validate(const CommonOpts& common) {
    const auto checks = run_acceptance_checks(common.quad);
    const Format f = parse_format(common.format);
    bool all_pass = true;
    if (f == Format::json_fmt) {
        json out;
        out["meta"] = common.meta("validate");
        out["meta"]["schema_version"] = 1;
        out["rows"] = json::array();
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            out["rows"].push_back({{"name", c.name},
                                   {"measured", c.measured},
                                   {"tolerance", c.tolerance},
                                   {"pass", c.pass},
                                   {"note", c.note}});
        }
        out["meta"]["all_pass"] = all_pass;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            std::printf("%-32s measured=%-14.6g tol=%-10.3g %s%s%s\n", c.name.c_str(),
                        c.measured, c.tolerance, c.pass ? "PASS" : "FAIL",
                        c.note.empty() ? "" : "  # ", c.note.c_str());
        }
        std::printf("%s\n", all_pass ? "ALL CHECKS PASSED" : "CHECKS FAILED");
    }
    return all_pass ? 0 : 2;
}

int run_sweep(const CommonOpts& common, const std::string& quantity, int p,
              double alpha0, double theta, double from, double to, int steps,
              bool log_spacing, bool with_oracle) {
    if (!(steps >= 2)) throw CLI::ValidationError("sweep", "--steps must be >= 2");
    if (!(to > from) || !(from > 0.0))
        throw CLI::ValidationError("sweep", "need 0 < --from < --to");
    const Medium med = common.medium();
    const WedgeGeometry geom(p);
    const UnitSystem units = parse_units(common.units);

    std::vector<double> rs(steps);
    for (int i = 0; i < steps; ++i) {
        const double f = static_cast<double>(i) / (steps - 1);
        rs[i] = log_spacing ? from * std::pow(to / from, f) : from + (to - from) * f;
    }

    Table t;
    std::vector<std::future<std::vector<double>>> jobs;
    if (quantity == "tensor") {
        t.columns = {"r", "Theta_rr", "Theta_thth", "Theta_zz", "w"};
        if (with_oracle) t.columns.push_back("oracle_rel_dev");
        for (double r : rs) {
            jobs.push_back(std::async(std::launch::async, [&, r]() {
                const auto c = theta_tensor(geom, med, r);
                std::vector<double> row = {r, c.r_r, c.theta_theta, c.z_z,
                                           c.energy_density};
                if (with_oracle) {
                    const auto o = regularized_tensor_oracle(geom, med, r, common.quad);
                    double dev = 0.0;
                    auto upd = [&dev](double a, double b) {
                        dev = std::max(dev,
                                       std::abs(a - b) / std::max(std::abs(b), 1e-300));
                    };
                    upd(o.r_r, c.r_r);
                    upd(o.theta_theta, c.theta_theta);
                    upd(o.z_z, c.z_z);
                    upd(o.energy_density, c.energy_density);
                    row.push_back(dev);
                }
                return row;
            }));
        }
    } else if (quantity == "force") {
        t.columns = {"r", "sigma"};
        for (double r : rs) {
            jobs.push_back(std::async(std::launch::async, [&, r]() {
                const auto sf = surface_force_density(geom, med, r, units);
                return std::vector<double>{r, sf.value};
            }));
        }
    } else if (quantity == "polder") {
        t.columns = {"r", "theta", "U", "F_r", "F_theta"};
        const DipoleParams dip(alpha0);
        for (double r : rs) {
            jobs.push_back(std::async(std::launch::async, [&, r]() {
                const auto res = u_closed(geom, med, dip, r, theta);
                return std::vector<double>{r, theta, res.u, res.f_r, res.f_theta};
            }));
        }
    } else {
        throw CLI::ValidationError("sweep", "--quantity must be tensor|force|polder");
    }
    for (auto& j : jobs) t.rows.push_back(j.get());  // input order

    json meta = common.meta("sweep");
    meta["quantity"] = quantity;
    meta["p"] = p;
    meta["from"] = from;
    meta["to"] = to;
    meta["steps"] = steps;
    meta["log"] = log_spacing;
    if (quantity == "polder") {
        meta["theta"] = theta;
        meta["alpha0"] = alpha0;
    }
    emit(t, parse_format(common.format), meta);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Casimir energy-momentum tensor, wall surface force, and "
        "Casimir-Polder potential for a perfectly conducting wedge filled "
        "with a nondispersive medium"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file");
    app.fallthrough();

    CommonOpts common;

    auto* tensor = app.add_subcommand(
        "tensor", "regularized energy-momentum tensor (closed form; --oracle "
                  "adds the mode-sum oracle)");
    common.attach(tensor);
    std::optional<int> tensor_p;
    std::optional<double> tensor_alpha;
    std::vector<double> tensor_r = {1.0};
    bool tensor_oracle = false;
    tensor->add_option("--p", tensor_p, "wedge parameter p = pi/alpha (integer)")
        ->check(CLI::PositiveNumber);
    tensor->add_option("--alpha", tensor_alpha,
                       "opening angle in rad (closed form only)");
    tensor->add_option("--r", tensor_r, "distances from the cusp");
    tensor->add_flag("--oracle", tensor_oracle, "also run the mode-sum oracle");

    auto* force = app.add_subcommand("force", "wall surface-force density sigma(r)");
    common.attach(force);
    std::optional<int> force_p;
    std::optional<double> force_alpha;
    std::vector<std::string> force_r = {"1"};
    force->add_option("--p", force_p, "wedge parameter (integer)")
        ->check(CLI::PositiveNumber);
    force->add_option("--alpha", force_alpha, "opening angle in rad");
    force->add_option("--r", force_r,
                      "distance(s) from the cusp, optional unit suffix (1cm, 2um)");

    auto* polder = app.add_subcommand(
        "polder", "Casimir-Polder potential and force for a static dipole");
    common.attach(polder);
    int polder_p = 2;
    double polder_alpha0 = 1.0;
    std::vector<double> polder_r = {1.0};
    std::vector<double> polder_theta;
    bool polder_oracle = false;
    polder->add_option("--p", polder_p, "wedge parameter (integer)")
        ->check(CLI::PositiveNumber);
    polder->add_option("--alpha0", polder_alpha0, "static polarizability")
        ->check(CLI::PositiveNumber);
    polder->add_option("--r", polder_r, "distances from the cusp");
    polder->add_option("--theta", polder_theta,
                       "angles in rad (default: alpha/2)");
    polder->add_flag("--oracle", polder_oracle, "also run the mode-sum oracle");

    auto* string_cmd =
        app.add_subcommand("string", "cosmic-string stress tensor and wedge analogy");
    common.attach(string_cmd);
    std::optional<double> string_beta;
    std::optional<double> string_gmu;
    std::vector<double> string_r = {1.0};
    std::optional<int> string_p;
    string_cmd->add_option("--beta", string_beta, "beta = (1 - 4 G mu)^-1");
    string_cmd->add_option("--g-mu", string_gmu, "G mu in [0, 1/4)");
    string_cmd->add_option("--r", string_r, "distances from the string");
    string_cmd->add_option("--p", string_p,
                           "compare against the wedge tensor at this p");

    auto* validate = app.add_subcommand("validate", "run the full validation suite");
    common.attach(validate);

    auto* sweep = app.add_subcommand("sweep", "parameter sweep with CSV/JSON output");
    common.attach(sweep);
    std::string sweep_quantity = "tensor";
    int sweep_p = 2;
    double sweep_alpha0 = 1.0;
    double sweep_theta = 0.0;
    double sweep_from = 0.5, sweep_to = 2.0;
    int sweep_steps = 4;
    bool sweep_log = false, sweep_oracle = false;
    sweep->add_option("--quantity", sweep_quantity, "tensor|force|polder");
    sweep->add_option("--p", sweep_p, "wedge parameter")->check(CLI::PositiveNumber);
    sweep->add_option("--alpha0", sweep_alpha0, "static polarizability (polder)");
    sweep->add_option("--theta", sweep_theta, "angle in rad (polder; 0 = alpha/2)");
    sweep->add_option("--from", sweep_from, "sweep start (r)");
    sweep->add_option("--to", sweep_to, "sweep end (r)");
    sweep->add_option("--steps", sweep_steps, "number of points");
    sweep->add_flag("--log", sweep_log, "logarithmic spacing");
    sweep->add_flag("--oracle", sweep_oracle, "add oracle deviation column");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version exit clean, usage errors -> 1
    }

    try {
        if (tensor->parsed())
            return run_tensor(common, tensor_p, tensor_alpha, tensor_r, tensor_oracle);
        if (force->parsed()) return run_force(common, force_p, force_alpha, force_r);
        if (polder->parsed()) {
            if (polder_theta.empty())
                polder_theta = {WedgeGeometry(polder_p).alpha() / 2.0};
            return run_polder(common, polder_p, polder_alpha0, polder_r, polder_theta,
                              polder_oracle);
        }
        if (string_cmd->parsed())
            return run_string(common, string_beta, string_gmu, string_r, string_p);
        if (validate->parsed()) return run_validate(common);
        if (sweep->parsed()) {
            const double theta =
                sweep_theta > 0.0 ? sweep_theta : WedgeGeometry(sweep_p).alpha() / 2.0;
            return run_sweep(common, sweep_quantity, sweep_p, sweep_alpha0, theta,
                             sweep_from, sweep_to, sweep_steps, sweep_log,
                             sweep_oracle);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const NumericsError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

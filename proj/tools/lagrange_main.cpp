// Command-line front end for the two-center + elastic-force toolkit.
//
// Subcommands: critical-points, summary, hill, profile, classify,
//              euler-periods, scan, simulate, verify.
//
// Output contract:
//   - CSV: header row first, one record per line, '\n' endings, floating
//     point rendered with 17 significant digits.  The effective
//     configuration is echoed to stderr so stdout stays machine-clean.
//   - JSON: same rows as objects, plus the effective configuration embedded
//     under "config".
//
// Exit codes: 0 success, 1 computation error (error name on stderr),
//             2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <lagrange/dynamics.hpp>
#include <lagrange/errors.hpp>
#include <lagrange/momentmap.hpp>
#include <lagrange/params.hpp>
#include <lagrange/potential.hpp>
#include <lagrange/regularization.hpp>
#include <lagrange/toric.hpp>
#include <lagrange/verify.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using namespace lagrange;

// ---------------------------------------------------------------------------
// Shared option state
// ---------------------------------------------------------------------------

struct CliState {
    double m1 = 1.0;
    double m2 = 1.0;
    double eps = 0.0;
    double c = -3.0;
    double kappa = 0.1;
    std::string component = "e";
    std::string format = "csv";
    std::string out;
    std::string mask;
    int samples = 33;
    int grid = 192;
    int workers = 1;
    std::vector<std::string> tol_overrides;
    // scan accepts "a:b:n" range syntax for the three mass parameters
    std::string m1_range = "1";
    std::string m2_range = "1";
    std::string eps_range = "0";
};

MassParams masses(const CliState& s) {
    return MassParams{s.m1, s.m2, s.eps};
}

Component component_of(const CliState& s) {
    return s.component == "m" ? Component::m : Component::e;
}

const std::vector<std::string>& tolerance_names() {
    static const std::vector<std::string> names = {
        "grad_tol",      "deg_tol",  "collision_tol", "quad_rel_tol",
        "mono_tol",      "curv_tol", "lin_tol",       "drift_tol"};
    return names;
}

ToleranceSet tolerances(const CliState& s) {
    ToleranceSet t;
    for (const auto& ov : s.tol_overrides) {
        auto eq = ov.find('=');
        t.set_by_name(ov.substr(0, eq), std::stod(ov.substr(eq + 1)));
    }
    return t;
}

// Validates --tol NAME=VALUE at parse time so mistakes are usage errors.
std::string check_tol_override(const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
        return "expected NAME=VALUE, got '" + s + "'";
    std::string name = s.substr(0, eq);
    bool known = false;
    for (const auto& n : tolerance_names()) known = known || n == name;
    if (!known) return "unknown tolerance '" + name + "'";
    try {
        std::size_t pos = 0;
        (void)std::stod(s.substr(eq + 1), &pos);
        if (pos != s.size() - eq - 1) return "bad numeric value in '" + s + "'";
    } catch (const std::exception&) {
        return "bad numeric value in '" + s + "'";
    }
    return {};
}

// Parses "a:b:n" (inclusive endpoints, n samples) or a single number "a".
ParamRange parse_range(const std::string& text) {
    ParamRange r{0.0, 0.0, 1};
    auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        r.lo = r.hi = std::stod(text);
        r.count = 1;
        return r;
    }
    auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw Error("UsageRange", "range must be 'a:b:n' or a single value: " + text);
    r.lo = std::stod(text.substr(0, c1));
    r.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    r.count = std::stoi(text.substr(c2 + 1));
    if (r.count < 1) throw Error("UsageRange", "range count must be >= 1: " + text);
    return r;
}

std::string check_range(const std::string& text) {
    try {
        (void)parse_range(text);
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string cell_to_csv(const json& v) {
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

json effective_config(const std::string& command, const CliState& s,
                      const std::vector<std::string>& keys) {
    json cfg;
    cfg["command"] = command;
    for (const auto& k : keys) {
        if (k == "m1") cfg["m1"] = s.m1;
        else if (k == "m2") cfg["m2"] = s.m2;
        else if (k == "eps") cfg["eps"] = s.eps;
        else if (k == "c") cfg["c"] = s.c;
        else if (k == "kappa") cfg["kappa"] = s.kappa;
        else if (k == "component") cfg["component"] = s.component;
        else if (k == "samples") cfg["samples"] = s.samples;
        else if (k == "grid") cfg["grid"] = s.grid;
        else if (k == "workers") cfg["workers"] = s.workers;
        else if (k == "m1_range") cfg["m1"] = s.m1_range;
        else if (k == "m2_range") cfg["m2"] = s.m2_range;
        else if (k == "eps_range") cfg["eps"] = s.eps_range;
    }
    cfg["format"] = s.format;
    if (!s.out.empty()) cfg["out"] = s.out;
    if (!s.tol_overrides.empty()) cfg["tol"] = s.tol_overrides;
    return cfg;
}

void echo_config(const json& cfg) {
    std::cerr << "config:";
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
        std::cerr << ' ' << it.key() << '=' << cell_to_csv(it.value());
    std::cerr << '\n';
}

void emit(const Table& t, const json& cfg, const CliState& s) {
    echo_config(cfg);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!s.out.empty()) {
        file.open(s.out, std::ios::binary);
        if (!file) throw Error("OutputUnwritable", "cannot open output file: " + s.out);
        os = &file;
    }
    if (s.format == "json") {
        json doc;
        doc["config"] = cfg;
        doc["columns"] = t.columns;
        json rows = json::array();
        for (const auto& r : t.rows) {
            json obj;
            for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = r[i];
            rows.push_back(std::move(obj));
        }
        doc["rows"] = std::move(rows);
        *os << doc.dump(2) << '\n';
    } else {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            *os << (i ? "," : "") << t.columns[i];
        *os << '\n';
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                *os << (i ? "," : "") << cell_to_csv(r[i]);
            *os << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

int run_critical_points(const CliState& s) {
    auto pts = find_critical_points(masses(s), tolerances(s));
    Table t;
    t.columns = {"label", "q1", "q2", "value", "kind", "hessian_det", "hessian_trace"};
    for (const auto& p : pts) {
        const char* kind = p.kind == CriticalKind::saddle     ? "saddle"
                           : p.kind == CriticalKind::maximum  ? "maximum"
                           : p.kind == CriticalKind::minimum  ? "minimum"
                                                              : "degenerate";
        t.rows.push_back({p.label, p.location.q1, p.location.q2, p.value, kind,
                          p.hessian_det, p.hessian_trace});
    }
    emit(t, effective_config("critical-points", s, {"m1", "m2", "eps"}), s);
    return 0;
}

int run_summary(const CliState& s) {
    auto sum = critical_summary(masses(s), tolerances(s));
    Table t;
    t.columns = {"m1", "m2", "eps", "c0", "c_crit", "holds", "ordering",
                 "ordering_hypothesis", "reversed_hypothesis",
                 "equal_mass_hypothesis", "ratio_hypothesis"};
    t.rows.push_back({s.m1, s.m2, s.eps, sum.c0, sum.c_crit, sum.holds, sum.ordering,
                      sum.ordering_hypothesis, sum.reversed_hypothesis,
                      sum.equal_mass_hypothesis, sum.ratio_hypothesis});
    emit(t, effective_config("summary", s, {"m1", "m2", "eps"}), s);
    return 0;
}

int run_hill(const CliState& s) {
    auto rep = hill_regions(masses(s), s.c, s.grid, tolerances(s));
    Table t;
    t.columns = {"c", "resolution", "box_radius", "component_count",
                 "has_e_component", "has_m_component", "has_unbounded"};
    t.rows.push_back({rep.c, rep.resolution, rep.box_radius, rep.component_count,
                      rep.has_e_component, rep.has_m_component, rep.has_unbounded});
    emit(t, effective_config("hill", s, {"m1", "m2", "eps", "c", "grid"}), s);
    if (!s.mask.empty()) {
        std::ofstream mf(s.mask, std::ios::binary);
        if (!mf) throw Error("OutputUnwritable", "cannot open mask file: " + s.mask);
        for (int r = 0; r < rep.resolution; ++r) {
            for (int col = 0; col < rep.resolution; ++col)
                mf << (col ? "," : "") << rep.labels[static_cast<std::size_t>(r) *
                                                     static_cast<std::size_t>(rep.resolution) + col];
            mf << '\n';
        }
    }
    return 0;
}

ToricProfile make_profile(const CliState& s) {
    return profile(s.c, masses(s), component_of(s), s.samples, tolerances(s), s.workers);
}

Table profile_table(const ToricProfile& prof) {
    Table t;
    t.columns = {"kappa", "tau1", "tau2", "T1", "T2", "fprime", "fsecond"};
    for (const auto& row : prof.samples)
        t.rows.push_back({row.kappa, row.tau1, row.tau2, row.T1, row.T2,
                          row.fprime, row.fsecond});
    return t;
}

int run_profile(const CliState& s) {
    auto prof = make_profile(s);
    for (const auto& w : prof.warnings) std::cerr << "warning: " << w << '\n';
    emit(profile_table(prof),
         effective_config("profile", s,
                          {"m1", "m2", "eps", "c", "component", "samples", "workers"}),
         s);
    return 0;
}

int run_classify(const CliState& s) {
    auto prof = make_profile(s);
    for (const auto& w : prof.warnings) std::cerr << "warning: " << w << '\n';
    auto rep = classify(prof, tolerances(s));
    for (const auto& n : rep.notes) std::cerr << "note: " << n << '\n';
    Table t;
    t.columns = {"monotone", "convexity", "dynamically_convex", "volume", "witnesses"};
    t.rows.push_back({rep.monotone, to_string(rep.convexity), rep.dynamically_convex,
                      rep.volume, static_cast<long long>(rep.witnesses.size())});
    json cfg = effective_config(
        "classify", s, {"m1", "m2", "eps", "c", "component", "samples", "workers"});
    if (s.format == "json") {
        // JSON callers get the witness samples in full.
        echo_config(cfg);
        json doc;
        doc["config"] = cfg;
        doc["monotone"] = rep.monotone;
        doc["convexity"] = to_string(rep.convexity);
        doc["dynamically_convex"] = rep.dynamically_convex;
        doc["volume"] = rep.volume;
        doc["notes"] = rep.notes;
        json wit = json::array();
        for (const auto& w : rep.witnesses)
            wit.push_back({{"kappa", w.kappa}, {"tau1", w.tau1}, {"tau2", w.tau2},
                           {"T1", w.T1}, {"T2", w.T2}, {"fprime", w.fprime},
                           {"fsecond", w.fsecond}});
        doc["witnesses"] = std::move(wit);
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!s.out.empty()) {
            file.open(s.out, std::ios::binary);
            if (!file) throw Error("OutputUnwritable", "cannot open output file: " + s.out);
            os = &file;
        }
        *os << doc.dump(2) << '\n';
        return 0;
    }
    emit(t, cfg, s);
    return 0;
}

int run_euler_periods(const CliState& s) {
    MassParams p = masses(s);
    if (p.eps != 0.0)
        throw Error("RegimeUnsupported", "euler-periods requires eps == 0");
    auto sys = make_mu_system(s.c, p);
    auto win = kappa_window(Component::e, p);
    Table t;
    t.columns = {"kappa", "tau_elliptic", "tau_z", "ode_period", "max_rel_disagreement"};
    int n = std::max(1, s.samples);
    for (int i = 1; i <= n; ++i) {
        double kap = win.lo + (win.hi - win.lo) * static_cast<double>(i) /
                                  static_cast<double>(n + 1);
        double t_ell = tau(sys, kap, Component::e, tolerances(s));
        double t_z = tau_euler_z(p.M1(), s.c, kap, tolerances(s));
        double t_ode = ode_period(sys, kap, Component::e);
        double worst = std::max({std::abs(t_ell - t_z), std::abs(t_ell - t_ode),
                                 std::abs(t_z - t_ode)}) /
                       t_z;
        t.rows.push_back({kap, t_ell, t_z, t_ode, worst});
    }
    emit(t, effective_config("euler-periods", s, {"m1", "m2", "eps", "c", "samples"}), s);
    return 0;
}

int run_scan(const CliState& s) {
    ParamRange r1 = parse_range(s.m1_range);
    ParamRange r2 = parse_range(s.m2_range);
    ParamRange re = parse_range(s.eps_range);
    auto rows = scan_conjecture(r1, r2, re, s.workers, tolerances(s));
    Table t;
    t.columns = {"m1", "m2", "eps", "c0", "c_crit", "holds"};
    for (const auto& row : rows) {
        if (!row.error.empty())
            std::cerr << "warning: scan point (" << row.m1 << ", " << row.m2 << ", "
                      << row.eps << ") failed: " << row.error << '\n';
        t.rows.push_back({row.m1, row.m2, row.eps, row.c0, row.c_crit, row.holds});
    }
    emit(t, effective_config("scan", s,
                             {"m1_range", "m2_range", "eps_range", "workers"}),
         s);
    return 0;
}

int run_simulate(const CliState& s) {
    MassParams p = masses(s);
    Component comp = component_of(s);
    Table t;
    t.columns = {"system", "kappa", "level", "dt", "n_steps", "period",
                 "max_drift_rel", "n_crossings"};
    const int periods = 25;
    for (int which = 0; which < 2; ++which) {
        SeparatedSystem sys = which == 0 ? make_mu_system(s.c, p) : make_nu_system(s.c, p);
        Component use = which == 0 ? Component::e : comp;
        double rough = ode_period(sys, s.kappa, use, 3);
        double dt = rough / 2048.0;
        long n = static_cast<long>(periods * rough / dt) + 8;
        Trajectory traj = integrate_1dof(sys, s.kappa, dt, n, use);
        double period = measure_period(traj);
        t.rows.push_back({which == 0 ? "mu" : "nu", s.kappa, traj.level, traj.dt,
                          static_cast<long long>(traj.n_steps), period,
                          traj.max_drift_rel,
                          static_cast<long long>(traj.crossings.size())});
    }
    emit(t, effective_config("simulate", s,
                             {"m1", "m2", "eps", "c", "kappa", "component"}),
         s);
    return 0;
}

int run_verify(const CliState& s) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!s.out.empty()) {
        file.open(s.out, std::ios::binary);
        if (!file) throw Error("OutputUnwritable", "cannot open output file: " + s.out);
        os = &file;
    }
    VerifyReport rep = run_acceptance(*os);
    return rep.all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Option wiring
// ---------------------------------------------------------------------------

void add_output_options(CLI::App* cmd, CliState& s) {
    cmd->add_option("--format", s.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", s.out, "Write output to this file instead of stdout");
    cmd->add_option("--tol", s.tol_overrides,
                    "Tolerance override NAME=VALUE (repeatable)")
        ->check(CLI::Validator(check_tol_override, "NAME=VALUE"));
}

void add_mass_options(CLI::App* cmd, CliState& s) {
    cmd->add_option("--m1", s.m1, "Mass of the left center (at q = (-1/2, 0))")
        ->capture_default_str();
    cmd->add_option("--m2", s.m2, "Mass of the right center (at q = (+1/2, 0))")
        ->capture_default_str();
    cmd->add_option("--eps", s.eps, "Elastic (spring) coefficient, >= 0")
        ->capture_default_str();
}

void add_energy_option(CLI::App* cmd, CliState& s) {
    cmd->add_option("--c", s.c, "Energy level")->capture_default_str();
}

void add_component_option(CLI::App* cmd, CliState& s) {
    cmd->add_option("--component", s.component,
                    "Angular well: e (around the left center) or m (around the right)")
        ->check(CLI::IsMember({"e", "m"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CliState s;
    CLI::App app{"Planar two-center problem with an elastic restoring force:\n"
                 "critical points, Hill regions, separated periods, action\n"
                 "profiles, and toric-domain classification."};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file (sections per subcommand)")
        ->envname("LAGRANGE_CONFIG");
    // A key outside a recognized [subcommand] section would otherwise be
    // dropped silently and the run would proceed on defaults.
    app.allow_config_extras(false);

    CLI::App* cp = app.add_subcommand("critical-points",
                                      "Locate all critical points of the effective potential");
    add_mass_options(cp, s);
    add_output_options(cp, s);

    CLI::App* sm = app.add_subcommand("summary",
                                      "Critical values c0 and c_crit plus ordering diagnostics");
    add_mass_options(sm, s);
    add_output_options(sm, s);

    CLI::App* hl = app.add_subcommand("hill", "Count bounded Hill-region components");
    add_mass_options(hl, s);
    add_energy_option(hl, s);
    hl->add_option("--grid", s.grid, "Grid resolution per axis")->capture_default_str();
    hl->add_option("--mask", s.mask, "Also write the component-label grid to this CSV file");
    add_output_options(hl, s);

    CLI::App* pf = app.add_subcommand("profile",
                                      "Sample the action profile (periods, actions, slopes)");
    add_mass_options(pf, s);
    add_energy_option(pf, s);
    add_component_option(pf, s);
    pf->add_option("--samples", s.samples, "Number of level samples")->capture_default_str();
    pf->add_option("--workers", s.workers, "Worker threads")->capture_default_str();
    add_output_options(pf, s);

    CLI::App* cl = app.add_subcommand("classify",
                                      "Classify the moment-map image (toric domain type)");
    add_mass_options(cl, s);
    add_energy_option(cl, s);
    add_component_option(cl, s);
    cl->add_option("--samples", s.samples, "Number of level samples")->capture_default_str();
    cl->add_option("--workers", s.workers, "Worker threads")->capture_default_str();
    add_output_options(cl, s);

    CLI::App* ep = app.add_subcommand("euler-periods",
                                      "Cross-check the three period oracles (eps = 0)");
    add_mass_options(ep, s);
    add_energy_option(ep, s);
    ep->add_option("--samples", s.samples, "Number of interior levels")->capture_default_str();
    add_output_options(ep, s);

    CLI::App* sc = app.add_subcommand("scan",
                                      "Scan (m1, m2, eps) and report c0 < c_crit status");
    sc->add_option("--m1", s.m1_range, "m1 value or range a:b:n")
        ->check(CLI::Validator(check_range, "RANGE"))
        ->capture_default_str();
    sc->add_option("--m2", s.m2_range, "m2 value or range a:b:n")
        ->check(CLI::Validator(check_range, "RANGE"))
        ->capture_default_str();
    sc->add_option("--eps", s.eps_range, "eps value or range a:b:n")
        ->check(CLI::Validator(check_range, "RANGE"))
        ->capture_default_str();
    sc->add_option("--workers", s.workers, "Worker threads")->capture_default_str();
    add_output_options(sc, s);

    CLI::App* si = app.add_subcommand("simulate",
                                      "Integrate both separated systems at one level slice");
    add_mass_options(si, s);
    add_energy_option(si, s);
    si->add_option("--kappa", s.kappa, "Separation constant (level slice)")
        ->capture_default_str();
    add_component_option(si, s);
    add_output_options(si, s);

    CLI::App* vf = app.add_subcommand("verify", "Run the full acceptance suite");
    add_output_options(vf, s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cp->parsed()) return run_critical_points(s);
        if (sm->parsed()) return run_summary(s);
        if (hl->parsed()) return run_hill(s);
        if (pf->parsed()) return run_profile(s);
        if (cl->parsed()) return run_classify(s);
        if (ep->parsed()) return run_euler_periods(s);
        if (sc->parsed()) return run_scan(s);
        if (si->parsed()) return run_simulate(s);
        if (vf->parsed()) return run_verify(s);
    } catch (const Error& e) {
        std::cerr << e.name() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

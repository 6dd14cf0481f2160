// gie — simulator front end: gravitational phases, interferometer runs,
// parameter sweeps, classical-mediator no-go trials, field-mediation cycles,
// and mediator dephasing. Data goes to stdout (or --output), diagnostics to
// stderr. Exit codes: 0 ok, 2 usage/config error, 3 numerical precondition.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "gie/config.hpp"
#include "gie/fieldmodel.hpp"
#include "gie/nogo.hpp"
#include "gie/output.hpp"
#include "gie/protocol.hpp"

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
bool given(double v) { return !std::isnan(v); }

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// ---- config plumbing: every option registers a flat JSON key ----

struct Binding {
    CLI::Option* opt;
    std::function<void(const nlohmann::json&)> apply;
};
using BindingMap = std::map<std::string, Binding>;

void expect_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number())
        throw gie::config_error("config key \"" + key + "\": expected a number");
}

CLI::Option* bind_double(CLI::App* cmd, BindingMap& m, const std::string& flag,
                         const std::string& key, double& var, const std::string& desc) {
    CLI::Option* opt = cmd->add_option(flag, var, desc);
    m[key] = {opt, [&var, key](const nlohmann::json& v) {
                  expect_number(v, key);
                  var = v.get<double>();
              }};
    return opt;
}

CLI::Option* bind_int(CLI::App* cmd, BindingMap& m, const std::string& flag,
                      const std::string& key, int& var, const std::string& desc) {
    CLI::Option* opt = cmd->add_option(flag, var, desc);
    m[key] = {opt, [&var, key](const nlohmann::json& v) {
                  if (!v.is_number_integer())
                      throw gie::config_error("config key \"" + key + "\": expected an integer");
                  var = v.get<int>();
              }};
    return opt;
}

CLI::Option* bind_u64(CLI::App* cmd, BindingMap& m, const std::string& flag,
                      const std::string& key, uint64_t& var, const std::string& desc) {
    CLI::Option* opt = cmd->add_option(flag, var, desc);
    m[key] = {opt, [&var, key](const nlohmann::json& v) {
                  if (!v.is_number_integer() || (v.is_number_integer() && v.get<int64_t>() < 0 &&
                                                 !v.is_number_unsigned()))
                      throw gie::config_error("config key \"" + key +
                                              "\": expected a non-negative integer");
                  var = v.get<uint64_t>();
              }};
    return opt;
}

CLI::Option* bind_string(CLI::App* cmd, BindingMap& m, const std::string& flag,
                         const std::string& key, std::string& var, const std::string& desc) {
    CLI::Option* opt = cmd->add_option(flag, var, desc);
    m[key] = {opt, [&var, key](const nlohmann::json& v) {
                  if (!v.is_string())
                      throw gie::config_error("config key \"" + key + "\": expected a string");
                  var = v.get<std::string>();
              }};
    return opt;
}

// ---- option surfaces ----

struct SharedOpts {
    std::string output = "-";
    std::string format = "csv";
    std::string config_path;
    uint64_t seed = 1;
    int threads = 0;
    bool schema = false;
    bool keep_going = false;
    bool plot_data = false;
};

struct GeometryOpts {
    double mass = kUnset;
    double d1 = kUnset;
    double d2 = kUnset;
    double arm_length = kUnset;
    double velocity = kUnset;
    double dt = kUnset;
    double exponent = 1.0;

    gie::PhysicalParams to_params() const {
        require(given(mass), "missing --mass");
        require(given(d1), "missing --d1");
        require(given(d2), "missing --d2");
        gie::PhysicalParams p;
        p.mass = mass;
        p.d1 = d1;
        p.d2 = d2;
        p.arm_length = given(arm_length) ? arm_length : 0.0;
        p.velocity = given(velocity) ? velocity : 0.0;
        p.duration = given(dt) ? dt : 0.0;
        p.exponent = exponent;
        return p;
    }
    bool any_given() const {
        return given(mass) || given(d1) || given(d2) || given(arm_length) || given(velocity) ||
               given(dt);
    }
};

struct PhaseOpts {
    double mass = kUnset;
    double distance = kUnset;
    double dt = kUnset;
    double exponent = 1.0;
};

struct RunOpts {
    double phi1 = kUnset;
    double dphi = kUnset;
    std::string attribution = "relative";
    GeometryOpts geo;
};

struct MediatorOpts {
    double w = kUnset;
    double xi00 = 0.0, xi01 = 0.0, xi10 = 0.0, xi11 = 0.0;
    double alpha0 = 0.0;
    int fock = 0;  // 0 = choose automatically

    gie::CouplingMatrix xis() const { return gie::CouplingMatrix({xi00, xi01, xi10, xi11}); }
};

struct DecohereOpts {
    MediatorOpts med;
    double gamma = kUnset;
    bool threshold = false;
    double tol = 1e-6;
};

struct SweepOpts {
    std::string var = "mass";
    double from = kUnset;
    double to = kUnset;
    int points = 0;
    std::string scale = "linear";
    GeometryOpts geo;
    MediatorOpts med;
};

struct NogoOpts {
    int trials = 1000;
    int depth = 6;
    int dc = 0;  // 0 = cycle 2,3,4
};

void register_geometry(CLI::App* cmd, BindingMap& m, GeometryOpts& g) {
    bind_double(cmd, m, "--mass", "mass", g.mass, "mass of each particle [kg]");
    bind_double(cmd, m, "--d1", "d1", g.d1, "closer branch separation [m]");
    bind_double(cmd, m, "--d2", "d2", g.d2, "farther branch separation [m]");
    bind_double(cmd, m, "--arm-length", "arm_length", g.arm_length, "interferometer arm length [m]");
    bind_double(cmd, m, "--velocity", "velocity", g.velocity, "traversal velocity [m/s]");
    bind_double(cmd, m, "--dt", "dt", g.dt, "interaction time [s]");
    bind_double(cmd, m, "--exponent", "exponent", g.exponent, "distance-law exponent n");
}

void register_mediator(CLI::App* cmd, BindingMap& m, MediatorOpts& o) {
    bind_double(cmd, m, "--w", "w", o.w, "field modulation angle [rad]");
    bind_double(cmd, m, "--xi00", "xi00", o.xi00, "branch coupling xi_00");
    bind_double(cmd, m, "--xi01", "xi01", o.xi01, "branch coupling xi_01");
    bind_double(cmd, m, "--xi10", "xi10", o.xi10, "branch coupling xi_10");
    bind_double(cmd, m, "--xi11", "xi11", o.xi11, "branch coupling xi_11");
    bind_double(cmd, m, "--alpha0", "alpha0", o.alpha0, "initial field coherent amplitude");
    bind_int(cmd, m, "--fock", "fock", o.fock, "Fock truncation (0 = automatic)");
}

// ---- schemas ----

const std::vector<std::string> kRunSchema{"input",       "phi1",        "phi2",
                                          "delta_phi",   "p0",          "p1",
                                          "concurrence", "negativity",  "witness"};
const std::vector<std::string> kMediatorSchema{
    "input",       "w",          "xi00",    "xi01",
    "xi10",        "xi11",       "concurrence", "negativity",
    "witness",     "field_return_fidelity", "mass_field_entropy"};
const std::vector<std::string> kDecohereSchema{"input",      "gamma",   "concurrence",
                                               "negativity", "witness", "field_return_fidelity"};
const std::vector<std::string> kThresholdSchema{"gamma_star", "gamma_lo", "gamma_hi",
                                                "evaluations"};
const std::vector<std::string> kNogoSchema{"trial",      "seed",        "depth", "dc",
                                           "negativity", "witness_min", "ppt"};

std::string join_schema(const std::vector<std::string>& cols) {
    std::string s;
    for (size_t i = 0; i < cols.size(); ++i) {
        if (i) s += ',';
        s += cols[i];
    }
    return s;
}

// ---- record builders ----

gie::OutputRecord protocol_record(double input, const gie::RunResult& r) {
    gie::OutputRecord rec;
    rec.add("input", input)
        .add("phi1", r.phases.phi1)
        .add("phi2", r.phases.phi2)
        .add("delta_phi", r.phases.delta_phi)
        .add("p0", r.p0)
        .add("p1", r.p1)
        .add("concurrence", r.concurrence)
        .add("negativity", r.negativity)
        .add("witness", r.witness_value);
    return rec;
}

gie::OutputRecord mediator_record(double input, const gie::MediatorRun& m) {
    gie::OutputRecord rec;
    rec.add("input", input)
        .add("w", m.w)
        .add("xi00", m.xis.xi[0])
        .add("xi01", m.xis.xi[1])
        .add("xi10", m.xis.xi[2])
        .add("xi11", m.xis.xi[3])
        .add("concurrence", m.concurrence_final)
        .add("negativity", m.negativity_final)
        .add("witness", m.witness_final)
        .add("field_return_fidelity", m.field_return_fidelity)
        .add("mass_field_entropy", m.mass_field_entropy_mid);
    return rec;
}

gie::OutputRecord decohere_record(double input, const gie::DephasedCycleResult& d) {
    gie::OutputRecord rec;
    rec.add("input", input)
        .add("gamma", d.gamma)
        .add("concurrence", d.concurrence)
        .add("negativity", d.negativity)
        .add("witness", d.witness_value)
        .add("field_return_fidelity", d.field_return_fidelity);
    return rec;
}

// ---- output writing ----

int write_records(const SharedOpts& sh, const std::vector<std::string>& schema,
                  const std::vector<gie::OutputRecord>& rows, const std::string& plot_x,
                  const std::string& plot_y, bool partial) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (sh.output != "-") {
        file.open(sh.output);
        if (!file) {
            std::cerr << "gie: cannot open output path: " << sh.output << "\n";
            return 2;
        }
        os = &file;
    }
    if (sh.plot_data && !plot_y.empty())
        gie::emit_plot_data(*os, plot_x, plot_y, rows);
    else if (sh.format == "json")
        gie::emit_json(*os, rows);
    else
        gie::emit_csv(*os, schema, rows);
    if (partial) *os << "#partial\n";
    os->flush();
    return partial ? 3 : 0;
}

int write_scalar(const SharedOpts& sh, const std::string& name, double value) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (sh.output != "-") {
        file.open(sh.output);
        if (!file) {
            std::cerr << "gie: cannot open output path: " << sh.output << "\n";
            return 2;
        }
        os = &file;
    }
    if (sh.format == "json") {
        nlohmann::ordered_json obj;
        obj[name] = value;
        *os << obj.dump() << '\n';
    } else {
        *os << gie::format_double(value) << '\n';
    }
    os->flush();
    return 0;
}

// ---- per-point evaluation with error capture (sweeps) ----

struct PointResult {
    bool ok = false;
    gie::OutputRecord rec;
    std::string error;
};

std::vector<double> make_grid(double from, double to, int points, const std::string& scale) {
    require(given(from), "missing --from");
    require(given(to), "missing --to");
    require(points >= 2, "sweep needs --points >= 2");
    require(from < to, "sweep requires from < to");
    require(scale == "linear" || scale == "log", "--scale must be linear or log");
    if (scale == "log") require(from > 0.0, "log scale requires from > 0");
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        v[i] = scale == "log" ? std::exp(std::log(from) + t * (std::log(to) - std::log(from)))
                              : from + t * (to - from);
    }
    v.back() = to;  // land exactly on the endpoint
    return v;
}

int finish_sweep(const SharedOpts& sh, const std::vector<std::string>& schema,
                 const std::vector<double>& grid, std::vector<PointResult>&& results,
                 const std::string& plot_y) {
    std::vector<gie::OutputRecord> rows;
    bool partial = false;
    for (size_t i = 0; i < results.size(); ++i) {
        if (results[i].ok) {
            rows.push_back(std::move(results[i].rec));
            continue;
        }
        std::cerr << "gie: sweep point " << i << " (value " << gie::format_double(grid[i])
                  << ") failed: " << results[i].error << "\n";
        if (!sh.keep_going) {
            partial = true;
            break;
        }
    }
    const int rc = write_records(sh, schema, rows, "input", plot_y, partial);
    return rc;
}

// ---- mode handlers ----

int do_phase(const SharedOpts& sh, const PhaseOpts& o) {
    require(given(o.mass), "missing --mass");
    require(given(o.distance), "missing --distance");
    require(given(o.dt), "missing --dt");
    const double phi = gie::gravitational_phase(o.mass, o.distance, o.dt, o.exponent);
    return write_scalar(sh, "phi", phi);
}

gie::PhaseAttribution parse_attribution(const std::string& s) {
    if (s == "relative") return gie::PhaseAttribution::relative;
    if (s == "geometric") return gie::PhaseAttribution::geometric;
    throw std::invalid_argument("--attribution must be relative or geometric");
}

int do_run(const SharedOpts& sh, const RunOpts& o) {
    const gie::PhaseAttribution attr = parse_attribution(o.attribution);
    gie::PhaseSet phases{};
    if (given(o.phi1) || given(o.dphi)) {
        require(given(o.phi1) && given(o.dphi), "--phi1 and --dphi must be given together");
        require(!o.geo.any_given(), "give either --phi1/--dphi or the geometry flags, not both");
        phases = gie::PhaseSet::from_relative(o.phi1, o.dphi);
    } else {
        require(o.geo.any_given(), "run needs --phi1/--dphi or the geometry flags");
        phases = gie::phases_from_geometry(o.geo.to_params());
    }
    const gie::RunResult r = gie::simulate_run(phases, attr);
    return write_records(sh, kRunSchema, {protocol_record(phases.phi1, r)}, "input",
                         "concurrence", false);
}

int pick_levels(const MediatorOpts& o, double w) {
    if (o.fock > 0) return o.fock;
    return gie::recommended_cycle_levels(o.xis(), w, o.alpha0);
}

int do_mediator(const SharedOpts& sh, const MediatorOpts& o) {
    require(given(o.w), "missing --w");
    const gie::FockSpace fock(pick_levels(o, o.w));
    const gie::MediatorRun m = gie::field_cycle(o.xis(), o.w, fock, o.alpha0);
    return write_records(sh, kMediatorSchema, {mediator_record(o.w, m)}, "input", "concurrence",
                         false);
}

int do_decohere(const SharedOpts& sh, const DecohereOpts& o) {
    require(given(o.med.w), "missing --w");
    require(o.threshold != given(o.gamma), "give exactly one of --gamma or --threshold");
    const gie::FockSpace fock(pick_levels(o.med, o.med.w));
    if (o.threshold) {
        const gie::ThresholdBracket b =
            gie::entanglement_breaking_threshold(o.med.xis(), o.med.w, fock, o.tol);
        gie::OutputRecord rec;
        rec.add("gamma_star", std::sqrt(b.gamma_lo * b.gamma_hi))
            .add("gamma_lo", b.gamma_lo)
            .add("gamma_hi", b.gamma_hi)
            .add("evaluations", b.evaluations);
        return write_records(sh, kThresholdSchema, {rec}, "", "", false);
    }
    const gie::DephasedCycleResult d =
        gie::dephased_field_cycle(o.med.xis(), o.med.w, fock, gie::DephasingSpec(o.gamma),
                                  o.med.alpha0);
    return write_records(sh, kDecohereSchema, {decohere_record(o.gamma, d)}, "input",
                         "negativity", false);
}

int do_nogo(const SharedOpts& sh, const NogoOpts& o) {
    const gie::NoGoReport report = gie::verify_no_go(o.trials, o.depth, sh.seed, o.dc);
    std::vector<gie::OutputRecord> rows;
    rows.reserve(report.records.size());
    for (size_t i = 0; i < report.records.size(); ++i) {
        const gie::TrialRecord& t = report.records[i];
        gie::OutputRecord rec;
        rec.add("trial", static_cast<long long>(i))
            .add("seed", t.seed)
            .add("depth", t.depth)
            .add("dc", t.d_c)
            .add("negativity", t.negativity)
            .add("witness_min", t.witness_min)
            .add("ppt", t.ppt ? 1 : 0);
        rows.push_back(std::move(rec));
    }
    std::cerr << "gie: nogo trials=" << report.trials << " failures=" << report.failures
              << " max_negativity=" << gie::format_double(report.max_negativity)
              << " max_witness_violation=" << gie::format_double(report.max_witness_violation)
              << "\n";
    return write_records(sh, kNogoSchema, rows, "trial", "negativity", false);
}

int do_sweep(const SharedOpts& sh, const SweepOpts& o) {
    static const std::vector<std::string> kProtocolVars{"mass", "d1", "d2", "L", "dt"};
    const bool protocol_var =
        std::find(kProtocolVars.begin(), kProtocolVars.end(), o.var) != kProtocolVars.end();
    require(protocol_var || o.var == "gamma" || o.var == "w" || o.var == "xi_scale",
            "--var must be one of mass,d1,d2,L,dt,gamma,w,xi_scale");
    const std::vector<double> grid = make_grid(o.from, o.to, o.points, o.scale);
    std::vector<PointResult> results(grid.size());

    std::function<gie::OutputRecord(double)> eval;
    std::vector<std::string> schema;
    std::string plot_y;

    if (protocol_var) {
        schema = kRunSchema;
        plot_y = "concurrence";
        eval = [&](double v) {
            GeometryOpts g = o.geo;
            if (o.var == "mass")
                g.mass = v;
            else if (o.var == "d1")
                g.d1 = v;
            else if (o.var == "d2")
                g.d2 = v;
            else if (o.var == "L")
                g.arm_length = v;
            else
                g.dt = v;
            const gie::PhaseSet phases = gie::phases_from_geometry(g.to_params());
            return protocol_record(v, gie::simulate_run(phases));
        };
    } else if (o.var == "gamma") {
        schema = kDecohereSchema;
        plot_y = "negativity";
        require(given(o.med.w), "gamma sweep needs --w");
        eval = [&](double v) {
            const gie::FockSpace fock(pick_levels(o.med, o.med.w));
            return decohere_record(v, gie::dephased_field_cycle(o.med.xis(), o.med.w, fock,
                                                                gie::DephasingSpec(v),
                                                                o.med.alpha0));
        };
    } else if (o.var == "w") {
        schema = kMediatorSchema;
        plot_y = "concurrence";
        eval = [&](double v) {
            const gie::FockSpace fock(pick_levels(o.med, v));
            return mediator_record(v, gie::field_cycle(o.med.xis(), v, fock, o.med.alpha0));
        };
    } else {  // xi_scale
        schema = kMediatorSchema;
        plot_y = "concurrence";
        require(given(o.med.w), "xi_scale sweep needs --w");
        eval = [&](double v) {
            require(v >= 0.0, "xi_scale must be non-negative");
            MediatorOpts scaled = o.med;
            scaled.xi00 *= v;
            scaled.xi01 *= v;
            scaled.xi10 *= v;
            scaled.xi11 *= v;
            const gie::FockSpace fock(pick_levels(scaled, scaled.w));
            return mediator_record(
                v, gie::field_cycle(scaled.xis(), scaled.w, fock, scaled.alpha0));
        };
    }

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
        try {
            results[i].rec = eval(grid[i]);
            results[i].ok = true;
        } catch (const std::exception& e) {
            results[i].error = e.what();
        }
    }
    return finish_sweep(sh, schema, grid, std::move(results), plot_y);
}

// ---- config application ----

void apply_config(const gie::ConfigFile& cf, const std::string& mode, BindingMap& shared,
                  BindingMap& mode_map) {
    for (const auto& [key, value] : cf.entries) {
        if (key == "mode") {
            if (!value.is_string() || value.get<std::string>() != mode)
                throw gie::config_error("config key \"mode\" (" + value.dump() +
                                        ") does not match the invoked subcommand " + mode);
            continue;
        }
        Binding* binding = nullptr;
        if (auto it = mode_map.find(key); it != mode_map.end()) binding = &it->second;
        else if (auto it2 = shared.find(key); it2 != shared.end()) binding = &it2->second;
        if (!binding)
            throw gie::config_error("unknown config key \"" + key + "\" for mode " + mode);
        if (binding->opt->count() > 0) continue;  // flags win
        binding->apply(value);
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{
        "gravitationally induced entanglement: phases, runs, sweeps, mediator cycles, "
        "dephasing, and classical-mediator no-go trials"};
    app.require_subcommand(1);
    app.fallthrough();

    SharedOpts sh;
    BindingMap shared;
    bind_string(&app, shared, "--output,-o", "output", sh.output, "output path or - for stdout");
    bind_string(&app, shared, "--format", "format", sh.format, "csv or json");
    bind_u64(&app, shared, "--seed", "seed", sh.seed, "master seed for randomized modes");
    bind_int(&app, shared, "--threads", "threads", sh.threads, "worker threads (0 = default)");
    app.add_option("--config", sh.config_path, "flat-key JSON config file (flags win)");
    app.add_flag("--schema", sh.schema, "print this mode's column header and exit");
    app.add_flag("--keep-going", sh.keep_going, "skip failed sweep points instead of aborting");
    app.add_flag("--plot-data", sh.plot_data, "two-column gnuplot output (input, key metric)");

    PhaseOpts phase_opts;
    BindingMap phase_map;
    CLI::App* phase_cmd = app.add_subcommand("phase", "single gravitational phase value");
    bind_double(phase_cmd, phase_map, "--mass", "mass", phase_opts.mass, "mass [kg]");
    bind_double(phase_cmd, phase_map, "--distance", "distance", phase_opts.distance,
                "separation [m]");
    bind_double(phase_cmd, phase_map, "--dt", "dt", phase_opts.dt, "interaction time [s]");
    bind_double(phase_cmd, phase_map, "--exponent", "exponent", phase_opts.exponent,
                "distance-law exponent n");

    RunOpts run_opts;
    BindingMap run_map;
    CLI::App* run_cmd = app.add_subcommand("run", "one interferometer run");
    bind_double(run_cmd, run_map, "--phi1", "phi1", run_opts.phi1, "phase of the closer pair");
    bind_double(run_cmd, run_map, "--dphi", "dphi", run_opts.dphi, "relative phase");
    bind_string(run_cmd, run_map, "--attribution", "attribution", run_opts.attribution,
                "relative or geometric");
    register_geometry(run_cmd, run_map, run_opts.geo);

    SweepOpts sweep_opts;
    BindingMap sweep_map;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid sweep over one variable");
    bind_string(sweep_cmd, sweep_map, "--var", "var", sweep_opts.var,
                "mass,d1,d2,L,dt,gamma,w,xi_scale");
    bind_double(sweep_cmd, sweep_map, "--from", "from", sweep_opts.from, "grid start");
    bind_double(sweep_cmd, sweep_map, "--to", "to", sweep_opts.to, "grid end");
    bind_int(sweep_cmd, sweep_map, "--points", "points", sweep_opts.points, "grid points (>= 2)");
    bind_string(sweep_cmd, sweep_map, "--scale", "scale", sweep_opts.scale, "linear or log");
    register_geometry(sweep_cmd, sweep_map, sweep_opts.geo);
    register_mediator(sweep_cmd, sweep_map, sweep_opts.med);

    NogoOpts nogo_opts;
    BindingMap nogo_map;
    CLI::App* nogo_cmd = app.add_subcommand("nogo", "randomized classical-mediator trials");
    bind_int(nogo_cmd, nogo_map, "--trials", "trials", nogo_opts.trials, "number of trials");
    bind_int(nogo_cmd, nogo_map, "--depth", "depth", nogo_opts.depth, "max circuit depth");
    bind_int(nogo_cmd, nogo_map, "--dc", "dc", nogo_opts.dc,
             "mediator dimension 2..4 (0 = cycle)");

    MediatorOpts med_opts;
    BindingMap med_map;
    CLI::App* med_cmd = app.add_subcommand("mediator", "one coherent mediation cycle");
    register_mediator(med_cmd, med_map, med_opts);

    DecohereOpts dec_opts;
    BindingMap dec_map;
    CLI::App* dec_cmd = app.add_subcommand("decohere", "mediation cycle with field dephasing");
    register_mediator(dec_cmd, dec_map, dec_opts.med);
    bind_double(dec_cmd, dec_map, "--gamma", "gamma", dec_opts.gamma, "dephasing strength");
    CLI::Option* thr_flag =
        dec_cmd->add_flag("--threshold", dec_opts.threshold, "bracket the break-even gamma");
    dec_map["threshold"] = {thr_flag, [&dec_opts](const nlohmann::json& v) {
                                if (!v.is_boolean())
                                    throw gie::config_error(
                                        "config key \"threshold\": expected a boolean");
                                dec_opts.threshold = v.get<bool>();
                            }};
    bind_double(dec_cmd, dec_map, "--tol", "tol", dec_opts.tol,
                "negativity tolerance for the threshold search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* active = app.get_subcommands().front();
    const std::string mode = active->get_name();
    BindingMap* mode_map = &run_map;
    if (mode == "phase") mode_map = &phase_map;
    else if (mode == "run") mode_map = &run_map;
    else if (mode == "sweep") mode_map = &sweep_map;
    else if (mode == "nogo") mode_map = &nogo_map;
    else if (mode == "mediator") mode_map = &med_map;
    else if (mode == "decohere") mode_map = &dec_map;

    try {
        if (!sh.config_path.empty())
            apply_config(gie::ConfigFile::load(sh.config_path), mode, shared, *mode_map);
        require(sh.format == "csv" || sh.format == "json", "--format must be csv or json");
        require(sh.threads >= 0, "--threads must be >= 0");
#ifdef _OPENMP
        if (sh.threads > 0) omp_set_num_threads(sh.threads);
#endif
        if (sh.schema) {
            if (mode == "phase")
                std::cout << "phi\n";
            else if (mode == "run")
                std::cout << join_schema(kRunSchema) << "\n";
            else if (mode == "mediator")
                std::cout << join_schema(kMediatorSchema) << "\n";
            else if (mode == "nogo")
                std::cout << join_schema(kNogoSchema) << "\n";
            else if (mode == "decohere")
                std::cout << join_schema(dec_opts.threshold ? kThresholdSchema : kDecohereSchema)
                          << "\n";
            else {  // sweep: header follows the swept variable's pipeline
                if (sweep_opts.var == "gamma")
                    std::cout << join_schema(kDecohereSchema) << "\n";
                else if (sweep_opts.var == "w" || sweep_opts.var == "xi_scale")
                    std::cout << join_schema(kMediatorSchema) << "\n";
                else
                    std::cout << join_schema(kRunSchema) << "\n";
            }
            return 0;
        }
        if (mode == "phase") return do_phase(sh, phase_opts);
        if (mode == "run") return do_run(sh, run_opts);
        if (mode == "sweep") return do_sweep(sh, sweep_opts);
        if (mode == "nogo") return do_nogo(sh, nogo_opts);
        if (mode == "mediator") return do_mediator(sh, med_opts);
        return do_decohere(sh, dec_opts);
    } catch (const gie::config_error& e) {
        std::cerr << "gie: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "gie: " << e.what() << "\n";
        return 2;
    } catch (const gie::truncation_error& e) {
        std::cerr << "gie: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "gie: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }

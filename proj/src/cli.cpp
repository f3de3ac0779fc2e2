#include "cascade/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cascade/compacton.hpp"
#include "cascade/csv.hpp"
#include "cascade/ensemble.hpp"
#include "cascade/model.hpp"
#include "cascade/reduced.hpp"
#include "cascade/rng.hpp"
#include "cascade/simulate.hpp"
#include "cascade/stationary.hpp"

namespace cascade {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Thrown for anything the user can fix in the configuration; exit code 1.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Output-side failures (unwritable paths and friends); exit code 2.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit_diagnostic(const char* kind, const std::string& message) {
    json j;
    j["error"] = kind;
    j["message"] = message;
    std::cerr << j.dump() << "\n";
}

// Configuration as merged from the JSON file and command-line overrides.
// Typed getters convert JSON mistakes into ConfigError with the field name.
class Settings {
  public:
    Settings() : data_(json::object()) {}

    static Settings load_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw ConfigError("cannot read config file: " + path);
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        json parsed;
        try {
            parsed = json::parse(buffer.str());
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!parsed.is_object()) {
            throw ConfigError("config root must be a JSON object");
        }
        Settings s;
        s.data_ = std::move(parsed);
        return s;
    }

    void set(const std::string& key, json value) { data_[key] = std::move(value); }

    bool has(const std::string& key) const { return data_.contains(key); }

    void reject_unknown(std::initializer_list<const char*> allowed) const {
        for (const auto& item : data_.items()) {
            const bool known = std::any_of(
                allowed.begin(), allowed.end(),
                [&](const char* k) { return item.key() == k; });
            if (!known) {
                throw ConfigError("unknown config field: " + item.key());
            }
        }
    }

    double get_double(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        const json& v = data_.at(key);
        if (!v.is_number()) {
            throw ConfigError("config field \"" + key + "\" must be a number");
        }
        return v.get<double>();
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
        if (!has(key)) return fallback;
        const json& v = data_.at(key);
        if (!v.is_number_integer() && !v.is_number_unsigned()) {
            throw ConfigError("config field \"" + key + "\" must be an integer");
        }
        return v.get<std::int64_t>();
    }

    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const json& v = data_.at(key);
        if (!(v.is_number_unsigned() ||
              (v.is_number_integer() && v.get<std::int64_t>() >= 0))) {
            throw ConfigError("config field \"" + key +
                              "\" must be a nonnegative integer");
        }
        return v.get<std::uint64_t>();
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = data_.at(key);
        if (!v.is_boolean()) {
            throw ConfigError("config field \"" + key + "\" must be a boolean");
        }
        return v.get<bool>();
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const json& v = data_.at(key);
        if (!v.is_string()) {
            throw ConfigError("config field \"" + key + "\" must be a string");
        }
        return v.get<std::string>();
    }

    std::vector<double> get_double_array(const std::string& key) const {
        const json& v = data_.at(key);
        if (!v.is_array()) {
            throw ConfigError("config field \"" + key + "\" must be an array");
        }
        std::vector<double> out;
        out.reserve(v.size());
        for (const json& item : v) {
            if (!item.is_number()) {
                throw ConfigError("config field \"" + key +
                                  "\" must contain only numbers");
            }
            out.push_back(item.get<double>());
        }
        return out;
    }

    std::vector<std::string> get_string_array(const std::string& key) const {
        const json& v = data_.at(key);
        if (!v.is_array()) {
            throw ConfigError("config field \"" + key + "\" must be an array");
        }
        std::vector<std::string> out;
        out.reserve(v.size());
        for (const json& item : v) {
            if (!item.is_string()) {
                throw ConfigError("config field \"" + key +
                                  "\" must contain only strings");
            }
            out.push_back(item.get<std::string>());
        }
        return out;
    }

  private:
    json data_;
};

int require_n(const Settings& s) {
    if (!s.has("n")) {
        throw ConfigError("\"n\" is required (config field or --n)");
    }
    const std::int64_t n = s.get_int("n", 0);
    if (n < 1 || n > 1'000'000) {
        throw ConfigError("\"n\" must be a positive lattice size");
    }
    return static_cast<int>(n);
}

BoundaryCondition parse_bc(const std::string& name) {
    if (name == "dirichlet") return BoundaryCondition::Dirichlet;
    if (name == "periodic") return BoundaryCondition::Periodic;
    throw ConfigError("\"bc\" must be \"dirichlet\" or \"periodic\"");
}

const char* bc_name(BoundaryCondition bc) {
    return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "periodic";
}

IcKind parse_kind(const std::string& name) {
    if (name == "localized") return IcKind::LocalizedRandomPhase;
    if (name == "weighted") return IcKind::WeightedRandomPhase;
    if (name == "shock") return IcKind::Shock;
    if (name == "weighted_shock") return IcKind::WeightedShock;
    if (name == "generalized_weighted_shock") return IcKind::GeneralizedWeightedShock;
    throw ConfigError("\"kind\" must be one of localized, weighted, shock, "
                      "weighted_shock, generalized_weighted_shock");
}

const char* kind_name(IcKind kind) {
    switch (kind) {
        case IcKind::LocalizedRandomPhase: return "localized";
        case IcKind::WeightedRandomPhase: return "weighted";
        case IcKind::Shock: return "shock";
        case IcKind::WeightedShock: return "weighted_shock";
        case IcKind::GeneralizedWeightedShock: return "generalized_weighted_shock";
    }
    return "localized";
}

NormKind parse_norm(const std::string& tag) {
    try {
        return parse_norm_tag(tag);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::vector<NormKind> resolve_norms(const Settings& s,
                                    std::vector<std::string>& tags_out) {
    tags_out = s.has("norms") ? s.get_string_array("norms")
                              : std::vector<std::string>{"poly_2"};
    if (tags_out.empty()) {
        throw ConfigError("\"norms\" must name at least one norm");
    }
    std::vector<NormKind> norms;
    norms.reserve(tags_out.size());
    for (const std::string& tag : tags_out) norms.push_back(parse_norm(tag));
    return norms;
}

IntegratorConfig resolve_integrator(const Settings& s) {
    IntegratorConfig cfg;
    cfg.rel_tol = s.get_double("rel_tol", cfg.rel_tol);
    cfg.abs_tol = s.get_double("abs_tol", cfg.abs_tol);
    cfg.initial_step = s.get_double("initial_step", cfg.initial_step);
    cfg.fixed_step = s.get_double("fixed_step", cfg.fixed_step);
    cfg.max_steps = s.get_int("max_steps", cfg.max_steps);
    return cfg;
}

void echo_integrator(json& j, const IntegratorConfig& cfg) {
    j["rel_tol"] = cfg.rel_tol;
    j["abs_tol"] = cfg.abs_tol;
    j["initial_step"] = cfg.initial_step;
    j["fixed_step"] = cfg.fixed_step;
    j["max_steps"] = cfg.max_steps;
}

double require_positive_time(const Settings& s, double fallback) {
    const double t = s.get_double("t_final", fallback);
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw ConfigError("\"t_final\" must be positive and finite");
    }
    return t;
}

// Either an explicit strictly increasing list, or `samples` equally spaced
// points covering [0, t_final] endpoints included.
std::vector<double> resolve_sample_times(const Settings& s, double t_final) {
    if (s.has("sample_times")) {
        if (s.has("samples")) {
            throw ConfigError("give either \"samples\" or \"sample_times\", not both");
        }
        std::vector<double> times = s.get_double_array("sample_times");
        if (times.empty()) {
            throw ConfigError("\"sample_times\" must not be empty");
        }
        double prev = -1.0;
        for (double t : times) {
            if (!std::isfinite(t) || t < 0.0 || t > t_final || t <= prev) {
                throw ConfigError("\"sample_times\" must strictly increase within "
                                  "[0, t_final]");
            }
            prev = t;
        }
        return times;
    }
    const std::int64_t count = s.get_int("samples", 101);
    if (count < 2 || count > 2'000'000) {
        throw ConfigError("\"samples\" must be at least 2");
    }
    std::vector<double> times(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        times[static_cast<std::size_t>(i)] =
            t_final * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    times.back() = t_final;
    return times;
}

void echo_sampling(json& j, const Settings& s) {
    if (s.has("sample_times")) {
        j["sample_times"] = s.get_double_array("sample_times");
    } else {
        j["samples"] = s.get_int("samples", 101);
    }
}

InitialConditionSpec resolve_ic(const Settings& s) {
    InitialConditionSpec spec;
    spec.kind = parse_kind(s.get_string("kind", "localized"));
    spec.n = require_n(s);
    spec.eps = s.get_double("eps", spec.eps);
    spec.j_star = static_cast<int>(s.get_int("j_star", spec.j_star));
    spec.sigma = s.get_double("sigma", spec.sigma);
    spec.bc = parse_bc(s.get_string("bc", "dirichlet"));
    validate(spec);  // invalid_argument maps to exit 1 below
    return spec;
}

void echo_ic(json& j, const InitialConditionSpec& spec) {
    j["kind"] = kind_name(spec.kind);
    j["n"] = spec.n;
    j["eps"] = spec.eps;
    j["j_star"] = spec.j_star;
    j["sigma"] = spec.sigma;
    j["bc"] = bc_name(spec.bc);
}

void echo_config(const json& j) { std::cout << j.dump() << "\n"; }

// Output routing: with --out, artifacts land in that directory; without
// it the primary table goes to stdout and side artifacts are skipped.
struct OutputTarget {
    std::optional<fs::path> dir;

    bool to_files() const { return dir.has_value(); }

    std::ofstream open(const char* name) const {
        std::error_code ec;
        fs::create_directories(*dir, ec);
        if (ec) {
            throw IoError("cannot create output directory " + dir->string() +
                          ": " + ec.message());
        }
        const fs::path path = *dir / name;
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            throw IoError("cannot open " + path.string() + " for writing");
        }
        return file;
    }

    void close(std::ofstream& file, const char* name) const {
        file.flush();
        if (!file) {
            throw IoError(std::string("failed while writing ") + name);
        }
    }
};

template <typename WriteFn>
void emit_primary(const OutputTarget& out, const char* name, WriteFn&& write) {
    if (out.to_files()) {
        std::ofstream file = out.open(name);
        write(file);
        out.close(file, name);
    } else {
        write(std::cout);
    }
}

const std::uint64_t kDefaultSeed = 1;

int cmd_simulate(const Settings& s, const OutputTarget& out, bool dry_run) {
    s.reject_unknown({"kind", "n", "eps", "j_star", "sigma", "bc", "seed",
                      "t_final", "samples", "sample_times", "norms", "rel_tol",
                      "abs_tol", "initial_step", "fixed_step", "max_steps"});
    const InitialConditionSpec spec = resolve_ic(s);
    const std::uint64_t seed = s.get_uint("seed", kDefaultSeed);
    const double t_final = require_positive_time(s, 10.0);
    const std::vector<double> times = resolve_sample_times(s, t_final);
    std::vector<std::string> norm_tags;
    const std::vector<NormKind> norms = resolve_norms(s, norm_tags);
    const IntegratorConfig icfg = resolve_integrator(s);

    if (dry_run) {
        json j;
        echo_ic(j, spec);
        j["seed"] = seed;
        j["t_final"] = t_final;
        echo_sampling(j, s);
        j["norms"] = norm_tags;
        echo_integrator(j, icfg);
        echo_config(j);
        return 0;
    }

    std::vector<double> phases;
    if (uses_random_phases(spec.kind)) {
        SplitMix64 rng(seed);
        phases = uniform_phases(rng, spec.n);
    }
    const State initial = make_ic(spec, phases);
    const Trajectory traj = simulate(initial, 0.0, t_final, times, icfg);

    emit_primary(out, "trajectory.csv",
                 [&](std::ostream& o) { write_trajectory_csv(o, traj); });
    if (out.to_files()) {
        std::ofstream norms_file = out.open("norms.csv");
        write_norm_csv(norms_file, traj, norms);
        out.close(norms_file, "norms.csv");
        std::ofstream drift_file = out.open("drift.json");
        write_drift_json(drift_file, traj);
        out.close(drift_file, "drift.json");
    }
    return 0;
}

int cmd_ensemble(const Settings& s, const OutputTarget& out, bool dry_run) {
    s.reject_unknown({"kind", "n", "eps", "j_star", "sigma", "bc", "seed",
                      "t_final", "samples", "sample_times", "norms",
                      "realizations", "threads", "drift_tolerance", "rel_tol",
                      "abs_tol", "initial_step", "fixed_step", "max_steps"});
    EnsembleConfig cfg;
    cfg.ic = resolve_ic(s);
    cfg.master_seed = s.get_uint("seed", kDefaultSeed);
    cfg.t_final = require_positive_time(s, 100.0);
    cfg.sample_times = resolve_sample_times(s, cfg.t_final);
    std::vector<std::string> norm_tags;
    cfg.norms = resolve_norms(s, norm_tags);
    cfg.realizations = static_cast<int>(s.get_int("realizations", 100));
    cfg.threads = static_cast<int>(s.get_int("threads", 0));
    cfg.drift_tolerance = s.get_double("drift_tolerance", cfg.drift_tolerance);
    cfg.integrator = resolve_integrator(s);
    validate(cfg);

    if (dry_run) {
        json j;
        echo_ic(j, cfg.ic);
        j["seed"] = cfg.master_seed;
        j["t_final"] = cfg.t_final;
        echo_sampling(j, s);
        j["norms"] = norm_tags;
        j["realizations"] = cfg.realizations;
        j["threads"] = cfg.threads;
        j["drift_tolerance"] = cfg.drift_tolerance;
        echo_integrator(j, cfg.integrator);
        echo_config(j);
        return 0;
    }

    const EnsembleStats stats = run_ensemble(cfg);
    emit_primary(out, "ensemble.csv",
                 [&](std::ostream& o) { write_ensemble_csv(o, stats); });
    if (!stats.failures.empty()) {
        json j;
        j["warning"] = "realizations_failed";
        j["failed"] = stats.failures.size();
        j["first_reason"] = stats.failures.front().reason;
        std::cerr << j.dump() << "\n";
    }
    return 0;
}

int cmd_stationary(const Settings& s, const OutputTarget& out, bool dry_run) {
    s.reject_unknown({"n", "omega"});
    const int n = require_n(s);
    const double omega = s.get_double("omega", 1.0);

    if (dry_run) {
        json j;
        j["n"] = n;
        j["omega"] = omega;
        echo_config(j);
        return 0;
    }

    const PhaseLockedProfile profile = solve_phase_locked(n, omega);
    emit_primary(out, "profile.csv",
                 [&](std::ostream& o) { write_profile_csv(o, profile); });
    return 0;
}

int cmd_scan(const Settings& s, const OutputTarget& out, bool dry_run) {
    s.reject_unknown({"n_max", "omega"});
    if (!s.has("n_max")) {
        throw ConfigError("\"n_max\" is required (config field or --n-max)");
    }
    const std::int64_t n_max = s.get_int("n_max", 0);
    if (n_max < 1 || n_max > 10'000) {
        throw ConfigError("\"n_max\" must be a positive lattice size bound");
    }
    const double omega = s.get_double("omega", 1.0);

    if (dry_run) {
        json j;
        j["n_max"] = n_max;
        j["omega"] = omega;
        echo_config(j);
        return 0;
    }

    std::vector<PhaseLockedProfile> profiles;
    profiles.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= static_cast<int>(n_max); ++n) {
        profiles.push_back(solve_phase_locked(n, omega));
    }
    emit_primary(out, "scan.csv",
                 [&](std::ostream& o) { write_scan_csv(o, profiles); });
    return 0;
}

int cmd_reduced(const Settings& s, const OutputTarget& out, bool dry_run) {
    s.reject_unknown({"dphi", "drho", "rho_bar", "phi_bar", "t_final", "samples",
                      "sample_times", "crosscheck", "n", "return_time", "t_max",
                      "match_tol", "rel_tol", "abs_tol", "initial_step",
                      "fixed_step", "max_steps"});
    ReducedState r0;
    r0.dphi = s.get_double("dphi", 0.25 * std::numbers::pi);
    r0.drho = s.get_double("drho", 0.0);
    r0.rho_bar = s.get_double("rho_bar", 2.0);
    r0.phi_bar = s.get_double("phi_bar", 0.25 * std::numbers::pi);
    const double t_final = require_positive_time(s, 10.0);
    const std::vector<double> times = resolve_sample_times(s, t_final);
    const bool crosscheck = s.get_bool("crosscheck", false);
    const int n = crosscheck ? require_n(s) : static_cast<int>(s.get_int("n", 0));
    const bool want_return = s.get_bool("return_time", false);
    const double t_max = s.get_double("t_max", 100.0);
    const double match_tol = s.get_double("match_tol", 1e-6);
    const IntegratorConfig icfg = resolve_integrator(s);

    if (dry_run) {
        json j;
        j["dphi"] = r0.dphi;
        j["drho"] = r0.drho;
        j["rho_bar"] = r0.rho_bar;
        j["phi_bar"] = r0.phi_bar;
        j["t_final"] = t_final;
        echo_sampling(j, s);
        j["crosscheck"] = crosscheck;
        if (crosscheck) j["n"] = n;
        j["return_time"] = want_return;
        j["t_max"] = t_max;
        j["match_tol"] = match_tol;
        echo_integrator(j, icfg);
        echo_config(j);
        return 0;
    }

    const RealTrajectory traj = integrate_reduced(r0, 0.0, t_final, times, icfg);
    emit_primary(out, "reduced.csv",
                 [&](std::ostream& o) { write_reduced_csv(o, traj); });

    if (crosscheck) {
        const State lattice0 = lift_to_lattice(r0, n);
        const Trajectory full = simulate(lattice0, 0.0, t_final, times, icfg);
        std::vector<ReducedState> reduced_states;
        std::vector<ReducedState> lattice_states;
        reduced_states.reserve(times.size());
        lattice_states.reserve(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) {
            const auto& y = traj.states[i];
            reduced_states.push_back({y[0], y[1], y[2], y[3]});
            lattice_states.push_back(extract_reduced(full.states[i]));
        }
        if (out.to_files()) {
            std::ofstream file = out.open("crosscheck.csv");
            write_reduced_crosscheck_csv(file, times, reduced_states, lattice_states);
            out.close(file, "crosscheck.csv");
        } else {
            write_reduced_crosscheck_csv(std::cout, times, reduced_states,
                                         lattice_states);
        }
    }

    if (want_return) {
        const double period = find_return_time(r0, t_max, icfg, match_tol);
        json j;
        j["return_time"] = period;
        std::cout << j.dump() << "\n";
    }
    return 0;
}

int cmd_burgers(const Settings& s, const OutputTarget& out, bool dry_run) {
    s.reject_unknown({"n", "t_final", "samples", "sample_times", "rho", "bc",
                      "rel_tol", "abs_tol", "initial_step", "fixed_step",
                      "max_steps"});
    const int n = require_n(s);
    const double t_final = require_positive_time(s, 1.0);
    const std::vector<double> times = resolve_sample_times(s, t_final);
    const BoundaryCondition bc = parse_bc(s.get_string("bc", "dirichlet"));
    std::vector<double> rho0(static_cast<std::size_t>(n), 1.0);
    if (s.has("rho")) {
        rho0 = s.get_double_array("rho");
        if (rho0.size() != static_cast<std::size_t>(n)) {
            throw ConfigError("\"rho\" must list exactly n densities");
        }
    }
    for (double r : rho0) {
        if (!std::isfinite(r) || r < 0.0) {
            throw ConfigError("\"rho\" entries must be finite and nonnegative");
        }
    }
    const IntegratorConfig icfg = resolve_integrator(s);

    if (dry_run) {
        json j;
        j["n"] = n;
        j["t_final"] = t_final;
        echo_sampling(j, s);
        j["bc"] = bc_name(bc);
        j["rho"] = rho0;
        echo_integrator(j, icfg);
        echo_config(j);
        return 0;
    }

    const auto rhs = [bc](double, std::span<const double> y, std::span<double> dydt) {
        const std::vector<double> rho(y.begin(), y.end());
        const std::vector<double> d = rhs_discrete_burgers(rho, bc);
        std::copy(d.begin(), d.end(), dydt.begin());
    };
    const RealTrajectory traj = integrate(rhs, rho0, 0.0, t_final, times, icfg);
    emit_primary(out, "burgers.csv",
                 [&](std::ostream& o) { write_density_csv(o, traj); });
    return 0;
}

int cmd_compacton(const Settings& s, const OutputTarget& out, bool dry_run) {
    s.reject_unknown({"h", "form", "samples", "grids"});
    CompactonParams params;
    params.h = s.get_double("h", 1.0);
    const std::string form = s.get_string("form", "cosine");
    if (form == "cosine") {
        params.form = CompactonForm::Cosine;
    } else if (form == "sine") {
        params.form = CompactonForm::Sine;
    } else {
        throw ConfigError("\"form\" must be \"cosine\" or \"sine\"");
    }
    validate(params);
    const std::int64_t samples = s.get_int("samples", 201);
    if (samples < 2 || samples > 2'000'000) {
        throw ConfigError("\"samples\" must be at least 2");
    }
    std::vector<std::int64_t> grids = {64, 128, 256, 512};
    if (s.has("grids")) {
        grids.clear();
        for (double g : s.get_double_array("grids")) {
            const auto cells = static_cast<std::int64_t>(g);
            if (static_cast<double>(cells) != g || cells < 33 || cells > 10'000'000) {
                throw ConfigError("\"grids\" must hold integer cell counts >= 33");
            }
            grids.push_back(cells);
        }
        if (grids.empty()) {
            throw ConfigError("\"grids\" must not be empty");
        }
    }

    if (dry_run) {
        json j;
        j["h"] = params.h;
        j["form"] = form;
        j["samples"] = samples;
        j["grids"] = grids;
        echo_config(j);
        return 0;
    }

    const double w = support_half_width(params);
    const double lo = params.form == CompactonForm::Cosine ? -w : 0.0;
    const double hi = params.form == CompactonForm::Cosine ? w : 2.0 * w;
    const double pad = 0.125 * (hi - lo);
    std::vector<double> xs(static_cast<std::size_t>(samples));
    for (std::int64_t i = 0; i < samples; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(samples - 1);
        xs[static_cast<std::size_t>(i)] = (lo - pad) + u * ((hi + pad) - (lo - pad));
    }
    emit_primary(out, "compacton_profile.csv", [&](std::ostream& o) {
        write_compacton_profile_csv(o, params, xs);
    });

    std::vector<ResidualReport> reports;
    reports.reserve(grids.size());
    for (std::int64_t cells : grids) {
        reports.push_back(
            compacton_fd_residual(params, (hi - lo) / static_cast<double>(cells)));
    }
    if (out.to_files()) {
        std::ofstream file = out.open("compacton_residual.csv");
        write_compacton_residual_csv(file, reports);
        out.close(file, "compacton_residual.csv");
    } else {
        write_compacton_residual_csv(std::cout, reports);
    }
    return 0;
}

struct CliOverrides {
    std::string config;
    std::string out;
    bool dry_run = false;
    std::optional<std::uint64_t> seed;
    std::optional<int> n;
    std::optional<double> omega;
    std::optional<int> n_max;
    std::optional<double> eps;
    std::optional<int> j_star;
    std::optional<double> t_final;
    std::optional<int> realizations;
    std::optional<double> sigma;
    std::optional<std::string> bc;
    std::optional<int> samples;
    std::optional<double> spacing;
    std::optional<std::string> form;
    bool crosscheck = false;
    bool return_time = false;
};

void add_common(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config, "JSON config file");
    cmd->add_option("--out", o.out, "output directory (default: primary CSV to stdout)");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_flag("--dry-run", o.dry_run, "validate and echo the resolved config");
}

Settings merge(const CliOverrides& o) {
    Settings s = o.config.empty() ? Settings() : Settings::load_file(o.config);
    if (o.seed) s.set("seed", *o.seed);
    if (o.n) s.set("n", *o.n);
    if (o.omega) s.set("omega", *o.omega);
    if (o.n_max) s.set("n_max", *o.n_max);
    if (o.eps) s.set("eps", *o.eps);
    if (o.j_star) s.set("j_star", *o.j_star);
    if (o.t_final) s.set("t_final", *o.t_final);
    if (o.realizations) s.set("realizations", *o.realizations);
    if (o.sigma) s.set("sigma", *o.sigma);
    if (o.bc) s.set("bc", *o.bc);
    if (o.samples) s.set("samples", *o.samples);
    if (o.spacing) s.set("h", *o.spacing);
    if (o.form) s.set("form", *o.form);
    if (o.crosscheck) s.set("crosscheck", true);
    if (o.return_time) s.set("return_time", true);
    return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Lattice cascade toolkit: simulation, stationary profiles, "
                 "ensembles, and continuum checks"};
    app.name("cascade");
    app.require_subcommand(1);

    CliOverrides o;

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "integrate one trajectory and write CSV");
    add_common(simulate_cmd, o);
    simulate_cmd->add_option("--n", o.n, "lattice size");
    simulate_cmd->add_option("--eps", o.eps, "background amplitude");
    simulate_cmd->add_option("--j-star", o.j_star, "concentration site");
    simulate_cmd->add_option("--sigma", o.sigma, "shock decay exponent");
    simulate_cmd->add_option("--t-final", o.t_final, "integration horizon");
    simulate_cmd->add_option("--samples", o.samples, "number of output rows");
    simulate_cmd->add_option("--bc", o.bc, "dirichlet or periodic");

    CLI::App* ensemble_cmd =
        app.add_subcommand("ensemble", "random-phase ensemble statistics");
    add_common(ensemble_cmd, o);
    ensemble_cmd->add_option("--n", o.n, "lattice size");
    ensemble_cmd->add_option("--eps", o.eps, "background amplitude");
    ensemble_cmd->add_option("--j-star", o.j_star, "concentration site");
    ensemble_cmd->add_option("--sigma", o.sigma, "shock decay exponent");
    ensemble_cmd->add_option("--t-final", o.t_final, "integration horizon");
    ensemble_cmd->add_option("--realizations", o.realizations, "ensemble size");
    ensemble_cmd->add_option("--samples", o.samples, "number of output rows");
    ensemble_cmd->add_option("--bc", o.bc, "dirichlet or periodic");

    CLI::App* stationary_cmd =
        app.add_subcommand("stationary", "phase-locked density profile");
    add_common(stationary_cmd, o);
    stationary_cmd->add_option("--n", o.n, "lattice size");
    stationary_cmd->add_option("--omega", o.omega, "rotation frequency");

    CLI::App* scan_cmd =
        app.add_subcommand("scan", "positivity scan over lattice sizes");
    add_common(scan_cmd, o);
    scan_cmd->add_option("--n-max", o.n_max, "largest lattice size");
    scan_cmd->add_option("--omega", o.omega, "rotation frequency");

    CLI::App* reduced_cmd =
        app.add_subcommand("reduced", "period-2 reduced dynamics");
    add_common(reduced_cmd, o);
    reduced_cmd->add_option("--n", o.n, "lattice size for the cross-check");
    reduced_cmd->add_option("--t-final", o.t_final, "integration horizon");
    reduced_cmd->add_option("--samples", o.samples, "number of output rows");
    reduced_cmd->add_flag("--crosscheck", o.crosscheck,
                          "also run the embedded lattice comparison");
    reduced_cmd->add_flag("--return-time", o.return_time,
                          "report the first orbit return time");

    CLI::App* burgers_cmd =
        app.add_subcommand("burgers", "discrete transport evolution");
    add_common(burgers_cmd, o);
    burgers_cmd->add_option("--n", o.n, "lattice size");
    burgers_cmd->add_option("--t-final", o.t_final, "integration horizon");
    burgers_cmd->add_option("--bc", o.bc, "dirichlet or periodic");
    burgers_cmd->add_option("--samples", o.samples, "number of output rows");

    CLI::App* compacton_cmd =
        app.add_subcommand("compacton", "continuum profile and residual tables");
    add_common(compacton_cmd, o);
    compacton_cmd->add_option("--spacing", o.spacing, "lattice spacing h");
    compacton_cmd->add_option("--form", o.form, "cosine or sine");
    compacton_cmd->add_option("--samples", o.samples, "number of output rows");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_diagnostic("config", e.what());
        return 1;
    }

    OutputTarget out;
    if (!o.out.empty()) out.dir = fs::path(o.out);

    try {
        const Settings s = merge(o);
        if (app.got_subcommand(simulate_cmd)) return cmd_simulate(s, out, o.dry_run);
        if (app.got_subcommand(ensemble_cmd)) return cmd_ensemble(s, out, o.dry_run);
        if (app.got_subcommand(stationary_cmd))
            return cmd_stationary(s, out, o.dry_run);
        if (app.got_subcommand(scan_cmd)) return cmd_scan(s, out, o.dry_run);
        if (app.got_subcommand(reduced_cmd)) return cmd_reduced(s, out, o.dry_run);
        if (app.got_subcommand(burgers_cmd)) return cmd_burgers(s, out, o.dry_run);
        if (app.got_subcommand(compacton_cmd))
            return cmd_compacton(s, out, o.dry_run);
        emit_diagnostic("config", "no subcommand selected");
        return 1;
    } catch (const ConfigError& e) {
        emit_diagnostic("config", e.what());
        return 1;
    } catch (const IoError& e) {
        emit_diagnostic("io", e.what());
        return 2;
    } catch (const IntegrationError& e) {
        emit_diagnostic("numerical", e.what());
        return 2;
    } catch (const EnsembleError& e) {
        emit_diagnostic("numerical", e.what());
        return 2;
    } catch (const std::logic_error& e) {
        // invalid_argument / domain_error from the modules: bad parameters.
        emit_diagnostic("config", e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_diagnostic("numerical", e.what());
        return 2;
    }
}

}  // namespace cascade

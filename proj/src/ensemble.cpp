#include "cascade/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cascade/rng.hpp"
#include "cascade/simulate.hpp"

namespace cascade {

namespace {

bool is_shock_family(IcKind kind) {
    return kind == IcKind::Shock || kind == IcKind::WeightedShock ||
           kind == IcKind::GeneralizedWeightedShock;
}

int resolve_threads(int requested, int work_items) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("CASCADE_THREADS")) {
            char* end = nullptr;
            long parsed = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && parsed > 0 && parsed < 1024) {
                n = static_cast<int>(parsed);
            }
        }
    }
    if (n <= 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
    }
    n = std::max(n, 1);
    return std::min(n, std::max(work_items, 1));
}

}  // namespace

bool uses_random_phases(IcKind kind) { return !is_shock_family(kind); }

void validate(const InitialConditionSpec& spec) {
    if (spec.n < 1) {
        throw std::invalid_argument("initial condition needs at least one site");
    }
    if (uses_random_phases(spec.kind)) {
        if (!(spec.eps > 0.0) || !(spec.eps < 1.0) || !std::isfinite(spec.eps)) {
            throw std::invalid_argument("eps must lie strictly inside (0, 1)");
        }
        if (spec.j_star <= 1 || spec.j_star >= spec.n) {
            throw std::invalid_argument(
                "concentration site j_star must satisfy 1 < j_star < n");
        }
    }
    if (spec.kind == IcKind::GeneralizedWeightedShock) {
        if (!(spec.sigma > 0.0) || !(spec.sigma < 1.0) ||
            !std::isfinite(spec.sigma)) {
            throw std::invalid_argument("sigma must lie strictly inside (0, 1)");
        }
    }
}

State make_ic(const InitialConditionSpec& spec,
              const std::vector<double>& phases) {
    validate(spec);
    const bool random = uses_random_phases(spec.kind);
    const auto n = static_cast<std::size_t>(spec.n);
    if (random && phases.size() != n) {
        throw std::invalid_argument("random-phase kinds need one phase per site");
    }
    if (!random && !phases.empty() && phases.size() != n) {
        throw std::invalid_argument("phase list, when given, must match n");
    }

    State state;
    state.b.resize(n);
    state.bc = spec.bc;
    for (std::size_t i = 0; i < n; ++i) {
        const int j = static_cast<int>(i) + 1;
        double amp = 0.0;
        double theta = 0.0;
        switch (spec.kind) {
            case IcKind::LocalizedRandomPhase:
                amp = (j == spec.j_star)
                          ? std::sqrt(1.0 - spec.eps * spec.eps)
                          : spec.eps / static_cast<double>(spec.n - 1);
                theta = phases[i];
                break;
            case IcKind::WeightedRandomPhase:
                amp = (j == spec.j_star) ? std::sqrt(1.0 - spec.eps * spec.eps)
                                         : spec.eps;
                amp /= static_cast<double>(j);
                theta = phases[i];
                break;
            case IcKind::Shock:
                amp = 1.0;
                theta = static_cast<double>(j - 1) * std::numbers::pi / 4.0;
                break;
            case IcKind::WeightedShock:
                amp = 1.0 / static_cast<double>(j);
                theta = static_cast<double>(j - 1) * std::numbers::pi / 4.0;
                break;
            case IcKind::GeneralizedWeightedShock:
                amp = 1.0 / std::pow(static_cast<double>(j), spec.sigma);
                theta = static_cast<double>(j - 1) * std::numbers::pi / 4.0;
                break;
        }
        state.b[i] = Complex(amp * std::cos(theta), amp * std::sin(theta));
    }
    return state;
}

CiResult ci95(const std::vector<double>& samples) {
    if (samples.empty()) {
        throw std::domain_error("ci95 needs at least one sample");
    }
    CiResult r;
    r.count = static_cast<int>(samples.size());
    double sum = 0.0;
    for (double x : samples) sum += x;
    r.mean = sum / static_cast<double>(r.count);
    if (r.count < 2) {
        r.degenerate = true;
        r.ci_lower = r.mean;
        r.ci_upper = r.mean;
        return r;
    }
    double sq = 0.0;
    for (double x : samples) {
        const double d = x - r.mean;
        sq += d * d;
    }
    r.stddev = std::sqrt(sq / static_cast<double>(r.count - 1));
    const double half =
        1.96 * r.stddev / std::sqrt(static_cast<double>(r.count));
    r.ci_lower = r.mean - half;
    r.ci_upper = r.mean + half;
    return r;
}

void validate(const EnsembleConfig& cfg) {
    validate(cfg.ic);
    if (cfg.realizations < 1) {
        throw std::invalid_argument("need at least one realization");
    }
    if (!(cfg.t_final > 0.0) || !std::isfinite(cfg.t_final)) {
        throw std::invalid_argument("t_final must be positive and finite");
    }
    if (cfg.norms.empty()) {
        throw std::invalid_argument("need at least one norm to track");
    }
    if (!(cfg.drift_tolerance > 0.0)) {
        throw std::invalid_argument("drift_tolerance must be positive");
    }
    double prev = -1.0;
    for (double t : cfg.sample_times) {
        if (!std::isfinite(t) || t < 0.0 || t > cfg.t_final) {
            throw std::invalid_argument("sample times must lie in [0, t_final]");
        }
        if (t <= prev) {
            throw std::invalid_argument("sample times must strictly increase");
        }
        prev = t;
    }
}

namespace {

// Everything produced by one realization, kept in an index-addressed slot
// so aggregation order never depends on thread scheduling.
struct RealizationSlot {
    bool ok = false;
    bool zero_norm = false;
    std::uint64_t seed = 0;
    std::string reason;
    // values[time_index][norm_index], already normalized by the t = 0 norm.
    std::vector<std::vector<double>> values;
    double rel_mass = 0.0;
    double rel_hamiltonian = 0.0;
};

void run_one(const EnsembleConfig& cfg, const std::vector<double>& times,
             int index, RealizationSlot& slot) {
    slot.seed = realization_seed(cfg.master_seed, static_cast<std::uint64_t>(index));
    std::vector<double> phases;
    if (uses_random_phases(cfg.ic.kind)) {
        SplitMix64 rng(slot.seed);
        phases = uniform_phases(rng, cfg.ic.n);
    }
    const State initial = make_ic(cfg.ic, phases);

    std::vector<double> norm0(cfg.norms.size());
    for (std::size_t ni = 0; ni < cfg.norms.size(); ++ni) {
        norm0[ni] = lattice_norm(initial, cfg.norms[ni]);
        if (!(norm0[ni] > 0.0)) {
            slot.zero_norm = true;
            slot.reason = "initial norm vanishes, cannot normalize";
            return;
        }
    }

    const Trajectory traj = simulate(initial, 0.0, cfg.t_final, times, cfg.integrator);
    const InvariantDrift drift = invariant_drift(traj);
    if (drift.rel_mass_valid) slot.rel_mass = drift.max_rel_mass;
    if (drift.rel_hamiltonian_valid) slot.rel_hamiltonian = drift.max_rel_hamiltonian;
    if (slot.rel_mass > cfg.drift_tolerance ||
        slot.rel_hamiltonian > cfg.drift_tolerance) {
        slot.reason = "invariant drift exceeded tolerance";
        return;
    }

    slot.values.resize(times.size());
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        slot.values[ti].resize(cfg.norms.size());
        for (std::size_t ni = 0; ni < cfg.norms.size(); ++ni) {
            slot.values[ti][ni] =
                lattice_norm(traj.states[ti], cfg.norms[ni]) / norm0[ni];
        }
    }
    slot.ok = true;
}

}  // namespace

EnsembleStats run_ensemble(const EnsembleConfig& cfg) {
    validate(cfg);
    const std::vector<double> times =
        cfg.sample_times.empty() ? std::vector<double>{0.0, cfg.t_final}
                                 : cfg.sample_times;

    const int m = cfg.realizations;
    std::vector<RealizationSlot> slots(static_cast<std::size_t>(m));
    std::atomic<int> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const int k = cursor.fetch_add(1, std::memory_order_relaxed);
            if (k >= m) return;
            RealizationSlot& slot = slots[static_cast<std::size_t>(k)];
            try {
                run_one(cfg, times, k, slot);
            } catch (const std::exception& e) {
                slot.ok = false;
                slot.reason = e.what();
            }
        }
    };

    const int nthreads = resolve_threads(cfg.threads, m);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    EnsembleStats out;
    out.sample_times = times;
    out.norms = cfg.norms;
    for (int k = 0; k < m; ++k) {
        const RealizationSlot& slot = slots[static_cast<std::size_t>(k)];
        if (slot.ok) {
            ++out.realizations;
            out.max_rel_mass_drift = std::max(out.max_rel_mass_drift, slot.rel_mass);
            out.max_rel_hamiltonian_drift =
                std::max(out.max_rel_hamiltonian_drift, slot.rel_hamiltonian);
        } else {
            if (slot.zero_norm) out.degenerate_normalization = true;
            out.failures.push_back({k, slot.seed, slot.reason});
        }
    }
    const auto failed = static_cast<double>(out.failures.size());
    if (failed > 0.10 * static_cast<double>(m)) {
        std::string msg = std::to_string(out.failures.size()) + " of " +
                          std::to_string(m) + " realizations failed";
        if (!out.failures.empty()) {
            msg += "; first: " + out.failures.front().reason;
        }
        throw EnsembleError(msg);
    }

    out.stats.resize(times.size());
    std::vector<double> column;
    column.reserve(static_cast<std::size_t>(out.realizations));
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        out.stats[ti].resize(cfg.norms.size());
        for (std::size_t ni = 0; ni < cfg.norms.size(); ++ni) {
            column.clear();
            for (int k = 0; k < m; ++k) {
                const RealizationSlot& slot = slots[static_cast<std::size_t>(k)];
                if (slot.ok) column.push_back(slot.values[ti][ni]);
            }
            out.stats[ti][ni] = ci95(column);
        }
    }
    return out;
}

}  // namespace cascade

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cascade/integrator.hpp"
#include "cascade/model.hpp"

namespace cascade {

enum class IcKind {
    LocalizedRandomPhase,    // mass parked at j_star, eps/(N-1) elsewhere
    WeightedRandomPhase,     // amplitudes damped by 1/j
    Shock,                   // |b_j| = 1, phases (j-1)*pi/4
    WeightedShock,           // shock phases, 1/j amplitudes
    GeneralizedWeightedShock // shock phases, 1/j^sigma amplitudes
};

struct InitialConditionSpec {
    IcKind kind = IcKind::LocalizedRandomPhase;
    int n = 0;
    double eps = 0.1;
    int j_star = 1;       // 1-based concentration site
    double sigma = 1.0;   // decay exponent for GeneralizedWeightedShock
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
};

void validate(const InitialConditionSpec& spec);

// Whether the kind consumes random phases at all; shock families are
// deterministic and need no RNG draw.
bool uses_random_phases(IcKind kind);

// Builds the lattice state. phases must have size n for random-phase
// kinds and may be empty for deterministic kinds.
State make_ic(const InitialConditionSpec& spec,
              const std::vector<double>& phases);

struct CiResult {
    double mean = 0.0;
    double stddev = 0.0;    // sample standard deviation (n-1)
    double ci_lower = 0.0;  // mean -/+ 1.96 * stddev / sqrt(count)
    double ci_upper = 0.0;
    int count = 0;
    bool degenerate = false;  // fewer than two samples: zero-width interval
};

CiResult ci95(const std::vector<double>& samples);

struct RealizationFailure {
    int index = 0;
    std::uint64_t seed = 0;
    std::string reason;
};

struct EnsembleConfig {
    InitialConditionSpec ic;
    int realizations = 100;
    double t_final = 100.0;
    std::vector<double> sample_times;  // empty: endpoints only
    std::vector<NormKind> norms;
    std::uint64_t master_seed = 1;
    IntegratorConfig integrator;
    double drift_tolerance = 1e-9;  // per-realization relative mass drift
    int threads = 0;                // 0: CASCADE_THREADS or hardware
};

void validate(const EnsembleConfig& cfg);

struct EnsembleStats {
    std::vector<double> sample_times;
    std::vector<NormKind> norms;
    // stats[time_index][norm_index], aggregated in realization order.
    std::vector<std::vector<CiResult>> stats;
    int realizations = 0;  // successful count
    std::vector<RealizationFailure> failures;
    bool normalized = true;
    // Kinds whose t=0 norm vanishes can't be normalized; reported, not
    // silently rescaled.
    bool degenerate_normalization = false;
    double max_rel_mass_drift = 0.0;
    double max_rel_hamiltonian_drift = 0.0;
};

class EnsembleError : public std::runtime_error {
  public:
    explicit EnsembleError(const std::string& what) : std::runtime_error(what) {}
};

// Runs the full ensemble; throws EnsembleError if more than 10% of
// realizations fail. Results are bit-identical for a fixed master seed
// regardless of thread count.
EnsembleStats run_ensemble(const EnsembleConfig& cfg);

}  // namespace cascade

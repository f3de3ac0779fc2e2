#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace cascade {

enum class RkMethod { EmbeddedRK8 };

struct IntegratorConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    // 0 selects the starting step automatically.
    double initial_step = 0.0;
    // > 0 disables adaptivity and marches with this step.
    double fixed_step = 0.0;
    std::int64_t max_steps = 200'000'000;
    RkMethod method = RkMethod::EmbeddedRK8;
};

struct StepStats {
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
    std::int64_t rhs_evals = 0;
};

// Sampled solution of a generic real ODE system.
struct RealTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    StepStats stats;
};

using Rhs =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

class IntegrationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Step budget exhausted; carries whatever samples were already collected.
class StepLimitError : public IntegrationError {
  public:
    StepLimitError(std::string msg, RealTrajectory partial, double reached)
        : IntegrationError(std::move(msg)),
          partial_trajectory(std::move(partial)),
          reached_time(reached) {}

    RealTrajectory partial_trajectory;
    double reached_time;
};

// Solution left the finite range; last_good_time is the latest accepted t.
class BlowUpError : public IntegrationError {
  public:
    BlowUpError(std::string msg, double t) : IntegrationError(std::move(msg)), last_good_time(t) {}

    double last_good_time;
};

// Adaptive embedded Runge-Kutta integration of y' = rhs(t, y) from t0
// towards t1. Every entry of sample_times (strictly increasing, within
// [t0, t1]) is hit exactly by clamping the step, never by interpolation.
RealTrajectory integrate(const Rhs& rhs, std::span<const double> y0, double t0,
                         double t1, std::span<const double> sample_times,
                         const IntegratorConfig& cfg = {});

}  // namespace cascade

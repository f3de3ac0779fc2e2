#include "cascade/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace cascade {

namespace {

// Prince-Dormand 8(7) embedded pair, 13 stages. The high-order weights
// propagate; the difference against the low-order weights estimates the
// local error per component.
constexpr int kStages = 13;

constexpr double kC[kStages] = {
    0.0,
    1.0 / 18.0,
    1.0 / 12.0,
    1.0 / 8.0,
    5.0 / 16.0,
    3.0 / 8.0,
    59.0 / 400.0,
    93.0 / 200.0,
    5490023248.0 / 9719169821.0,
    13.0 / 20.0,
    1201146811.0 / 1299019798.0,
    1.0,
    1.0,
};

constexpr double kA[kStages][kStages - 1] = {
    {},
    {1.0 / 18.0},
    {1.0 / 48.0, 1.0 / 16.0},
    {1.0 / 32.0, 0.0, 3.0 / 32.0},
    {5.0 / 16.0, 0.0, -75.0 / 64.0, 75.0 / 64.0},
    {3.0 / 80.0, 0.0, 0.0, 3.0 / 16.0, 3.0 / 20.0},
    {29443841.0 / 614563906.0, 0.0, 0.0, 77736538.0 / 692538347.0,
     -28693883.0 / 1125000000.0, 23124283.0 / 1800000000.0},
    {16016141.0 / 946692911.0, 0.0, 0.0, 61564180.0 / 158732637.0,
     22789713.0 / 633445777.0, 545815736.0 / 2771057229.0,
     -180193667.0 / 1043307555.0},
    {39632708.0 / 573591083.0, 0.0, 0.0, -433636366.0 / 683701615.0,
     -421739975.0 / 2616292301.0, 100302831.0 / 723423059.0,
     790204164.0 / 839813087.0, 800635310.0 / 3783071287.0},
    {246121993.0 / 1340847787.0, 0.0, 0.0, -37695042795.0 / 15268766246.0,
     -309121744.0 / 1061227803.0, -12992083.0 / 490766935.0,
     6005943493.0 / 2108947869.0, 393006217.0 / 1396673457.0,
     123872331.0 / 1001029789.0},
    {-1028468189.0 / 846180014.0, 0.0, 0.0, 8478235783.0 / 508512852.0,
     1311729495.0 / 1432422823.0, -10304129995.0 / 1701304382.0,
     -48777925059.0 / 3047939560.0, 15336726248.0 / 1032824649.0,
     -45442868181.0 / 3398467696.0, 3065993473.0 / 597172653.0},
    {185892177.0 / 718116043.0, 0.0, 0.0, -3185094517.0 / 667107341.0,
     -477755414.0 / 1098053517.0, -703635378.0 / 230739211.0,
     5731566787.0 / 1027545527.0, 5232866602.0 / 850066563.0,
     -4093664535.0 / 808688257.0, 3962137247.0 / 1805957418.0,
     65686358.0 / 487910083.0},
    {403863854.0 / 491063109.0, 0.0, 0.0, -5068492393.0 / 434740067.0,
     -411421997.0 / 543043805.0, 652783627.0 / 914296604.0,
     11173962825.0 / 925320556.0, -13158990841.0 / 6184727034.0,
     3936647629.0 / 1978049680.0, -160528059.0 / 685178525.0,
     248638103.0 / 1413531060.0, 0.0},
};

constexpr double kB8[kStages] = {
    14005451.0 / 335480064.0,
    0.0,
    0.0,
    0.0,
    0.0,
    -59238493.0 / 1068277825.0,
    181606767.0 / 758867731.0,
    561292985.0 / 797845732.0,
    -1041891430.0 / 1371343529.0,
    760417239.0 / 1151165299.0,
    118820643.0 / 751138087.0,
    -528747749.0 / 2220607170.0,
    1.0 / 4.0,
};

constexpr double kB7[kStages] = {
    13451932.0 / 455176623.0,
    0.0,
    0.0,
    0.0,
    0.0,
    -808719846.0 / 976000145.0,
    1757004468.0 / 5645159321.0,
    656045339.0 / 265891186.0,
    -3867574721.0 / 1518517206.0,
    465885868.0 / 322736535.0,
    53011238.0 / 667516719.0,
    2.0 / 45.0,
    0.0,
};

constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 1.0 / 8.0 - 0.75 * kBeta;
constexpr double kFacMin = 1.0 / 3.0;
constexpr double kFacMax = 6.0;

bool all_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

void check_config(const IntegratorConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
        throw std::invalid_argument("tolerances must be positive");
    }
    if (cfg.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    if (cfg.initial_step < 0.0 || cfg.fixed_step < 0.0) {
        throw std::invalid_argument("step sizes must be nonnegative");
    }
}

// Hairer's starting-step heuristic: balance the size of the state, its
// derivative, and an estimated second derivative at eighth order.
double initial_step_guess(const Rhs& rhs, std::span<const double> y0,
                          std::span<const double> f0, double t0, double span,
                          const IntegratorConfig& cfg, StepStats& stats) {
    const std::size_t n = y0.size();
    auto weighted_rms = [&](auto value) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
            const double v = value(i) / sc;
            sum += v * v;
        }
        return std::sqrt(sum / static_cast<double>(n));
    };

    const double d0 = weighted_rms([&](std::size_t i) { return y0[i]; });
    const double d1 = weighted_rms([&](std::size_t i) { return f0[i]; });
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
    h0 = std::min(h0, span);

    std::vector<double> y1(n);
    std::vector<double> f1(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
    rhs(t0 + h0, y1, f1);
    stats.rhs_evals += 1;
    if (!all_finite(f1)) return h0;

    const double d2 =
        weighted_rms([&](std::size_t i) { return f1[i] - f0[i]; }) / h0;

    const double d12 = std::max(d1, d2);
    double h1;
    if (d12 <= 1e-15) {
        h1 = std::max(1e-6, h0 * 1e-3);
    } else {
        h1 = std::pow(0.01 / d12, 1.0 / 8.0);
    }
    return std::min({100.0 * h0, h1, span});
}

}  // namespace

RealTrajectory integrate(const Rhs& rhs, std::span<const double> y0, double t0,
                         double t1, std::span<const double> sample_times,
                         const IntegratorConfig& cfg) {
    check_config(cfg);
    if (y0.empty()) throw std::invalid_argument("empty initial state");
    if (!all_finite(y0)) throw std::invalid_argument("non-finite initial state");
    if (!(t1 >= t0)) throw std::invalid_argument("t1 must be >= t0");
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < t0 || sample_times[i] > t1) {
            throw std::invalid_argument("sample time outside [t0, t1]");
        }
        if (i > 0 && !(sample_times[i] > sample_times[i - 1])) {
            throw std::invalid_argument("sample times not strictly increasing");
        }
    }

    const std::size_t n = y0.size();
    RealTrajectory traj;

    double t = t0;
    std::vector<double> y(y0.begin(), y0.end());

    std::size_t sample_idx = 0;
    if (sample_idx < sample_times.size() && sample_times[sample_idx] == t0) {
        traj.times.push_back(t0);
        traj.states.push_back(y);
        ++sample_idx;
    }
    if (t1 == t0) {
        traj.stats = StepStats{};
        return traj;
    }

    std::vector<std::vector<double>> k(kStages, std::vector<double>(n));
    std::vector<double> ytmp(n);
    std::vector<double> y8(n);

    const bool fixed = cfg.fixed_step > 0.0;

    rhs(t, y, k[0]);
    traj.stats.rhs_evals += 1;
    if (!all_finite(k[0])) {
        throw BlowUpError("non-finite derivative at initial state", t);
    }

    double h;
    if (fixed) {
        h = cfg.fixed_step;
    } else if (cfg.initial_step > 0.0) {
        h = std::min(cfg.initial_step, t1 - t0);
    } else {
        h = initial_step_guess(rhs, y, k[0], t0, t1 - t0, cfg, traj.stats);
    }

    double facold = 1e-4;
    bool last_rejected = false;

    while (t < t1) {
        if (traj.stats.accepted + traj.stats.rejected >= cfg.max_steps) {
            throw StepLimitError("step limit exceeded", std::move(traj), t);
        }
        if (!fixed && h < 1e-14 * std::max(std::abs(t), 1.0)) {
            throw BlowUpError("step size underflow", t);
        }

        const double next_target = sample_idx < sample_times.size()
                                       ? sample_times[sample_idx]
                                       : t1;
        double h_try = h;
        bool clamped = false;
        if (t + h_try >= next_target) {
            h_try = next_target - t;
            clamped = true;
        }

        // Stages. k[0] holds f(t, y) from the previous accepted step.
        bool stage_finite = true;
        for (int s = 1; s < kStages; ++s) {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (int j = 0; j < s; ++j) {
                    if (kA[s][j] != 0.0) acc += kA[s][j] * k[j][i];
                }
                ytmp[i] = y[i] + h_try * acc;
            }
            rhs(t + kC[s] * h_try, ytmp, k[s]);
            traj.stats.rhs_evals += 1;
            if (!all_finite(k[s])) {
                stage_finite = false;
                break;
            }
        }

        double err = 0.0;
        bool result_finite = stage_finite;
        if (stage_finite) {
            for (std::size_t i = 0; i < n; ++i) {
                double acc8 = 0.0;
                double accd = 0.0;
                for (int s = 0; s < kStages; ++s) {
                    acc8 += kB8[s] * k[s][i];
                    accd += (kB8[s] - kB7[s]) * k[s][i];
                }
                y8[i] = y[i] + h_try * acc8;
                if (!std::isfinite(y8[i])) {
                    result_finite = false;
                    break;
                }
                const double sc =
                    cfg.abs_tol +
                    cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y8[i]));
                err = std::max(err, std::abs(h_try * accd) / sc);
            }
        }

        if (!result_finite) {
            if (fixed) throw BlowUpError("non-finite state in fixed-step mode", t);
            traj.stats.rejected += 1;
            last_rejected = true;
            h = 0.5 * h_try;
            continue;
        }

        if (!fixed && err > 1.0) {
            traj.stats.rejected += 1;
            last_rejected = true;
            const double grow =
                std::clamp(kSafety / std::pow(err, kExpo1), kFacMin, 1.0);
            h = h_try * grow;
            continue;
        }

        // Accepted.
        traj.stats.accepted += 1;
        t = clamped ? next_target : t + h_try;
        y.swap(y8);

        if (sample_idx < sample_times.size() && t == sample_times[sample_idx]) {
            traj.times.push_back(t);
            traj.states.push_back(y);
            ++sample_idx;
        }

        if (t >= t1) break;

        rhs(t, y, k[0]);
        traj.stats.rhs_evals += 1;
        if (!all_finite(k[0])) {
            if (fixed) throw BlowUpError("non-finite derivative", t);
            // Cannot continue from a poisoned derivative; the state itself
            // is finite, so report the last good time.
            throw BlowUpError("non-finite derivative at accepted state", t);
        }

        if (!fixed) {
            double grow;
            if (err == 0.0) {
                grow = kFacMax;
            } else {
                grow = kSafety * std::pow(facold, kBeta) / std::pow(err, kExpo1);
                grow = std::clamp(grow, kFacMin, kFacMax);
            }
            if (last_rejected) grow = std::min(grow, 1.0);
            facold = std::max(err, 1e-4);
            const double h_controller = h_try * grow;
            // A clamped hit says nothing about the natural scale; keep the
            // larger of the previous natural step and the controller's
            // suggestion so sampling cannot starve the step size.
            h = clamped ? std::max(h, h_controller) : h_controller;
            last_rejected = false;
        }
    }

    return traj;
}

}  // namespace cascade

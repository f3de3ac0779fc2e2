#include "cascade/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace cascade {

BigInt coupling_determinant(int n) {
    if (n < 1) throw std::invalid_argument("lattice size must be positive");
    if (n == 1) return BigInt(-1);
    BigInt prev2(-1);  // det_1
    BigInt prev(-3);   // det_2
    for (int k = 3; k <= n; ++k) {
        BigInt d = -prev - 4 * prev2;
        prev2 = std::move(prev);
        prev = std::move(d);
    }
    return prev;
}

namespace {

// Thomas elimination for the fixed stencil (2, -1, 2); returns false when
// a pivot loses more than eight digits, signalling the pivoting fallback.
bool solve_thomas(int n, double omega, std::vector<double>& x) {
    std::vector<double> cp(n, 0.0);
    std::vector<double> dp(n, 0.0);
    double pivot = -1.0;
    cp[0] = 2.0 / pivot;
    dp[0] = omega / pivot;
    for (int i = 1; i < n; ++i) {
        const double elim = 2.0 * cp[i - 1];
        pivot = -1.0 - elim;
        if (std::abs(pivot) < 1e-8 * (1.0 + std::abs(elim))) return false;
        if (i + 1 < n) cp[i] = 2.0 / pivot;
        dp[i] = (omega - 2.0 * dp[i - 1]) / pivot;
    }
    x.assign(n, 0.0);
    x[n - 1] = dp[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = dp[i] - cp[i] * x[i + 1];
    return true;
}

// Banded Gaussian elimination with adjacent-row partial pivoting; handles
// the fill-in one column beyond the superdiagonal.
std::vector<double> solve_banded_pivot(int n, double omega) {
    std::vector<double> sub(n, 2.0);   // column i-1 of row i
    std::vector<double> p0(n, -1.0);   // column i
    std::vector<double> p1(n, 0.0);    // column i+1
    std::vector<double> p2(n, 0.0);    // column i+2
    std::vector<double> rhs(n, omega);
    sub[0] = 0.0;
    for (int i = 0; i + 1 < n; ++i) p1[i] = 2.0;

    for (int k = 0; k + 1 < n; ++k) {
        if (std::abs(sub[k + 1]) > std::abs(p0[k])) {
            std::swap(p0[k], sub[k + 1]);
            std::swap(p1[k], p0[k + 1]);
            std::swap(p2[k], p1[k + 1]);
            std::swap(rhs[k], rhs[k + 1]);
        }
        if (p0[k] == 0.0) throw std::runtime_error("singular coupling system");
        const double m = sub[k + 1] / p0[k];
        p0[k + 1] -= m * p1[k];
        p1[k + 1] -= m * p2[k];
        rhs[k + 1] -= m * rhs[k];
    }
    if (p0[n - 1] == 0.0) throw std::runtime_error("singular coupling system");

    std::vector<double> x(n, 0.0);
    x[n - 1] = rhs[n - 1] / p0[n - 1];
    if (n >= 2) x[n - 2] = (rhs[n - 2] - p1[n - 2] * x[n - 1]) / p0[n - 2];
    for (int k = n - 3; k >= 0; --k) {
        x[k] = (rhs[k] - p1[k] * x[k + 1] - p2[k] * x[k + 2]) / p0[k];
    }
    return x;
}

double max_residual(const std::vector<double>& rho, double omega) {
    const int n = static_cast<int>(rho.size());
    double r = 0.0;
    for (int j = 0; j < n; ++j) {
        double lhs = -rho[j];
        if (j > 0) lhs += 2.0 * rho[j - 1];
        if (j + 1 < n) lhs += 2.0 * rho[j + 1];
        r = std::max(r, std::abs(lhs - omega));
    }
    return r;
}

}  // namespace

PhaseLockedProfile solve_phase_locked(int n, double omega) {
    if (n < 1) throw std::invalid_argument("lattice size must be positive");
    if (omega == 0.0 || !std::isfinite(omega)) {
        throw std::invalid_argument("omega must be nonzero and finite");
    }

    PhaseLockedProfile p;
    p.omega = omega;

    const double bound = 1e-10 * std::abs(omega);
    bool ok = solve_thomas(n, omega, p.rho);
    if (ok) p.residual_max = max_residual(p.rho, omega);
    if (!ok || p.residual_max > 0.5 * bound) {
        p.rho = solve_banded_pivot(n, omega);
        p.residual_max = max_residual(p.rho, omega);
    }

    double max_abs = 0.0;
    double min_val = p.rho[0];
    for (double v : p.rho) {
        max_abs = std::max(max_abs, std::abs(v));
        min_val = std::min(min_val, v);
    }
    const double floor = p.positivity_tol * max_abs;
    p.strictly_positive = min_val > floor;
    p.near_zero_entries = false;
    for (double v : p.rho) {
        if (std::abs(v) <= floor) p.near_zero_entries = true;
    }
    return p;
}

std::vector<int> scan_positive(int n_max, double omega) {
    if (n_max < 1) throw std::invalid_argument("scan bound must be positive");
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    std::vector<int> hits;
    for (int n = 1; n <= n_max; ++n) {
        if (solve_phase_locked(n, omega).strictly_positive) hits.push_back(n);
    }
    return hits;
}

State embed_blocks(const std::vector<PhaseLockedProfile>& blocks,
                   const std::vector<int>& offsets, int n_total, double phase) {
    if (n_total < 1) throw std::invalid_argument("lattice size must be positive");
    if (blocks.size() != offsets.size()) {
        throw std::invalid_argument("one offset per block required");
    }

    State out;
    out.bc = BoundaryCondition::Dirichlet;
    out.b.assign(n_total, Complex(0.0, 0.0));
    if (blocks.empty()) return out;

    for (std::size_t i = 1; i < blocks.size(); ++i) {
        if (blocks[i].omega != blocks[0].omega) {
            throw std::invalid_argument("blocks must share omega");
        }
    }

    std::vector<std::size_t> order(blocks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return offsets[a] < offsets[b]; });

    int prev_end = 0;  // last occupied site so far, 1-based
    for (std::size_t idx : order) {
        const int start = offsets[idx];
        const int len = static_cast<int>(blocks[idx].size());
        const int end = start + len - 1;
        if (start < 1 || end > n_total) {
            throw std::invalid_argument("block outside the lattice");
        }
        // >= 1 zero site between blocks keeps them dynamically decoupled.
        if (prev_end > 0 && start <= prev_end + 1) {
            throw std::invalid_argument("blocks overlap or touch");
        }
        prev_end = end;

        const Complex rot(std::cos(phase), std::sin(phase));
        for (int j = 0; j < len; ++j) {
            const double rho = blocks[idx].rho[j];
            if (rho < 0.0) {
                throw std::domain_error("block density must be nonnegative");
            }
            out.b[start - 1 + j] = std::sqrt(rho) * rot;
        }
    }
    return out;
}

}  // namespace cascade

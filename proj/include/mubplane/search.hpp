#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mubplane/mub.hpp"

namespace mubplane {

struct SearchConfig {
    int dimension = 6;
    int target_count = 3; // total bases, the fixed identity included
    int restarts = 20;
    int max_iterations = 5000;
    double initial_step = 1.0;
    double step_decay = 1.0; // per-iteration multiplier on the trial step
    double convergence_threshold = 1e-10;
    double stall_threshold = 1e-12; // relative drop over the stall window
    std::uint64_t seed = 0;
};

inline constexpr int kStallWindow = 50;
inline constexpr double kRealizationTol = 1e-10;

// Each free basis is the exponential of i times a Hermitian generator; the
// first basis stays at the identity, which pins the global unitary gauge.
// Packing per free basis: d diagonal entries, then (re, im) for the upper
// triangle in row-major order.
struct BasisParameters {
    int dimension = 0;
    int basis_count = 0;
    std::vector<double> theta;

    static int params_per_basis(int d) { return d * d; }

    BasisParameters() = default;
    BasisParameters(int dim, int count)
        : dimension(dim), basis_count(count),
          theta(static_cast<std::size_t>(count - 1) * params_per_basis(dim), 0.0) {}

    Eigen::MatrixXcd generator(int free_index) const;
    std::vector<Basis> realize() const;
    MubSet realize_set() const;
};

// Sum over unordered basis pairs and entries of (|<a_i|b_j>|^2 - 1/d)^2;
// zero exactly at a mutually unbiased configuration. Raw sets are checked
// for orthonormality at 1e-10 first (PreconditionError).
double mub_cost(const MubSet& s);

// Analytic gradient of the composite map theta -> unitaries -> cost, via
// the divided-difference derivative of the exponential in the generator's
// eigenbasis. Layout matches BasisParameters::theta.
std::vector<double> cost_gradient(const BasisParameters& p);

struct SearchResult {
    double best_cost = std::numeric_limits<double>::infinity();
    MubSet best_set;
    bool converged = false;
    int iterations_used = 0;
    std::vector<double> per_restart_costs;
    std::uint64_t seed_used = 0;
};

struct TraceRow {
    int iteration = 0;
    int restart = 0;
    double cost = 0.0;
};

// Seeded multi-restart gradient descent with a backtracking line search
// (halve the trial step until the cost decreases). Restarts are seeded
// independently, so results do not depend on num_threads; per-restart
// trajectories are bit-reproducible for a fixed config.
SearchResult optimize(const SearchConfig& config, int num_threads = 1,
                      std::vector<TraceRow>* trace = nullptr);

// Largest m in 2..d+1 for which optimize converges, stopping at the first
// failure; 1 if even m = 2 fails.
int search_max_mubs(int d, const SearchConfig& base_config, int num_threads = 1,
                    std::vector<SearchResult>* runs = nullptr);

} // namespace mubplane

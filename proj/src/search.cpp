#include "mubplane/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mubplane/kernels.hpp"

namespace mubplane {

namespace {

using Complex = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Deterministic standard normals: Box-Muller over the raw engine output,
// independent of any library distribution implementation.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = unit();
        if (u1 <= 0.0)
            u1 = std::numeric_limits<double>::min();
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

private:
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

void validate(const SearchConfig& c) {
    if (c.dimension < 2)
        throw DomainError("search dimension must be at least 2");
    if (c.target_count < 2 || c.target_count > c.dimension + 1)
        throw DomainError("target basis count must lie in 2..d+1");
    if (c.restarts < 1 || c.max_iterations < 1)
        throw DomainError("restarts and max_iterations must be positive");
    if (!(c.initial_step > 0.0))
        throw DomainError("initial_step must be positive");
    if (!(c.step_decay > 0.0) || c.step_decay > 1.0)
        throw DomainError("step_decay must lie in (0, 1]");
    if (c.convergence_threshold < 0.0 || c.stall_threshold < 0.0)
        throw DomainError("thresholds must be nonnegative");
}

struct EigenDecomp {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

EigenDecomp decompose(const Eigen::MatrixXcd& hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian);
    return EigenDecomp{es.eigenvalues(), es.eigenvectors()};
}

Eigen::MatrixXcd exp_i(const EigenDecomp& ed) {
    const Eigen::Index d = ed.values.size();
    Eigen::VectorXcd phases(d);
    for (Eigen::Index k = 0; k < d; ++k)
        phases(k) = Complex(std::cos(ed.values(k)), std::sin(ed.values(k)));
    return ed.vectors * phases.asDiagonal() * ed.vectors.adjoint();
}

// Divided differences of exp(i * lambda) on the eigenvalue grid.
Eigen::MatrixXcd phi_matrix(const Eigen::VectorXd& lambda) {
    const Eigen::Index d = lambda.size();
    Eigen::MatrixXcd phi(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        const Complex ea(std::cos(lambda(a)), std::sin(lambda(a)));
        for (Eigen::Index b = 0; b < d; ++b) {
            const double diff = lambda(a) - lambda(b);
            if (std::abs(diff) < 1e-9) {
                const double mid = 0.5 * (lambda(a) + lambda(b));
                phi(a, b) = Complex(0, 1) * Complex(std::cos(mid), std::sin(mid));
            } else {
                const Complex eb(std::cos(lambda(b)), std::sin(lambda(b)));
                phi(a, b) = (ea - eb) / diff;
            }
        }
    }
    return phi;
}

std::vector<Basis> realize_from(const std::vector<EigenDecomp>& decomps, int dimension) {
    std::vector<Basis> bases;
    bases.reserve(decomps.size() + 1);
    bases.push_back(standard_basis(dimension));
    for (const auto& ed : decomps)
        bases.push_back(exp_i(ed));
    return bases;
}

std::vector<EigenDecomp> decompose_all(const BasisParameters& p) {
    std::vector<EigenDecomp> decomps;
    decomps.reserve(static_cast<std::size_t>(p.basis_count - 1));
    for (int k = 0; k + 1 < p.basis_count; ++k)
        decomps.push_back(decompose(p.generator(k)));
    return decomps;
}

double cost_of(const std::vector<Basis>& bases) {
    return kernels::mub_cost_kernel_serial(bases);
}

} // namespace

Eigen::MatrixXcd BasisParameters::generator(int free_index) const {
    const int d = dimension;
    const std::size_t offset =
        static_cast<std::size_t>(free_index) * static_cast<std::size_t>(params_per_basis(d));
    Eigen::MatrixXcd h(d, d);
    std::size_t at = offset;
    for (int r = 0; r < d; ++r)
        h(r, r) = theta[at++];
    for (int r = 0; r < d; ++r)
        for (int c = r + 1; c < d; ++c) {
            const double re = theta[at++];
            const double im = theta[at++];
            h(r, c) = Complex(re, im);
            h(c, r) = Complex(re, -im);
        }
    return h;
}

std::vector<Basis> BasisParameters::realize() const {
    return realize_from(decompose_all(*this), dimension);
}

MubSet BasisParameters::realize_set() const {
    return MubSet{dimension, realize()};
}

double mub_cost(const MubSet& s) {
    if (s.dimension < 1)
        throw DomainError("set dimension must be positive");
    for (const Basis& b : s.bases) {
        if (b.rows() != s.dimension || b.cols() != s.dimension)
            throw DomainError("basis dimension does not match the set");
        if (!check_orthonormal(b, kRealizationTol).pass)
            throw PreconditionError("mub_cost requires orthonormal bases (1e-10)");
    }
    return cost_of(s.bases);
}

std::vector<double> cost_gradient(const BasisParameters& p) {
    const int d = p.dimension;
    const int m = p.basis_count;
    const double inv_d = 1.0 / static_cast<double>(d);

    const auto decomps = decompose_all(p);
    const auto bases = realize_from(decomps, d);

    // Accumulate dC = 2 Re tr(Gamma_k^H dU_k) over all pairs.
    std::vector<Eigen::MatrixXcd> gamma(static_cast<std::size_t>(m - 1),
                                        Eigen::MatrixXcd::Zero(d, d));
    for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l) {
            const Eigen::MatrixXcd cross = bases[static_cast<std::size_t>(k)].adjoint() *
                                           bases[static_cast<std::size_t>(l)];
            Eigen::MatrixXcd sensitivity(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    const Complex mij = cross(i, j);
                    sensitivity(i, j) = 2.0 * (std::norm(mij) - inv_d) * mij;
                }
            if (k > 0)
                gamma[static_cast<std::size_t>(k - 1)] +=
                    bases[static_cast<std::size_t>(l)] * sensitivity.adjoint();
            if (l > 0)
                gamma[static_cast<std::size_t>(l - 1)] +=
                    bases[static_cast<std::size_t>(k)] * sensitivity;
        }

    std::vector<double> grad(p.theta.size(), 0.0);
    const int per = BasisParameters::params_per_basis(d);
    for (int k = 0; k + 1 < m; ++k) {
        const auto& ed = decomps[static_cast<std::size_t>(k)];
        const Eigen::MatrixXcd a = ed.vectors.adjoint() *
                                   gamma[static_cast<std::size_t>(k)] * ed.vectors;
        const Eigen::MatrixXcd w = a.conjugate().cwiseProduct(phi_matrix(ed.values));
        const Eigen::MatrixXcd z = ed.vectors * w.transpose() * ed.vectors.adjoint();

        std::size_t at = static_cast<std::size_t>(k) * static_cast<std::size_t>(per);
        for (int r = 0; r < d; ++r)
            grad[at++] = 2.0 * z(r, r).real();
        for (int r = 0; r < d; ++r)
            for (int c = r + 1; c < d; ++c) {
                grad[at++] = 2.0 * (z(r, c) + z(c, r)).real();
                grad[at++] = 2.0 * (z(r, c).imag() - z(c, r).imag());
            }
    }
    return grad;
}

namespace {

struct RestartOutcome {
    double cost = std::numeric_limits<double>::infinity();
    int iterations = 0;
    BasisParameters params;
    std::vector<TraceRow> trace;
};

RestartOutcome run_restart(const SearchConfig& config, int restart, bool want_trace) {
    const int d = config.dimension;
    BasisParameters params(d, config.target_count);
    GaussianSource gauss(splitmix64(config.seed + static_cast<std::uint64_t>(restart) + 1));
    for (double& t : params.theta)
        t = gauss();

    RestartOutcome out;
    double cost = cost_of(params.realize());
    if (want_trace)
        out.trace.push_back({0, restart, cost});

    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(config.max_iterations) + 1);
    history.push_back(cost);

    double step = config.initial_step;
    int iter = 0;
    while (iter < config.max_iterations && cost >= config.convergence_threshold) {
        ++iter;
        const std::vector<double> grad = cost_gradient(params);

        BasisParameters candidate = params;
        double trial = step * config.step_decay;
        bool accepted = false;
        double candidate_cost = cost;
        while (trial > 1e-18) {
            for (std::size_t i = 0; i < params.theta.size(); ++i)
                candidate.theta[i] = params.theta[i] - trial * grad[i];
            candidate_cost = cost_of(candidate.realize());
            if (candidate_cost < cost) {
                accepted = true;
                break;
            }
            trial *= 0.5;
        }
        if (!accepted)
            break; // no descent direction left at this resolution

        params.theta.swap(candidate.theta);
        cost = candidate_cost;
        step = trial * 2.0;
        history.push_back(cost);
        if (want_trace)
            out.trace.push_back({iter, restart, cost});

        const std::size_t back = history.size() - 1;
        if (back >= kStallWindow) {
            const double before = history[back - kStallWindow];
            if (before > 0.0 && (before - cost) < config.stall_threshold * before)
                break;
        }
    }

    out.cost = cost;
    out.iterations = iter;
    out.params = std::move(params);
    return out;
}

} // namespace

SearchResult optimize(const SearchConfig& config, int num_threads,
                      std::vector<TraceRow>* trace) {
    validate(config);
    if (num_threads < 1)
        throw DomainError("num_threads must be positive");

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
    const bool want_trace = (trace != nullptr);
#pragma omp parallel for schedule(dynamic) num_threads(num_threads) if (num_threads > 1)
    for (int r = 0; r < config.restarts; ++r)
        outcomes[static_cast<std::size_t>(r)] = run_restart(config, r, want_trace);

    SearchResult result;
    result.seed_used = config.seed;
    result.per_restart_costs.reserve(outcomes.size());
    int best = 0;
    for (int r = 0; r < config.restarts; ++r) {
        result.per_restart_costs.push_back(outcomes[static_cast<std::size_t>(r)].cost);
        if (outcomes[static_cast<std::size_t>(r)].cost < outcomes[static_cast<std::size_t>(best)].cost)
            best = r;
    }
    result.best_cost = outcomes[static_cast<std::size_t>(best)].cost;
    result.iterations_used = outcomes[static_cast<std::size_t>(best)].iterations;
    result.best_set = outcomes[static_cast<std::size_t>(best)].params.realize_set();
    result.converged = result.best_cost < config.convergence_threshold;
    if (trace) {
        for (const auto& o : outcomes)
            trace->insert(trace->end(), o.trace.begin(), o.trace.end());
    }
    return result;
}

int search_max_mubs(int d, const SearchConfig& base_config, int num_threads,
                    std::vector<SearchResult>* runs) {
    if (d < 2)
        throw DomainError("search dimension must be at least 2");
    int best = 1;
    for (int m = 2; m <= d + 1; ++m) {
        SearchConfig config = base_config;
        config.dimension = d;
        config.target_count = m;
        SearchResult result = optimize(config, num_threads);
        const bool converged = result.converged;
        if (runs)
            runs->push_back(std::move(result));
        if (!converged)
            break;
        best = m;
    }
    return best;
}

} // namespace mubplane

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numbers>
#include <random>

#include "mubplane/search.hpp"

using namespace mubplane;
using Complex = std::complex<double>;

namespace {

MubSet pauli_eigenbases() {
    const double s = 1.0 / std::sqrt(2.0);
    Basis z = standard_basis(2);
    Basis x(2, 2);
    x << s, s, s, -s;
    Basis y(2, 2);
    y << Complex(s, 0), Complex(s, 0), Complex(0, s), Complex(0, -s);
    return MubSet{2, {z, x, y}};
}

BasisParameters random_point(int d, int m, std::uint64_t seed) {
    BasisParameters p(d, m);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (double& t : p.theta)
        t = normal(rng);
    return p;
}

// Central finite differences of the cost through the full realization map.
std::vector<double> fd_gradient(const BasisParameters& p, double h) {
    std::vector<double> g(p.theta.size(), 0.0);
    for (std::size_t i = 0; i < p.theta.size(); ++i) {
        BasisParameters lo = p;
        BasisParameters hi = p;
        lo.theta[i] -= h;
        hi.theta[i] += h;
        g[i] = (mub_cost(hi.realize_set()) - mub_cost(lo.realize_set())) / (2.0 * h);
    }
    return g;
}

double max_rel_gradient_error(const BasisParameters& p) {
    const auto analytic = cost_gradient(p);
    const auto fd = fd_gradient(p, 1e-5);
    double scale = 1e-12;
    for (double x : fd)
        scale = std::max(scale, std::abs(x));
    double err = 0.0;
    for (std::size_t i = 0; i < fd.size(); ++i)
        err = std::max(err, std::abs(analytic[i] - fd[i]));
    return err / scale;
}

} // namespace

TEST_CASE("mub_cost worked examples") {
    CHECK(mub_cost(pauli_eigenbases()) < 1e-12);

    // Two copies of the identity in d = 2: four entries, each (1/2)^2.
    const MubSet twins{2, {standard_basis(2), standard_basis(2)}};
    CHECK(mub_cost(twins) == 1.0);

    MubSet skewed{2, {standard_basis(2), standard_basis(2)}};
    skewed.bases[1].col(0) *= 1.001;
    CHECK_THROWS_AS(mub_cost(skewed), PreconditionError);
}

TEST_CASE("mub_cost ignores column phases") {
    const MubSet set = construct_mub_set(3);
    const double before = mub_cost(set);
    MubSet rotated = set;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (Basis& b : rotated.bases)
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
            const double a = angle(rng);
            b.col(c) *= Complex(std::cos(a), std::sin(a));
        }
    CHECK(std::abs(mub_cost(rotated) - before) <= 1e-12);
}

TEST_CASE("cost and the metric check agree about unbiasedness") {
    for (std::uint64_t d : {2ull, 3ull, 4ull, 5ull}) {
        const MubSet set = construct_mub_set(d);
        CHECK(mub_cost(set) < 1e-12);
        CHECK(check_mub_set(set, 1e-6).pass);
    }
    // A genuinely biased configuration scores well above zero and fails.
    const MubSet pair{3, {standard_basis(3), standard_basis(3)}};
    CHECK(mub_cost(pair) > 0.1);
    CHECK_FALSE(check_mub_set(pair, 1e-6).pass);
}

TEST_CASE("realized bases are unitary to 1e-10") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const int d = 2 + static_cast<int>(seed % 5);
        const int m = 2 + static_cast<int>(seed % 2);
        const auto bases = random_point(d, m, seed).realize();
        CHECK(bases.front() == standard_basis(d));
        for (const Basis& b : bases)
            CHECK(check_orthonormal(b, 1e-10).pass);
    }
}

TEST_CASE("generator packing round-trips through the Hermitian layout") {
    const BasisParameters p = random_point(4, 3, 77);
    for (int k = 0; k < 2; ++k) {
        const Eigen::MatrixXcd h = p.generator(k);
        CHECK(h.rows() == 4);
        CHECK((h - h.adjoint()).norm() == 0.0);
    }
}

TEST_CASE("analytic gradient matches central finite differences") {
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 20; ++seed) {
        const int d = 2 + static_cast<int>(seed % 3);
        const int m = 2 + static_cast<int>(seed % 2);
        const BasisParameters p = random_point(d, m, 1000 + seed);
        CAPTURE(d);
        CAPTURE(m);
        CHECK(max_rel_gradient_error(p) < 1e-5);
        ++checked;
    }
}

TEST_CASE("gradient matches finite differences at the zero generators") {
    BasisParameters p(3, 3); // all bases the identity; eigenvalues degenerate
    CHECK(max_rel_gradient_error(p) < 1e-5);
}

TEST_CASE("gradient vanishes at an exact unbiased configuration") {
    // exp(i H) with H = (pi / (2 sqrt 2)) [[1,1],[1,-1]] is the Hadamard
    // matrix times a global phase, so {identity, exp(iH)} is exactly
    // unbiased and the interior minimum has zero gradient.
    BasisParameters p(2, 2);
    const double c = std::numbers::pi / (2.0 * std::sqrt(2.0));
    p.theta = {c, -c, c, 0.0};
    CHECK(mub_cost(p.realize_set()) < 1e-24);
    double norm = 0.0;
    for (double g : cost_gradient(p))
        norm += g * g;
    CHECK(std::sqrt(norm) < 1e-8);
}

TEST_CASE("optimize converges for d=2, m=3") {
    SearchConfig config;
    config.dimension = 2;
    config.target_count = 3;
    config.restarts = 8;
    config.seed = 1;
    const SearchResult result = optimize(config);
    CHECK(result.converged);
    CHECK(result.best_cost < 1e-10);
    CHECK(result.per_restart_costs.size() == 8);
    CHECK(result.best_cost == *std::min_element(result.per_restart_costs.begin(),
                                                result.per_restart_costs.end()));
    CHECK(result.best_set.bases.size() == 3);
    CHECK(check_mub_set(result.best_set, 1e-4).pass);
    CHECK(result.seed_used == 1);
}

TEST_CASE("optimize is bit-reproducible and thread-count independent") {
    SearchConfig config;
    config.dimension = 3;
    config.target_count = 3;
    config.restarts = 6;
    config.max_iterations = 400;
    config.seed = 42;
    const SearchResult a = optimize(config, 1);
    const SearchResult b = optimize(config, 1);
    CHECK(a.per_restart_costs == b.per_restart_costs);
    CHECK(a.best_cost == b.best_cost);

    const SearchResult c = optimize(config, 3);
    CHECK(c.per_restart_costs == a.per_restart_costs);
    CHECK(c.best_cost == a.best_cost);
}

TEST_CASE("accepted line-search steps never increase the cost") {
    SearchConfig config;
    config.dimension = 4;
    config.target_count = 3;
    config.restarts = 3;
    config.max_iterations = 300;
    config.seed = 9;
    std::vector<TraceRow> trace;
    optimize(config, 1, &trace);
    REQUIRE_FALSE(trace.empty());
    std::map<int, double> last;
    for (const TraceRow& row : trace) {
        auto it = last.find(row.restart);
        if (it != last.end())
            CHECK(row.cost < it->second);
        last[row.restart] = row.cost;
    }
    CHECK(last.size() == 3);
}

TEST_CASE("search_max_mubs finds the complete sets for small prime powers") {
    SearchConfig base;
    base.seed = 1;
    CHECK(search_max_mubs(2, base, 2) == 3);
    CHECK(search_max_mubs(3, base, 2) == 4);
}

TEST_CASE("search_max_mubs matches d+1 for prime powers up to 5") {
    SearchConfig base;
    base.seed = 1;
    CHECK(search_max_mubs(4, base, 4) == 5);
    CHECK(search_max_mubs(5, base, 4) == 6);
}

TEST_CASE("configuration validation") {
    SearchConfig config;
    config.dimension = 1;
    CHECK_THROWS_AS(optimize(config), DomainError);
    config.dimension = 3;
    config.target_count = 5; // exceeds d+1
    CHECK_THROWS_AS(optimize(config), DomainError);
    config.target_count = 3;
    config.step_decay = 1.5;
    CHECK_THROWS_AS(optimize(config), DomainError);
    config.step_decay = 1.0;
    config.initial_step = 0.0;
    CHECK_THROWS_AS(optimize(config), DomainError);
    config.initial_step = 1.0;
    CHECK_THROWS_AS(optimize(config, 0), DomainError);
    CHECK_THROWS_AS(search_max_mubs(1, config), DomainError);
}

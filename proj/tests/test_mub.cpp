#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mubplane/json_io.hpp"
#include "mubplane/mub.hpp"
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

} // namespace

TEST_CASE("check_orthonormal worked examples") {
    for (int d : {2, 3, 5, 8}) {
        const auto rep = check_orthonormal(standard_basis(d), 1e-12);
        CHECK(rep.max_deviation == 0.0);
        CHECK(rep.pass);
    }

    CHECK(check_orthonormal(fourier_basis(4), 1e-12).pass);

    // A column scaled by two: the Gram diagonal reads <v|v> = 4.
    Basis doubled = standard_basis(3);
    doubled.col(1) *= 2.0;
    const auto rep = check_orthonormal(doubled, 1e-9);
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_deviation == doctest::Approx(3.0));

    // A column duplicated: an off-diagonal Gram entry reads 1.
    Basis repeated = standard_basis(3);
    repeated.col(1) = repeated.col(0);
    const auto rep2 = check_orthonormal(repeated, 1e-9);
    CHECK_FALSE(rep2.pass);
    CHECK(rep2.max_deviation == doctest::Approx(1.0));

    CHECK_THROWS_AS(check_orthonormal(standard_basis(3), 0.0), DomainError);
    CHECK_THROWS_AS(check_orthonormal(Eigen::MatrixXcd::Zero(3, 2), 1e-9), DomainError);
}

TEST_CASE("check_pair_unbiased worked examples") {
    CHECK(check_pair_unbiased(standard_basis(3), fourier_basis(3), 1e-12).pass);
    CHECK(check_pair_unbiased(standard_basis(3), fourier_basis(3), 1e-12).max_deviation <
          1e-13);

    const auto self = check_pair_unbiased(fourier_basis(3), fourier_basis(3), 1e-9);
    CHECK_FALSE(self.pass);
    CHECK(self.max_deviation == doctest::Approx(1.0 / std::sqrt(3.0)));

    const double s = 1.0 / std::sqrt(2.0);
    Basis hadamard(2, 2);
    hadamard << s, s, s, -s;
    CHECK(check_pair_unbiased(standard_basis(2), hadamard, 1e-12).max_deviation == 0.0);

    CHECK_THROWS_AS(check_pair_unbiased(standard_basis(2), standard_basis(3), 1e-9),
                    DomainError);
}

TEST_CASE("unbiasedness deviation is symmetric to the last bit") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        BasisParameters params(4, 3);
        std::normal_distribution<double> normal;
        for (double& t : params.theta)
            t = normal(rng);
        const auto bases = params.realize();
        const auto ab = check_pair_unbiased(bases[1], bases[2], 1e-9);
        const auto ba = check_pair_unbiased(bases[2], bases[1], 1e-9);
        CHECK(ab.max_deviation == ba.max_deviation);
    }
}

TEST_CASE("check_mub_set worked examples") {
    const auto report = check_mub_set(pauli_eigenbases(), 1e-12);
    CHECK(report.pass);
    CHECK(report.overall_max_deviation < 1e-12);
    CHECK(report.pair_results.size() == 3);
    CHECK(report.orthonormality_deviation.size() == 3);

    const auto single = check_mub_set(MubSet{5, {standard_basis(5)}}, 1e-12);
    CHECK(single.pass);
    CHECK(single.pair_results.empty());

    MubSet overfull{2, {standard_basis(2), standard_basis(2), standard_basis(2),
                        standard_basis(2)}};
    CHECK_THROWS_AS(check_mub_set(overfull, 1e-9), BoundViolation);
}

TEST_CASE("report maxima agree with their parts") {
    const auto report = check_mub_set(pauli_eigenbases(), 1e-12);
    double expected = 0.0;
    for (double dev : report.orthonormality_deviation)
        expected = std::max(expected, dev);
    for (const auto& pr : report.pair_results)
        expected = std::max(expected, pr.max_deviation);
    CHECK(report.overall_max_deviation == expected);
}

TEST_CASE("construct_mub_set worked examples") {
    const MubSet d2 = construct_mub_set(2);
    CHECK(d2.bases.size() == 3);
    CHECK(check_mub_set(d2, 1e-12).pass);

    const MubSet d3 = construct_mub_set(3);
    CHECK(d3.bases.size() == 4);
    CHECK(check_mub_set(d3, 1e-9).pass);

    CHECK_THROWS_AS(construct_mub_set(6), NotPrimePowerError);
    CHECK_THROWS_AS(construct_mub_set(10), NotPrimePowerError);
    CHECK_THROWS_AS(construct_mub_set(37), CapacityError);
    CHECK_THROWS_AS(construct_mub_set(1), DomainError);
}

TEST_CASE("complete sets exist for every prime power dimension in scope") {
    for (std::uint64_t d : {2ull, 3ull, 4ull, 5ull, 7ull, 8ull, 9ull, 11ull, 13ull,
                            16ull, 25ull, 27ull, 32ull}) {
        CAPTURE(d);
        const MubSet set = construct_mub_set(d);
        CHECK(set.bases.size() == d + 1);
        const auto report = check_mub_set(set, 1e-9);
        CHECK(report.pass);
        CHECK(report.overall_max_deviation < 1e-9);
    }
}

TEST_CASE("standard plus Fourier is unbiased in every dimension") {
    for (int d = 2; d <= 12; ++d) {
        const auto rep =
            check_pair_unbiased(standard_basis(d), fourier_basis(d), 1e-12);
        CHECK(rep.max_deviation < 1e-12);
    }
}

TEST_CASE("phase invariance of reported deviations") {
    const MubSet set = construct_mub_set(5);
    MubSet rotated = set;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
    for (Basis& b : rotated.bases)
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
            const double a = angle(rng);
            b.col(c) *= Complex(std::cos(a), std::sin(a));
        }
    const auto before = check_mub_set(set, 1e-9);
    const auto after = check_mub_set(rotated, 1e-9);
    CHECK(std::abs(before.overall_max_deviation - after.overall_max_deviation) <= 1e-12);
    for (std::size_t i = 0; i < before.pair_results.size(); ++i)
        CHECK(std::abs(before.pair_results[i].max_deviation -
                       after.pair_results[i].max_deviation) <= 1e-12);
}

TEST_CASE("a common rotation preserves pair deviations") {
    const MubSet set = construct_mub_set(4);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 5; ++trial) {
        BasisParameters params(4, 2);
        for (double& t : params.theta)
            t = normal(rng);
        const Basis rotation = params.realize()[1];
        for (std::size_t i = 0; i < set.bases.size(); ++i)
            for (std::size_t j = i + 1; j < set.bases.size(); ++j) {
                const double before =
                    check_pair_unbiased(set.bases[i], set.bases[j], 1e-6).max_deviation;
                const double after = check_pair_unbiased(Basis(rotation * set.bases[i]),
                                                         Basis(rotation * set.bases[j]),
                                                         1e-6)
                                         .max_deviation;
                CHECK(std::abs(before - after) <= 1e-9);
            }
    }
}

TEST_CASE("measurement_budget worked examples and the subspace cross-check") {
    const auto b3 = measurement_budget(3);
    CHECK(b3.density_matrix_parameters == 8);
    CHECK(b3.outcomes_per_measurement == 2);
    CHECK(b3.measurements_needed == 4);

    const auto b2 = measurement_budget(2);
    CHECK(b2.density_matrix_parameters == 3);
    CHECK(b2.outcomes_per_measurement == 1);
    CHECK(b2.measurements_needed == 3);

    for (std::uint64_t d = 2; d <= 20; ++d)
        CHECK(measurement_budget(d).measurements_needed == gaussian_binomial(1, 0, d));

    CHECK_THROWS_AS(measurement_budget(1), DomainError);
}

TEST_CASE("mub set JSON round-trip reproduces deviations") {
    for (std::uint64_t d : {3ull, 4ull}) {
        const MubSet set = construct_mub_set(d);
        const auto before = check_mub_set(set, 1e-9);
        const MubSet parsed = mub_set_from_json(to_json(set));
        REQUIRE(parsed.bases.size() == set.bases.size());
        const auto after = check_mub_set(parsed, 1e-9);
        CHECK(std::abs(before.overall_max_deviation - after.overall_max_deviation) <=
              1e-15);

        // Canonical phase on write: first nonzero entry of each column is
        // real positive.
        for (const Basis& b : parsed.bases)
            for (Eigen::Index c = 0; c < b.cols(); ++c) {
                for (Eigen::Index r = 0; r < b.rows(); ++r) {
                    const Complex z = b(r, c);
                    if (std::abs(z) > 1e-14) {
                        CHECK(z.real() > 0.0);
                        CHECK(std::abs(z.imag()) < 1e-14);
                        break;
                    }
                }
            }
    }

    CHECK_THROWS_AS(mub_set_from_json(nlohmann::json{{"d", 2}}), DomainError);
    CHECK_THROWS_AS(mub_set_from_json(nlohmann::json{
                        {"d", 0}, {"bases", nlohmann::json::array()}}),
                    DomainError);
}

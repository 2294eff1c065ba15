#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mubplane/exact_algebra.hpp"

namespace mubplane {

inline constexpr std::uint64_t kDefaultMubDimensionCap = 32;
inline constexpr double kCertificationTol = 1e-9;

// A basis of C^d stored as a d x d matrix whose columns are the vectors.
using Basis = Eigen::MatrixXcd;

struct MubSet {
    int dimension = 0;
    std::vector<Basis> bases;
};

Basis standard_basis(int d);
Basis fourier_basis(int d);

struct OrthonormalityReport {
    double max_deviation = 0.0;
    bool pass = false;
};

// max_ij |(B^H B)_ij - delta_ij|, compared against tol.
OrthonormalityReport check_orthonormal(const Basis& b, double tol);

struct PairUnbiasednessReport {
    double max_deviation = 0.0;
    bool pass = false;
};

// max over all d^2 cross inner products of | |<a_i|b_j>| - 1/sqrt(d) |.
PairUnbiasednessReport check_pair_unbiased(const Basis& a, const Basis& b, double tol);

struct PairResult {
    int first = 0;
    int second = 0;
    double max_deviation = 0.0;
};

struct UnbiasednessReport {
    std::vector<PairResult> pair_results;
    std::vector<double> orthonormality_deviation;
    double overall_max_deviation = 0.0;
    bool pass = false;
};

// Orthonormality of every basis plus unbiasedness of every unordered pair.
// More than d+1 bases is a BoundViolation, not a report entry.
UnbiasednessReport check_mub_set(const MubSet& s, double tol);

// Standard basis plus d unimodular bases from additive characters over
// GF(d): quadratic exponents in odd characteristic, Galois-ring fourth
// roots of unity in even characteristic. The result is certified against
// check_mub_set at 1e-9 before it is returned.
MubSet construct_mub_set(std::uint64_t d,
                         std::uint64_t dimension_cap = kDefaultMubDimensionCap);

struct MeasurementBudget {
    std::uint64_t dimension = 0;
    std::uint64_t density_matrix_parameters = 0; // d^2 - 1
    std::uint64_t outcomes_per_measurement = 0;  // d - 1
    std::uint64_t measurements_needed = 0;       // d + 1
};

MeasurementBudget measurement_budget(std::uint64_t d);

// Unit-modulus column scaling making the first nonzero entry of every
// column real positive; the serialization convention.
MubSet canonicalize_phases(const MubSet& s);

} // namespace mubplane

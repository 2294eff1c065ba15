#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mubplane/errors.hpp"

namespace mubplane {

inline constexpr std::uint64_t kDefaultFieldOrderCap = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t m);

struct PrimePowerDecomposition {
    std::uint64_t value = 0;
    std::uint64_t prime = 0;
    unsigned exponent = 0;

    bool operator==(const PrimePowerDecomposition&) const = default;
};

// Unique (p, k) with p prime and p^k == d, or nullopt if d is not a prime
// power. Throws DomainError for d < 2.
std::optional<PrimePowerDecomposition> classify_order(std::uint64_t d);

// GF(p^n) presented as Z_p[x] modulo a monic irreducible of degree n.
// Moduli are stored little-endian (index = degree) with the leading 1 kept.
struct FieldSpec {
    std::uint64_t p = 0;
    unsigned n = 0;
    std::vector<std::uint32_t> modulus;

    std::uint64_t order() const;

    bool operator==(const FieldSpec&) const = default;
};

// Irreducibility over Z_p of a monic polynomial given little-endian with
// its leading 1: a root test up to degree 3, trial division by all monic
// irreducibles of at most half the degree beyond that.
bool is_irreducible(const std::vector<std::uint32_t>& monic_poly, std::uint64_t p);

// Deterministic field table: the modulus is the first monic irreducible of
// degree n over Z_p in increasing order of the integer encoding
// sum_i c_i p^i of the non-leading coefficients.
FieldSpec build_field(std::uint64_t p, unsigned n,
                      std::uint64_t order_cap = kDefaultFieldOrderCap);

// An element of GF(p^n): n little-endian coefficients in [0, p). Elements
// carry their spec so cross-field operands are rejected.
struct FieldElement {
    std::vector<std::uint32_t> coeffs;
    FieldSpec spec;

    bool is_zero() const;
    bool operator==(const FieldElement&) const = default;
};

FieldElement field_zero(const FieldSpec& spec);
FieldElement field_one(const FieldSpec& spec);
// Validates coefficient count and range.
FieldElement field_element(const FieldSpec& spec, std::vector<std::uint32_t> coeffs);

// Integer encoding sum_i c_i p^i; the canonical enumeration order of a field.
FieldElement element_from_index(const FieldSpec& spec, std::uint64_t index);
std::uint64_t element_index(const FieldElement& a);

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
// Throws DivisionByZero on the zero element.
FieldElement inverse(const FieldElement& a);
FieldElement pow(const FieldElement& a, std::uint64_t e);

// Generator of the multiplicative group: the element of smallest integer
// encoding whose order is p^n - 1.
FieldElement primitive_element(const FieldSpec& spec);

// Number of k-dimensional subspaces of the n-dimensional projective space
// over a field of order d, via the exact numerator/denominator product
// formula. Accepts k = -1 (empty products, value 1) and any d >= 2.
std::uint64_t gaussian_binomial(int n, int k, std::uint64_t d);

struct TwoSquareWitness {
    std::uint64_t a = 0;
    std::uint64_t b = 0;

    bool operator==(const TwoSquareWitness&) const = default;
};

// Witness with the smallest a such that a^2 + b^2 == d, a <= b.
std::optional<TwoSquareWitness> is_sum_of_two_squares(std::uint64_t d);

enum class BruckRyserOutcome { RuledOut, Inconclusive };

// RuledOut exactly when d-1 or d-2 is divisible by 4 and d is not a sum of
// two squares; Inconclusive otherwise.
BruckRyserOutcome bruck_ryser(std::uint64_t d);

enum class PlaneStatus {
    ExistsPrimePower,
    RuledOutBruckRyser,
    RuledOutByComputation,
    Open,
};

std::string to_string(PlaneStatus status);

struct PlaneExistenceVerdict {
    std::uint64_t order = 0;
    PlaneStatus status = PlaneStatus::Open;
    std::string detail;
};

// Decision chain: prime power -> exists; Bruck-Ryser -> ruled out;
// computer-proof table (order 10) -> ruled out; otherwise open.
PlaneExistenceVerdict plane_existence_status(std::uint64_t d);

} // namespace mubplane

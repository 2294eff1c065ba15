#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "mubplane/exact_algebra.hpp"
#include "oracles.hpp"

using namespace mubplane;

namespace {

// Independent scan for the first irreducible modulus in encoding order,
// using root counting only (valid for degree <= 3).
std::vector<std::uint32_t> scan_smallest_irreducible(std::uint64_t p, unsigned n) {
    REQUIRE(n <= 3);
    std::uint64_t count = 1;
    for (unsigned i = 0; i < n; ++i)
        count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> f(n + 1, 0);
        std::uint64_t c = code;
        for (unsigned i = 0; i < n; ++i) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        f[n] = 1;
        if (n == 1)
            return f;
        bool has_root = false;
        for (std::uint64_t r = 0; r < p && !has_root; ++r) {
            std::uint64_t acc = 0;
            for (unsigned i = n + 1; i-- > 0;)
                acc = (acc * r + f[i]) % p;
            has_root = (acc == 0);
        }
        if (!has_root)
            return f;
    }
    FAIL("no irreducible found");
    return {};
}

} // namespace

TEST_CASE("classify_order on the worked examples") {
    auto nine = classify_order(9);
    REQUIRE(nine.has_value());
    CHECK(nine->prime == 3);
    CHECK(nine->exponent == 2);

    CHECK_FALSE(classify_order(6).has_value());

    auto thirteen = classify_order(13);
    REQUIRE(thirteen.has_value());
    CHECK(thirteen->prime == 13);
    CHECK(thirteen->exponent == 1);

    CHECK_THROWS_AS(classify_order(1), DomainError);
    CHECK_THROWS_AS(classify_order(0), DomainError);
}

TEST_CASE("classify_order agrees with direct reconstruction for d in 2..1024") {
    for (std::uint64_t d = 2; d <= 1024; ++d) {
        auto pp = classify_order(d);
        if (pp) {
            CHECK(is_prime(pp->prime));
            std::uint64_t v = 1;
            for (unsigned i = 0; i < pp->exponent; ++i)
                v *= pp->prime;
            CHECK(v == d);
        } else {
            bool any = false;
            for (std::uint64_t p = 2; p <= d && !any; ++p) {
                if (!is_prime(p))
                    continue;
                std::uint64_t v = p;
                while (v < d)
                    v *= p;
                any = (v == d);
            }
            CHECK_FALSE(any);
        }
    }
}

TEST_CASE("build_field picks the first irreducible in encoding order") {
    CHECK(build_field(2, 1).modulus == std::vector<std::uint32_t>{0, 1});

    // Frozen from the degree-3 scan over Z_2: x^3 + x + 1.
    CHECK(build_field(2, 3).modulus == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(build_field(2, 3).modulus == scan_smallest_irreducible(2, 3));

    CHECK(build_field(3, 2).modulus == scan_smallest_irreducible(3, 2));
    // Frozen from the same scan: x^2 + 1 has no root mod 3.
    CHECK(build_field(3, 2).modulus == std::vector<std::uint32_t>{1, 0, 1});

    CHECK_THROWS_AS(build_field(6, 1), DomainError);
    CHECK_THROWS_AS(build_field(2, 64), CapacityError);
}

TEST_CASE("prime field arithmetic: GF(7)") {
    FieldSpec gf7 = build_field(7, 1);
    FieldElement three = element_from_index(gf7, 3);
    FieldElement five = element_from_index(gf7, 5);
    CHECK(three * five == field_one(gf7)); // 15 mod 7 = 1
    CHECK(element_index(three + five) == 1);
    CHECK(element_index(-three) == 4);
    CHECK_THROWS_AS(inverse(field_zero(gf7)), DivisionByZero);
    CHECK_THROWS_AS(inverse(field_zero(build_field(5, 1))), DivisionByZero);
}

TEST_CASE("GF(4) multiplication matches the independent table") {
    FieldSpec gf4 = build_field(2, 2);
    REQUIRE(gf4.modulus == std::vector<std::uint32_t>{1, 1, 1}); // x^2 + x + 1

    // Element indices: 0, 1, x -> 2, x+1 -> 3. Table written out from the
    // defining relations, not computed.
    const int mul[4][4] = {
        {0, 0, 0, 0},
        {0, 1, 2, 3},
        {0, 2, 3, 1},
        {0, 3, 1, 2},
    };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            FieldElement r = element_from_index(gf4, a) * element_from_index(gf4, b);
            CHECK(element_index(r) == static_cast<std::uint64_t>(mul[a][b]));
        }
    // The defining relation: x * x = x + 1.
    CHECK(element_index(element_from_index(gf4, 2) * element_from_index(gf4, 2)) == 3);
}

TEST_CASE("mixed-spec operands are rejected") {
    FieldSpec gf4 = build_field(2, 2);
    FieldSpec gf9 = build_field(3, 2);
    CHECK_THROWS_AS(field_one(gf4) + field_one(gf9), DomainError);
    CHECK_THROWS_AS(field_one(gf4) * field_one(gf9), DomainError);
}

TEST_CASE("field laws hold exhaustively for every order up to 64") {
    for (std::uint64_t q = 2; q <= 64; ++q) {
        auto pp = classify_order(q);
        if (!pp)
            continue;
        CAPTURE(q);
        FieldSpec spec = build_field(pp->prime, pp->exponent);
        std::vector<FieldElement> elems;
        for (std::uint64_t i = 0; i < q; ++i)
            elems.push_back(element_from_index(spec, i));
        const FieldElement one = field_one(spec);

        std::uint64_t violations = 0;
        for (std::uint64_t a = 0; a < q; ++a) {
            if (a != 0 && !(elems[a] * inverse(elems[a]) == one))
                ++violations;
            for (std::uint64_t b = 0; b < q; ++b) {
                if (!(elems[a] + elems[b] == elems[b] + elems[a]))
                    ++violations;
                if (!(elems[a] * elems[b] == elems[b] * elems[a]))
                    ++violations;
                for (std::uint64_t c = 0; c < q; ++c) {
                    if (!((elems[a] * elems[b]) * elems[c] ==
                          elems[a] * (elems[b] * elems[c])))
                        ++violations;
                    if (!(elems[a] * (elems[b] + elems[c]) ==
                          elems[a] * elems[b] + elems[a] * elems[c]))
                        ++violations;
                }
            }
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("primitive_element worked examples") {
    // GF(7): direct power enumeration oracle.
    {
        FieldSpec gf7 = build_field(7, 1);
        std::uint64_t expected = 0;
        for (std::uint64_t g = 2; g <= 6 && expected == 0; ++g) {
            std::set<std::uint64_t> powers;
            std::uint64_t acc = 1;
            for (int e = 0; e < 6; ++e) {
                acc = (acc * g) % 7;
                powers.insert(acc);
            }
            if (powers.size() == 6)
                expected = g;
        }
        CHECK(expected == 3);
        CHECK(element_index(primitive_element(gf7)) == expected);
    }
    CHECK(element_index(primitive_element(build_field(2, 1))) == 1);
    // GF(4): x generates the 3-element group.
    CHECK(element_index(primitive_element(build_field(2, 2))) == 2);
}

TEST_CASE("primitive elements have full order in every field up to 64") {
    for (std::uint64_t q = 2; q <= 64; ++q) {
        auto pp = classify_order(q);
        if (!pp)
            continue;
        FieldSpec spec = build_field(pp->prime, pp->exponent);
        FieldElement g = primitive_element(spec);
        FieldElement acc = field_one(spec);
        for (std::uint64_t e = 1; e + 1 < q; ++e) {
            acc = acc * g;
            CHECK_FALSE(acc == field_one(spec));
        }
        acc = acc * g;
        CHECK(acc == field_one(spec));
    }
}

TEST_CASE("gaussian_binomial worked examples") {
    CHECK(gaussian_binomial(1, 0, 5) == 6); // (d^2-1)/(d-1) = d+1
    for (std::uint64_t q : {2, 3, 4, 5, 9, 11})
        CHECK(gaussian_binomial(2, 2, q) == 1);
    CHECK(gaussian_binomial(2, 0, 2) == oracles::count_linear_subspaces(3, 1, 2));
    CHECK(gaussian_binomial(2, 0, 2) == 7);
    CHECK(gaussian_binomial(0, -1, 3) == 1); // empty products

    CHECK_THROWS_AS(gaussian_binomial(2, 3, 4), DomainError);
    CHECK_THROWS_AS(gaussian_binomial(1, -2, 4), DomainError);
    CHECK_THROWS_AS(gaussian_binomial(1, 0, 1), DomainError);
}

TEST_CASE("gaussian_binomial projective-line reduction for d in 2..50") {
    for (std::uint64_t d = 2; d <= 50; ++d)
        CHECK(gaussian_binomial(1, 0, d) == d + 1);
}

TEST_CASE("gaussian_binomial equals brute-force subspace counts") {
    // Prime-power d <= 5, n <= 3, -1 <= k <= n. Operation arguments are
    // projective dimensions; the oracle counts (k+1)-dim linear subspaces of
    // GF(d)^(n+1).
    for (std::uint64_t d : {2, 3, 4, 5}) {
        for (int n = 0; n <= 3; ++n) {
            for (int k = -1; k <= n; ++k) {
                CAPTURE(d);
                CAPTURE(n);
                CAPTURE(k);
                CHECK(gaussian_binomial(n, k, d) ==
                      oracles::count_linear_subspaces(static_cast<unsigned>(n + 1),
                                                      static_cast<unsigned>(k + 1), d));
            }
        }
    }
}

TEST_CASE("is_sum_of_two_squares worked examples") {
    CHECK(is_sum_of_two_squares(10) == TwoSquareWitness{1, 3});
    CHECK(is_sum_of_two_squares(2) == TwoSquareWitness{1, 1});
    CHECK_FALSE(is_sum_of_two_squares(6).has_value());
    CHECK(is_sum_of_two_squares(0) == TwoSquareWitness{0, 0});
    CHECK(is_sum_of_two_squares(9) == TwoSquareWitness{0, 3});
}

TEST_CASE("is_sum_of_two_squares returns the smallest-a witness") {
    std::uint64_t mismatches = 0;
    for (std::uint64_t d = 0; d <= 2000; ++d) {
        auto w = is_sum_of_two_squares(d);
        std::optional<TwoSquareWitness> expected;
        for (std::uint64_t a = 0; a * a <= d && !expected; ++a)
            for (std::uint64_t b = a; a * a + b * b <= d; ++b)
                if (a * a + b * b == d) {
                    expected = TwoSquareWitness{a, b};
                    break;
                }
        if (w != expected)
            ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("bruck_ryser worked examples") {
    CHECK(bruck_ryser(6) == BruckRyserOutcome::RuledOut);
    CHECK(bruck_ryser(10) == BruckRyserOutcome::Inconclusive); // 10 = 1 + 9
    CHECK(bruck_ryser(12) == BruckRyserOutcome::Inconclusive); // congruence fails
}

TEST_CASE("bruck_ryser exclusion table over 2..33") {
    const std::set<std::uint64_t> expected{6, 14, 21, 22, 30, 33};
    for (std::uint64_t d = 2; d <= 33; ++d) {
        CAPTURE(d);
        CHECK((bruck_ryser(d) == BruckRyserOutcome::RuledOut) == expected.contains(d));
    }
}

TEST_CASE("plane_existence_status worked examples and chain consistency") {
    CHECK(plane_existence_status(9).status == PlaneStatus::ExistsPrimePower);
    CHECK(plane_existence_status(10).status == PlaneStatus::RuledOutByComputation);
    CHECK(plane_existence_status(12).status == PlaneStatus::Open);

    for (std::uint64_t d = 2; d <= 50; ++d) {
        auto v = plane_existence_status(d);
        CHECK(v.order == d);
        CHECK_FALSE(v.detail.empty());
        switch (v.status) {
        case PlaneStatus::ExistsPrimePower:
            CHECK(classify_order(d).has_value());
            break;
        case PlaneStatus::RuledOutBruckRyser:
            CHECK(bruck_ryser(d) == BruckRyserOutcome::RuledOut);
            CHECK_FALSE(classify_order(d).has_value());
            break;
        case PlaneStatus::RuledOutByComputation:
            CHECK(d == 10);
            break;
        case PlaneStatus::Open:
            CHECK_FALSE(classify_order(d).has_value());
            CHECK(bruck_ryser(d) == BruckRyserOutcome::Inconclusive);
            CHECK(d != 10);
            break;
        }
    }
}

#include "mubplane/exact_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace mubplane {

namespace {

using Poly = std::vector<std::uint32_t>; // little-endian, over Z_p

std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > cap / base)
            throw CapacityError("field order exceeds the configured cap");
        r *= base;
    }
    return r;
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

int degree(const Poly& f) {
    return static_cast<int>(f.size()) - 1;
}

std::uint32_t eval_poly(const Poly& f, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it)
        acc = (acc * x + *it) % p;
    return static_cast<std::uint32_t>(acc);
}

Poly mul_poly(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<std::uint32_t>(
                (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    trim(c);
    return c;
}

// Remainder of f by a monic divisor m.
Poly mod_poly(Poly f, const Poly& m, std::uint64_t p) {
    trim(f);
    const int dm = degree(m);
    while (degree(f) >= dm) {
        const std::uint64_t lead = f.back();
        const int shift = degree(f) - dm;
        for (int i = 0; i <= dm; ++i) {
            std::uint64_t sub = (lead * m[static_cast<std::size_t>(i)]) % p;
            std::uint64_t cur = f[static_cast<std::size_t>(i + shift)];
            f[static_cast<std::size_t>(i + shift)] =
                static_cast<std::uint32_t>((cur + p - sub) % p);
        }
        trim(f);
    }
    return f;
}

// Monic polynomial of degree deg whose non-leading coefficients are the
// base-p digits of code (digit i = coefficient of x^i).
Poly poly_from_code(std::uint64_t code, unsigned deg, std::uint64_t p) {
    Poly f(deg + 1, 0);
    for (unsigned i = 0; i < deg; ++i) {
        f[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    f[deg] = 1;
    return f;
}

// All monic irreducibles over Z_p of degree 1..max_deg, built bottom-up by
// trial division against the lower-degree ones.
std::vector<Poly> monic_irreducibles_up_to(unsigned max_deg, std::uint64_t p) {
    std::vector<Poly> irr;
    for (unsigned deg = 1; deg <= max_deg; ++deg) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < deg; ++i)
            count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly f = poly_from_code(code, deg, p);
            bool reducible = false;
            for (const Poly& g : irr) {
                if (2 * static_cast<unsigned>(degree(g)) > deg)
                    break;
                if (mod_poly(f, g, p).empty()) {
                    reducible = true;
                    break;
                }
            }
            if (!reducible)
                irr.push_back(std::move(f));
        }
    }
    return irr;
}

void require_same_spec(const FieldElement& a, const FieldElement& b) {
    if (!(a.spec == b.spec))
        throw DomainError("operands belong to different field specs");
}

using U128 = unsigned __int128;

U128 checked_mul_u128(U128 a, U128 b) {
    if (a != 0 && b > ~U128{0} / a)
        throw CapacityError("gaussian_binomial intermediate overflow");
    return a * b;
}

U128 gcd_u128(U128 a, U128 b) {
    while (b != 0) {
        U128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

bool is_irreducible(const std::vector<std::uint32_t>& monic_poly, std::uint64_t p) {
    if (monic_poly.size() < 2 || monic_poly.back() != 1)
        throw DomainError("is_irreducible expects a monic polynomial of degree >= 1");
    const unsigned deg = static_cast<unsigned>(monic_poly.size()) - 1;
    if (deg == 1)
        return true;
    if (deg <= 3) {
        // Degree 2 and 3 are reducible exactly when they have a root.
        for (std::uint64_t r = 0; r < p; ++r)
            if (eval_poly(monic_poly, r, p) == 0)
                return false;
        return true;
    }
    for (const Poly& g : monic_irreducibles_up_to(deg / 2, p))
        if (mod_poly(monic_poly, g, p).empty())
            return false;
    return true;
}

bool is_prime(std::uint64_t m) {
    if (m < 2)
        return false;
    for (std::uint64_t f = 2; f * f <= m; ++f)
        if (m % f == 0)
            return false;
    return true;
}

std::optional<PrimePowerDecomposition> classify_order(std::uint64_t d) {
    if (d < 2)
        throw DomainError("classify_order requires d >= 2");
    std::uint64_t p = d;
    for (std::uint64_t f = 2; f * f <= d; ++f) {
        if (d % f == 0) {
            p = f;
            break;
        }
    }
    std::uint64_t rest = d;
    unsigned k = 0;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1)
        return std::nullopt;
    return PrimePowerDecomposition{d, p, k};
}

std::uint64_t FieldSpec::order() const {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < n; ++i)
        r *= p;
    return r;
}

FieldSpec build_field(std::uint64_t p, unsigned n, std::uint64_t order_cap) {
    if (!is_prime(p))
        throw DomainError("build_field: characteristic must be prime");
    if (n < 1)
        throw DomainError("build_field: degree must be positive");
    const std::uint64_t order = checked_pow(p, n, order_cap);
    for (std::uint64_t code = 0; code < order; ++code) {
        Poly f = poly_from_code(code, n, p);
        if (is_irreducible(f, p))
            return FieldSpec{p, n, std::move(f)};
    }
    throw CapacityError("build_field: no irreducible found"); // unreachable
}

bool FieldElement::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](std::uint32_t c) { return c == 0; });
}

FieldElement field_zero(const FieldSpec& spec) {
    return FieldElement{Poly(spec.n, 0), spec};
}

FieldElement field_one(const FieldSpec& spec) {
    Poly c(spec.n, 0);
    c[0] = 1;
    return FieldElement{std::move(c), spec};
}

FieldElement field_element(const FieldSpec& spec, std::vector<std::uint32_t> coeffs) {
    if (coeffs.size() != spec.n)
        throw DomainError("field_element: coefficient count must equal the degree");
    for (std::uint32_t c : coeffs)
        if (c >= spec.p)
            throw DomainError("field_element: coefficient out of range");
    return FieldElement{std::move(coeffs), spec};
}

FieldElement element_from_index(const FieldSpec& spec, std::uint64_t index) {
    if (index >= spec.order())
        throw DomainError("element_from_index: index out of range");
    Poly c(spec.n, 0);
    for (unsigned i = 0; i < spec.n; ++i) {
        c[i] = static_cast<std::uint32_t>(index % spec.p);
        index /= spec.p;
    }
    return FieldElement{std::move(c), spec};
}

std::uint64_t element_index(const FieldElement& a) {
    std::uint64_t idx = 0;
    for (unsigned i = a.spec.n; i-- > 0;)
        idx = idx * a.spec.p + a.coeffs[i];
    return idx;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_spec(a, b);
    FieldElement r = a;
    for (unsigned i = 0; i < a.spec.n; ++i)
        r.coeffs[i] = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a.coeffs[i]) + b.coeffs[i]) % a.spec.p);
    return r;
}

FieldElement operator-(const FieldElement& a) {
    FieldElement r = a;
    for (unsigned i = 0; i < a.spec.n; ++i)
        r.coeffs[i] = static_cast<std::uint32_t>((a.spec.p - a.coeffs[i]) % a.spec.p);
    return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return a + (-b);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_spec(a, b);
    Poly prod = mul_poly(a.coeffs, b.coeffs, a.spec.p);
    Poly rem = mod_poly(std::move(prod), a.spec.modulus, a.spec.p);
    rem.resize(a.spec.n, 0);
    return FieldElement{std::move(rem), a.spec};
}

FieldElement pow(const FieldElement& a, std::uint64_t e) {
    FieldElement base = a;
    FieldElement acc = field_one(a.spec);
    while (e > 0) {
        if (e & 1)
            acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

FieldElement inverse(const FieldElement& a) {
    if (a.is_zero())
        throw DivisionByZero("inverse of the zero element");
    return pow(a, a.spec.order() - 2);
}

FieldElement primitive_element(const FieldSpec& spec) {
    const std::uint64_t group = spec.order() - 1;
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t rest = group;
    for (std::uint64_t f = 2; f * f <= rest; ++f) {
        if (rest % f == 0) {
            prime_factors.push_back(f);
            while (rest % f == 0)
                rest /= f;
        }
    }
    if (rest > 1)
        prime_factors.push_back(rest);

    for (std::uint64_t idx = 1; idx <= group; ++idx) {
        FieldElement g = element_from_index(spec, idx);
        bool generator = true;
        for (std::uint64_t f : prime_factors) {
            if (pow(g, group / f) == field_one(spec)) {
                generator = false;
                break;
            }
        }
        if (generator)
            return g;
    }
    throw DomainError("primitive_element: spec is not a field");
}

std::uint64_t gaussian_binomial(int n, int k, std::uint64_t d) {
    if (d < 2)
        throw DomainError("gaussian_binomial requires d >= 2");
    if (k < -1 || k > n)
        throw DomainError("gaussian_binomial requires -1 <= k <= n");

    // d^(n+1) and d^(k+1), overflow-checked.
    const auto upow = [](std::uint64_t b, int e) {
        U128 r = 1;
        for (int i = 0; i < e; ++i)
            r = checked_mul_u128(r, b);
        return r;
    };
    const U128 dn = upow(d, n + 1);
    const U128 dk = upow(d, k + 1);

    U128 num = 1;
    U128 den = 1;
    U128 di = 1; // d^i
    for (int i = 0; i <= k; ++i) {
        num = checked_mul_u128(num, dn - di);
        den = checked_mul_u128(den, dk - di);
        const U128 g = gcd_u128(num, den);
        num /= g;
        den /= g;
        di = checked_mul_u128(di, d);
    }
    if (den != 1 || num > ~std::uint64_t{0})
        throw CapacityError("gaussian_binomial result does not fit");
    return static_cast<std::uint64_t>(num);
}

std::optional<TwoSquareWitness> is_sum_of_two_squares(std::uint64_t d) {
    for (std::uint64_t a = 0; a * a * 2 <= d; ++a) {
        const std::uint64_t target = d - a * a;
        std::uint64_t b = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(target)));
        while (b * b > target)
            --b;
        while ((b + 1) * (b + 1) <= target)
            ++b;
        if (b * b == target)
            return TwoSquareWitness{a, b};
    }
    return std::nullopt;
}

BruckRyserOutcome bruck_ryser(std::uint64_t d) {
    if (d < 2)
        throw DomainError("bruck_ryser requires d >= 2");
    const bool congruence = (d % 4 == 1) || (d % 4 == 2);
    if (congruence && !is_sum_of_two_squares(d))
        return BruckRyserOutcome::RuledOut;
    return BruckRyserOutcome::Inconclusive;
}

std::string to_string(PlaneStatus status) {
    switch (status) {
    case PlaneStatus::ExistsPrimePower:
        return "ExistsPrimePower";
    case PlaneStatus::RuledOutBruckRyser:
        return "RuledOutBruckRyser";
    case PlaneStatus::RuledOutByComputation:
        return "RuledOutByComputation";
    case PlaneStatus::Open:
        return "Open";
    }
    return "Open";
}

PlaneExistenceVerdict plane_existence_status(std::uint64_t d) {
    if (auto pp = classify_order(d)) {
        return PlaneExistenceVerdict{
            d, PlaneStatus::ExistsPrimePower,
            std::to_string(d) + " = " + std::to_string(pp->prime) + "^" +
                std::to_string(pp->exponent) + "; PG(2," + std::to_string(d) +
                ") exists"};
    }
    if (bruck_ryser(d) == BruckRyserOutcome::RuledOut) {
        return PlaneExistenceVerdict{
            d, PlaneStatus::RuledOutBruckRyser,
            std::to_string(d) + " == " + std::to_string(d % 4) +
                " (mod 4) and is not a sum of two squares"};
    }
    if (d == 10) {
        return PlaneExistenceVerdict{d, PlaneStatus::RuledOutByComputation,
                                     "excluded by exhaustive computer search"};
    }
    return PlaneExistenceVerdict{d, PlaneStatus::Open,
                                 "no construction or exclusion applies"};
}

} // namespace mubplane

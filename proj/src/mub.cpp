#include "mubplane/mub.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mubplane/kernels.hpp"

namespace mubplane {

namespace {

using Complex = std::complex<double>;

void require_square(const Basis& b) {
    if (b.rows() != b.cols() || b.rows() < 1)
        throw DomainError("basis must hold d column vectors of dimension d");
    if (!b.allFinite())
        throw DomainError("basis contains non-finite amplitudes");
}

// ---- even characteristic: the Galois ring GR(4, n) ----------------------
//
// Elements are polynomials over Z_4 modulo a monic basic irreducible h of
// degree n obtained by the Graeffe lift of a binary irreducible f whose
// root is primitive. The Teichmueller set T = {0} u {x^k} is closed under
// multiplication, every needed argument decomposes as t + 2u with t, u in
// T, and the trace down to Z_4 is the Frobenius orbit sum.
class GaloisRing {
public:
    explicit GaloisRing(unsigned n) : n_(n) {
        const auto f = primitive_binary_modulus(n);
        h_ = graeffe_lift(f);
        build_teichmueller();
    }

    unsigned degree() const { return n_; }
    std::uint64_t teich_size() const { return std::uint64_t{1} << n_; }

    // Indices into T: 0 is the zero element, k >= 1 is x^(k-1).
    std::uint64_t teich_mul(std::uint64_t a, std::uint64_t b) const {
        if (a == 0 || b == 0)
            return 0;
        const std::uint64_t group = teich_size() - 1;
        return 1 + ((a - 1) + (b - 1)) % group;
    }

    // Frobenius t -> t^2 permutes T.
    std::uint64_t teich_frobenius(std::uint64_t a) const {
        if (a == 0)
            return 0;
        const std::uint64_t group = teich_size() - 1;
        return 1 + (2 * (a - 1)) % group;
    }

    // tr(T[c] + 2 T[e]) in Z_4.
    unsigned trace_2adic(std::uint64_t c, std::uint64_t e) const {
        std::vector<unsigned> acc(n_, 0);
        std::uint64_t fc = c;
        std::uint64_t fe = e;
        for (unsigned j = 0; j < n_; ++j) {
            const auto& tc = teich_[fc];
            const auto& te = teich_[fe];
            for (unsigned i = 0; i < n_; ++i)
                acc[i] = (acc[i] + tc[i] + 2 * te[i]) % 4;
            fc = teich_frobenius(fc);
            fe = teich_frobenius(fe);
        }
        for (unsigned i = 1; i < n_; ++i)
            if (acc[i] != 0)
                throw std::logic_error("galois ring trace did not land in Z_4");
        return acc[0];
    }

private:
    using Z4Poly = std::vector<unsigned>; // little-endian, entries mod 4

    unsigned n_;
    Z4Poly h_;                      // monic, length n_+1
    std::vector<Z4Poly> teich_;     // teich_[0] = 0, teich_[k] = x^(k-1) mod h

    // Smallest binary irreducible of degree n whose root generates the
    // multiplicative group of GF(2^n). (The Teichmueller set below is the
    // orbit of that root's lift, so plain irreducibility is not enough.)
    static std::vector<std::uint32_t> primitive_binary_modulus(unsigned n) {
        const std::uint64_t count = std::uint64_t{1} << n;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint32_t> f(n + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i < n; ++i) {
                f[i] = static_cast<std::uint32_t>(c & 1);
                c >>= 1;
            }
            f[n] = 1;
            if (!is_irreducible(f, 2))
                continue;
            const FieldSpec candidate{2, n, f};
            const FieldElement x = x_class(candidate);
            if (x.is_zero())
                continue;
            const std::uint64_t group = (std::uint64_t{1} << n) - 1;
            bool primitive = true;
            FieldElement acc = field_one(candidate);
            for (std::uint64_t e = 1; e < group; ++e) {
                acc = acc * x;
                if (acc == field_one(candidate)) {
                    primitive = false;
                    break;
                }
            }
            if (primitive && acc * x == field_one(candidate))
                return f;
        }
        throw std::logic_error("no primitive binary modulus found");
    }

    static FieldElement x_class(const FieldSpec& spec);

    // h(z) with h(y^2) = +- f(y) f(-y) over Z_4, sign fixed to keep h monic.
    Z4Poly graeffe_lift(const std::vector<std::uint32_t>& f) const {
        const unsigned n = n_;
        std::vector<int> prod(2 * n + 1, 0);
        for (unsigned i = 0; i <= n; ++i)
            for (unsigned j = 0; j <= n; ++j) {
                int term = static_cast<int>(f[i]) * static_cast<int>(f[j]);
                if (j % 2 == 1)
                    term = -term;
                prod[i + j] = (prod[i + j] + term) % 4;
            }
        Z4Poly h(n + 1, 0);
        for (unsigned i = 0; i <= 2 * n; ++i) {
            int v = ((prod[i] % 4) + 4) % 4;
            if (i % 2 == 1) {
                if (v != 0)
                    throw std::logic_error("graeffe lift has odd-degree terms");
            } else {
                h[i / 2] = static_cast<unsigned>(v);
            }
        }
        if (n % 2 == 1)
            for (auto& c : h)
                c = (4 - c) % 4;
        if (h[n] != 1)
            throw std::logic_error("graeffe lift is not monic");
        return h;
    }

    Z4Poly mul_mod_h(const Z4Poly& a, const Z4Poly& b) const {
        std::vector<unsigned> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                c[i + j] = (c[i + j] + a[i] * b[j]) % 4;
        // Long division by the monic h.
        for (std::size_t top = c.size(); top-- > n_;) {
            const unsigned lead = c[top];
            if (lead == 0)
                continue;
            const std::size_t shift = top - n_;
            for (unsigned i = 0; i <= n_; ++i)
                c[shift + i] = (c[shift + i] + 4 - (lead * h_[i]) % 4) % 4;
        }
        c.resize(n_);
        return c;
    }

    void build_teichmueller() {
        teich_.clear();
        teich_.push_back(Z4Poly(n_, 0)); // zero
        Z4Poly xe(n_, 0);
        if (n_ == 1)
            xe[0] = (4 - h_[0]) % 4; // class of x for a degree-1 modulus
        else
            xe[1] = 1;
        Z4Poly acc(n_, 0);
        acc[0] = 1;
        const std::uint64_t group = teich_size() - 1;
        for (std::uint64_t k = 0; k < group; ++k) {
            teich_.push_back(acc);
            acc = mul_mod_h(acc, xe);
        }
        Z4Poly one(n_, 0);
        one[0] = 1;
        if (acc != one)
            throw std::logic_error("teichmueller generator does not close");
    }
};

FieldElement GaloisRing::x_class(const FieldSpec& spec) {
    if (spec.n >= 2) {
        std::vector<std::uint32_t> c(spec.n, 0);
        c[1] = 1;
        return field_element(spec, c);
    }
    // x mod (x + c0) = -c0
    std::vector<std::uint32_t> c(1, 0);
    c[0] = static_cast<std::uint32_t>((spec.p - spec.modulus[0]) % spec.p);
    return field_element(spec, c);
}

MubSet construct_even(std::uint64_t d) {
    unsigned n = 0;
    while ((std::uint64_t{1} << n) < d)
        ++n;
    const GaloisRing ring(n);
    const auto q = static_cast<int>(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

    MubSet set;
    set.dimension = q;
    set.bases.push_back(standard_basis(q));
    for (std::uint64_t a = 0; a < d; ++a) {
        Basis basis(q, q);
        for (std::uint64_t b = 0; b < d; ++b)
            for (std::uint64_t x = 0; x < d; ++x) {
                const unsigned tr =
                    ring.trace_2adic(ring.teich_mul(a, x), ring.teich_mul(b, x));
                basis(static_cast<int>(x), static_cast<int>(b)) = scale * i_pow[tr % 4];
            }
        set.bases.push_back(std::move(basis));
    }
    return set;
}

MubSet construct_odd(std::uint64_t d, const PrimePowerDecomposition& pp) {
    const FieldSpec spec = build_field(pp.prime, pp.exponent);
    const auto q = static_cast<int>(d);
    const std::uint64_t p = pp.prime;
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));

    std::vector<FieldElement> elems;
    elems.reserve(d);
    for (std::uint64_t i = 0; i < d; ++i)
        elems.push_back(element_from_index(spec, i));

    // Absolute trace GF(q) -> Z_p per element index.
    std::vector<std::uint64_t> trace(d, 0);
    for (std::uint64_t i = 0; i < d; ++i) {
        FieldElement acc = field_zero(spec);
        FieldElement power = elems[i];
        for (unsigned j = 0; j < pp.exponent; ++j) {
            acc = acc + power;
            power = pow(power, p);
        }
        for (unsigned c = 1; c < spec.n; ++c)
            if (acc.coeffs[c] != 0)
                throw std::logic_error("absolute trace did not land in Z_p");
        trace[i] = acc.coeffs[0];
    }

    std::vector<Complex> omega(p);
    for (std::uint64_t t = 0; t < p; ++t) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) /
                             static_cast<double>(p);
        omega[t] = Complex(std::cos(angle), std::sin(angle));
    }

    MubSet set;
    set.dimension = q;
    set.bases.push_back(standard_basis(q));
    for (std::uint64_t a = 0; a < d; ++a) {
        Basis basis(q, q);
        for (std::uint64_t b = 0; b < d; ++b)
            for (std::uint64_t x = 0; x < d; ++x) {
                const FieldElement phase =
                    elems[a] * elems[x] * elems[x] + elems[b] * elems[x];
                basis(static_cast<int>(x), static_cast<int>(b)) =
                    scale * omega[trace[element_index(phase)]];
            }
        set.bases.push_back(std::move(basis));
    }
    return set;
}

} // namespace

Basis standard_basis(int d) {
    return Basis::Identity(d, d);
}

Basis fourier_basis(int d) {
    Basis f(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            const double angle = 2.0 * std::numbers::pi * j * k / d;
            f(j, k) = scale * Complex(std::cos(angle), std::sin(angle));
        }
    return f;
}

OrthonormalityReport check_orthonormal(const Basis& b, double tol) {
    if (tol <= 0)
        throw DomainError("tolerance must be positive");
    require_square(b);
    const Eigen::MatrixXcd gram = b.adjoint() * b;
    double dev = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
        for (Eigen::Index j = 0; j < gram.cols(); ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            dev = std::max(dev, std::abs(gram(i, j) - Complex(target, 0)));
        }
    return OrthonormalityReport{dev, dev <= tol};
}

PairUnbiasednessReport check_pair_unbiased(const Basis& a, const Basis& b, double tol) {
    if (tol <= 0)
        throw DomainError("tolerance must be positive");
    require_square(a);
    require_square(b);
    if (a.rows() != b.rows())
        throw DomainError("bases have different dimensions");
    const double target = 1.0 / std::sqrt(static_cast<double>(a.rows()));
    const double dev = kernels::pair_deviation(a, b, target);
    return PairUnbiasednessReport{dev, dev <= tol};
}

UnbiasednessReport check_mub_set(const MubSet& s, double tol) {
    if (tol <= 0)
        throw DomainError("tolerance must be positive");
    if (s.dimension < 1)
        throw DomainError("set dimension must be positive");
    if (s.bases.size() > static_cast<std::size_t>(s.dimension) + 1)
        throw BoundViolation("a set of mutually unbiased bases holds at most d+1 bases");
    for (const Basis& b : s.bases) {
        require_square(b);
        if (b.rows() != s.dimension)
            throw DomainError("basis dimension does not match the set");
    }

    UnbiasednessReport report;
    double overall = 0.0;
    for (const Basis& b : s.bases) {
        const double dev = check_orthonormal(b, tol).max_deviation;
        report.orthonormality_deviation.push_back(dev);
        overall = std::max(overall, dev);
    }
    const double target = 1.0 / std::sqrt(static_cast<double>(s.dimension));
    for (const auto& pd : kernels::scan_set_pairs_omp(s.bases, target)) {
        report.pair_results.push_back({pd.first, pd.second, pd.deviation});
        overall = std::max(overall, pd.deviation);
    }
    report.overall_max_deviation = overall;
    report.pass = overall <= tol;
    return report;
}

MubSet construct_mub_set(std::uint64_t d, std::uint64_t dimension_cap) {
    const auto pp = classify_order(d); // throws DomainError for d < 2
    if (!pp)
        throw NotPrimePowerError("construct_mub_set requires a prime-power dimension");
    if (d > dimension_cap)
        throw CapacityError("construct_mub_set: dimension exceeds the configured cap");

    MubSet set = (pp->prime == 2) ? construct_even(d) : construct_odd(d, *pp);
    const auto report = check_mub_set(set, kCertificationTol);
    if (!report.pass)
        throw std::logic_error("constructed set failed its certification");
    return set;
}

MeasurementBudget measurement_budget(std::uint64_t d) {
    if (d < 2)
        throw DomainError("measurement_budget requires d >= 2");
    MeasurementBudget mb{d, d * d - 1, d - 1, d + 1};
    if (mb.measurements_needed != gaussian_binomial(1, 0, d))
        throw std::logic_error("measurement budget disagrees with the subspace count");
    return mb;
}

MubSet canonicalize_phases(const MubSet& s) {
    MubSet out = s;
    for (Basis& b : out.bases) {
        for (Eigen::Index col = 0; col < b.cols(); ++col) {
            for (Eigen::Index row = 0; row < b.rows(); ++row) {
                const Complex z = b(row, col);
                if (std::abs(z) > 1e-14) {
                    b.col(col) *= std::conj(z) / std::abs(z);
                    break;
                }
            }
        }
    }
    return out;
}

} // namespace mubplane

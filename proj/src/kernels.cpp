#include "mubplane/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace mubplane::kernels {

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64),
      bits_(static_cast<std::size_t>(rows) * static_cast<std::size_t>((cols + 63) / 64), 0) {}

BitMatrix BitMatrix::pack(const std::uint8_t* table, int rows, int cols, bool transpose) {
    BitMatrix m(transpose ? cols : rows, transpose ? rows : cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (table[static_cast<std::size_t>(r) * cols + c]) {
                if (transpose)
                    m.set(c, r);
                else
                    m.set(r, c);
            }
    return m;
}

void BitMatrix::set(int r, int c) {
    bits_[static_cast<std::size_t>(r) * words_ + c / 64] |= std::uint64_t{1} << (c % 64);
}

bool BitMatrix::get(int r, int c) const {
    return (bits_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1u;
}

int BitMatrix::row_popcount(int r) const {
    const std::uint64_t* w = bits_.data() + static_cast<std::size_t>(r) * words_;
    int n = 0;
    for (int k = 0; k < words_; ++k)
        n += std::popcount(w[k]);
    return n;
}

int BitMatrix::and_popcount(int r, int s) const {
    const std::uint64_t* a = bits_.data() + static_cast<std::size_t>(r) * words_;
    const std::uint64_t* b = bits_.data() + static_cast<std::size_t>(s) * words_;
    int n = 0;
    for (int k = 0; k < words_; ++k)
        n += std::popcount(a[k] & b[k]);
    return n;
}

bool BitMatrix::rows_equal(int r, int s) const {
    const std::uint64_t* a = bits_.data() + static_cast<std::size_t>(r) * words_;
    const std::uint64_t* b = bits_.data() + static_cast<std::size_t>(s) * words_;
    return std::equal(a, a + words_, b);
}

namespace {

PairViolation make_pair_violation(const BitMatrix& m, long long encoded, int expected) {
    PairViolation v;
    if (encoded >= 0) {
        v.encoded = encoded;
        v.i = static_cast<int>(encoded / m.rows());
        v.j = static_cast<int>(encoded % m.rows());
        v.count = m.and_popcount(v.i, v.j);
        (void)expected;
    }
    return v;
}

} // namespace

PairViolation scan_pair_meets_serial(const BitMatrix& m, int expected) {
    const int n = m.rows();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (m.and_popcount(i, j) != expected)
                return make_pair_violation(m, static_cast<long long>(i) * n + j, expected);
    return PairViolation{};
}

PairViolation scan_pair_meets_omp(const BitMatrix& m, int expected) {
    const int n = m.rows();
    if (n <= 64)
        return scan_pair_meets_serial(m, expected);
    // Min-reduction over encoded pair indices keeps the lexicographically
    // first offender; the identity is "no violation".
    long long best = std::numeric_limits<long long>::max();
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (m.and_popcount(i, j) != expected) {
                best = std::min(best, static_cast<long long>(i) * n + j);
                break;
            }
        }
    }
    if (best == std::numeric_limits<long long>::max())
        return PairViolation{};
    return make_pair_violation(m, best, expected);
}

namespace {

PlayfairViolation playfair_at(const BitMatrix& point_rows, const BitMatrix& line_rows,
                              const std::vector<std::uint8_t>& disjoint, long long encoded) {
    PlayfairViolation v;
    if (encoded < 0)
        return v;
    const int lines = point_rows.cols();
    v.encoded = encoded;
    v.point = static_cast<int>(encoded / lines);
    v.line = static_cast<int>(encoded % lines);
    int count = 0;
    for (int thru = 0; thru < lines; ++thru)
        if (point_rows.get(v.point, thru) &&
            disjoint[static_cast<std::size_t>(thru) * lines + v.line])
            ++count;
    v.parallels = count;
    (void)line_rows;
    return v;
}

std::vector<std::uint8_t> line_disjointness(const BitMatrix& line_rows) {
    const int lines = line_rows.rows();
    std::vector<std::uint8_t> disjoint(static_cast<std::size_t>(lines) * lines, 0);
    for (int a = 0; a < lines; ++a)
        for (int b = 0; b < lines; ++b)
            disjoint[static_cast<std::size_t>(a) * lines + b] =
                (a != b && line_rows.and_popcount(a, b) == 0) ? 1 : 0;
    return disjoint;
}

long long playfair_scan_row(const BitMatrix& point_rows,
                            const std::vector<std::uint8_t>& disjoint, int point) {
    const int lines = point_rows.cols();
    for (int l = 0; l < lines; ++l) {
        if (point_rows.get(point, l))
            continue;
        int parallels = 0;
        for (int thru = 0; thru < lines; ++thru)
            if (point_rows.get(point, thru) &&
                disjoint[static_cast<std::size_t>(thru) * lines + l])
                ++parallels;
        if (parallels != 1)
            return static_cast<long long>(point) * lines + l;
    }
    return -1;
}

} // namespace

PlayfairViolation scan_playfair_serial(const BitMatrix& point_rows,
                                       const BitMatrix& line_rows) {
    const auto disjoint = line_disjointness(line_rows);
    for (int p = 0; p < point_rows.rows(); ++p) {
        const long long enc = playfair_scan_row(point_rows, disjoint, p);
        if (enc >= 0)
            return playfair_at(point_rows, line_rows, disjoint, enc);
    }
    return PlayfairViolation{};
}

PlayfairViolation scan_playfair_omp(const BitMatrix& point_rows,
                                    const BitMatrix& line_rows) {
    const int points = point_rows.rows();
    if (points <= 64)
        return scan_playfair_serial(point_rows, line_rows);
    const auto disjoint = line_disjointness(line_rows);
    long long best = std::numeric_limits<long long>::max();
#pragma omp parallel for schedule(dynamic, 8) reduction(min : best)
    for (int p = 0; p < points; ++p) {
        const long long enc = playfair_scan_row(point_rows, disjoint, p);
        if (enc >= 0)
            best = std::min(best, enc);
    }
    if (best == std::numeric_limits<long long>::max())
        return PlayfairViolation{};
    return playfair_at(point_rows, line_rows, disjoint, best);
}

double pair_deviation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                      double target) {
    const Eigen::MatrixXcd cross = a.adjoint() * b;
    double dev = 0.0;
    for (Eigen::Index j = 0; j < cross.cols(); ++j)
        for (Eigen::Index i = 0; i < cross.rows(); ++i)
            dev = std::max(dev, std::abs(std::abs(cross(i, j)) - target));
    return dev;
}

std::vector<PairDeviation>
scan_set_pairs_serial(const std::vector<Eigen::MatrixXcd>& bases, double target) {
    std::vector<PairDeviation> out;
    const int m = static_cast<int>(bases.size());
    out.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            out.push_back({i, j, pair_deviation(bases[i], bases[j], target)});
    return out;
}

std::vector<PairDeviation>
scan_set_pairs_omp(const std::vector<Eigen::MatrixXcd>& bases, double target) {
    const int m = static_cast<int>(bases.size());
    std::vector<PairDeviation> out(static_cast<std::size_t>(m) * (m - 1) / 2);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(out.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            pairs.emplace_back(i, j);
    const long long npairs = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(dynamic) if (npairs > 8)
    for (long long k = 0; k < npairs; ++k) {
        const auto [i, j] = pairs[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(k)] = {i, j, pair_deviation(bases[i], bases[j], target)};
    }
    return out;
}

namespace {

double pair_cost(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double inv_d) {
    const Eigen::MatrixXcd cross = a.adjoint() * b;
    double sum = 0.0;
    for (Eigen::Index j = 0; j < cross.cols(); ++j)
        for (Eigen::Index i = 0; i < cross.rows(); ++i) {
            const double excess = std::norm(cross(i, j)) - inv_d;
            sum += excess * excess;
        }
    return sum;
}

} // namespace

double mub_cost_kernel_serial(const std::vector<Eigen::MatrixXcd>& bases) {
    if (bases.empty())
        return 0.0;
    const double inv_d = 1.0 / static_cast<double>(bases.front().rows());
    double total = 0.0;
    for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j)
            total += pair_cost(bases[i], bases[j], inv_d);
    return total;
}

double mub_cost_kernel_omp(const std::vector<Eigen::MatrixXcd>& bases) {
    if (bases.empty())
        return 0.0;
    const double inv_d = 1.0 / static_cast<double>(bases.front().rows());
    const int m = static_cast<int>(bases.size());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            pairs.emplace_back(i, j);
    std::vector<double> partial(pairs.size(), 0.0);
    const long long npairs = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(dynamic) if (npairs > 8)
    for (long long k = 0; k < npairs; ++k) {
        const auto [i, j] = pairs[static_cast<std::size_t>(k)];
        partial[static_cast<std::size_t>(k)] = pair_cost(bases[i], bases[j], inv_d);
    }
    // Fixed-order merge keeps the sum identical to the serial variant.
    double total = 0.0;
    for (double x : partial)
        total += x;
    return total;
}

namespace {

// Candidate: sorted image of `residues` under x -> unit*(x - base) mod v.
std::vector<int> canonical_candidate(int v, const std::vector<int>& residues,
                                     int unit, int base) {
    std::vector<int> img;
    img.reserve(residues.size());
    for (int r : residues) {
        long long shifted = (static_cast<long long>(r) - base) % v;
        if (shifted < 0)
            shifted += v;
        img.push_back(static_cast<int>((shifted * unit) % v));
    }
    std::sort(img.begin(), img.end());
    return img;
}

std::vector<int> units_mod(int v) {
    std::vector<int> units;
    for (int u = 1; u < v; ++u)
        if (std::gcd(u, v) == 1)
            units.push_back(u);
    if (v == 1)
        units.push_back(0); // degenerate modulus; identity image only
    return units;
}

} // namespace

std::vector<int> difference_set_canonical_serial(int v, const std::vector<int>& residues) {
    std::vector<int> best;
    for (int u : units_mod(v))
        for (int base : residues) {
            auto cand = canonical_candidate(v, residues, u, base);
            if (best.empty() || cand < best)
                best = std::move(cand);
        }
    return best;
}

std::vector<int> difference_set_canonical_omp(int v, const std::vector<int>& residues) {
    const auto units = units_mod(v);
    const long long n = static_cast<long long>(units.size());
    std::vector<std::vector<int>> per_unit(units.size());
#pragma omp parallel for schedule(dynamic) if (n > 16)
    for (long long k = 0; k < n; ++k) {
        std::vector<int> best;
        for (int base : residues) {
            auto cand = canonical_candidate(v, residues, units[static_cast<std::size_t>(k)], base);
            if (best.empty() || cand < best)
                best = std::move(cand);
        }
        per_unit[static_cast<std::size_t>(k)] = std::move(best);
    }
    std::vector<int> best;
    for (auto& cand : per_unit)
        if (!cand.empty() && (best.empty() || cand < best))
            best = std::move(cand);
    return best;
}

} // namespace mubplane::kernels

#pragma once

// Data-parallel inner loops, each in a serial reference version and an
// OpenMP version. Both versions of a kernel return identical results
// (violation scans report the lexicographically first offender; floating
// reductions are merged in a fixed order), so callers may use either.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace mubplane::kernels {

// Boolean table rows packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols);

    // Packs a row-major uint8 table; transpose=true packs columns as rows.
    static BitMatrix pack(const std::uint8_t* table, int rows, int cols,
                          bool transpose = false);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    void set(int r, int c);
    bool get(int r, int c) const;
    int row_popcount(int r) const;
    int and_popcount(int r, int s) const;
    bool rows_equal(int r, int s) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

// First row pair (i < j, ordered by i then j) whose AND-popcount differs
// from `expected`; ok() when every pair conforms.
struct PairViolation {
    long long encoded = -1; // i * rows + j of the offender, -1 when none
    int i = -1;
    int j = -1;
    int count = -1;

    bool ok() const { return encoded < 0; }
};

PairViolation scan_pair_meets_serial(const BitMatrix& m, int expected);
PairViolation scan_pair_meets_omp(const BitMatrix& m, int expected);

// First (point, line) with the point off the line for which the number of
// lines through the point disjoint from the line is not exactly one.
struct PlayfairViolation {
    long long encoded = -1; // point * line_count + line, -1 when none
    int point = -1;
    int line = -1;
    int parallels = -1;

    bool ok() const { return encoded < 0; }
};

PlayfairViolation scan_playfair_serial(const BitMatrix& point_rows,
                                       const BitMatrix& line_rows);
PlayfairViolation scan_playfair_omp(const BitMatrix& point_rows,
                                    const BitMatrix& line_rows);

// max_ij | |(A^H B)_ij| - target |
double pair_deviation(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                      double target);

struct PairDeviation {
    int first = 0;
    int second = 0;
    double deviation = 0.0;
};

// Deviations for every unordered basis pair, in (i, j) order.
std::vector<PairDeviation>
scan_set_pairs_serial(const std::vector<Eigen::MatrixXcd>& bases, double target);
std::vector<PairDeviation>
scan_set_pairs_omp(const std::vector<Eigen::MatrixXcd>& bases, double target);

// Sum over unordered pairs and entries of (|(A^H B)_ij|^2 - 1/d)^2. Partial
// sums are merged in pair order, so both variants agree bit for bit.
double mub_cost_kernel_serial(const std::vector<Eigen::MatrixXcd>& bases);
double mub_cost_kernel_omp(const std::vector<Eigen::MatrixXcd>& bases);

// Lexicographically least image of a residue set under unit multipliers and
// translates mod v, restricted to images containing 0.
std::vector<int> difference_set_canonical_serial(int v, const std::vector<int>& residues);
std::vector<int> difference_set_canonical_omp(int v, const std::vector<int>& residues);

} // namespace mubplane::kernels

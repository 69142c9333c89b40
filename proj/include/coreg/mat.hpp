#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coreg/fp.hpp"

namespace coreg::gf {

// Dense row-major matrix over GF(p). Entries are residues in [0, p); the
// modulus lives in the Fp context passed to each operation.
struct Mat {
    uint32_t rows = 0, cols = 0;
    std::vector<uint32_t> a;

    Mat() = default;
    Mat(uint32_t r, uint32_t c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    uint32_t& at(uint32_t r, uint32_t c) { return a[static_cast<size_t>(r) * cols + c]; }
    uint32_t at(uint32_t r, uint32_t c) const { return a[static_cast<size_t>(r) * cols + c]; }
    std::span<uint32_t> row(uint32_t r) { return {a.data() + static_cast<size_t>(r) * cols, cols}; }
    std::span<const uint32_t> row(uint32_t r) const {
        return {a.data() + static_cast<size_t>(r) * cols, cols};
    }

    static Mat identity(uint32_t n) {
        Mat m(n, n);
        for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const Mat& o) const = default;

    // Compact byte key for hashing/dedup of same-shape matrices.
    std::string key() const;
};

Mat mat_mul(const Fp& fp, const Mat& a, const Mat& b);
Mat mat_sub(const Fp& fp, const Mat& a, const Mat& b);
std::vector<uint32_t> mat_vec(const Fp& fp, const Mat& a, std::span<const uint32_t> v);
Mat transpose(const Mat& a);
bool is_identity(const Mat& a);

// Maintained reduced row echelon form over GF(p). Rows are inserted one at a
// time, fully reduced, and kept sorted by pivot column, so basis() is the
// canonical RREF of everything inserted so far. For p = 2 the rows are stored
// bit-packed and eliminated with word XORs.
class Echelon {
public:
    Echelon(const Fp& fp, uint32_t cols);

    // Reduces the row against the current basis and absorbs it if independent.
    // Returns true when the rank grew. The input row is clobbered.
    bool insert(std::span<uint32_t> row);
    // Packed fast path (p = 2 only): row has words() words.
    bool insert_bits(std::span<uint64_t> row);

    uint32_t rank() const { return static_cast<uint32_t>(pivots_.size()); }
    uint32_t cols() const { return cols_; }
    uint32_t words() const { return words_; }
    bool packed() const { return packed_; }
    const std::vector<uint32_t>& pivots() const { return pivots_; }

    // Reduce a row in place without inserting (membership test: row becomes
    // zero iff it lies in the row space).
    void reduce(std::span<uint32_t> row) const;
    bool contains(std::span<const uint32_t> row) const;

    // Canonical RREF basis, one row per pivot, ascending pivot column.
    Mat basis() const;
    void basis_row(uint32_t i, std::span<uint32_t> out) const;

    // Canonical (RREF) basis of the null space of basis(), i.e. of the row
    // space viewed as a linear system.
    Mat kernel(const Fp& fp) const;

private:
    Fp fp_;
    uint32_t cols_, words_;
    bool packed_;
    std::vector<std::vector<uint32_t>> rows_;
    std::vector<std::vector<uint64_t>> bits_;
    std::vector<uint32_t> pivots_;  // ascending, parallel to rows_/bits_
};

struct RankSolveResult {
    uint32_t rank = 0;
    // Present iff b was given and the system A x = b is consistent.
    std::optional<std::vector<uint32_t>> solution;
    Mat kernel;  // canonical RREF basis of {x : A x = 0}, one row per vector
};

// Exact rank / particular solution / null space of a dense system.
RankSolveResult rank_solve(const Fp& fp, const Mat& A,
                           const std::vector<uint32_t>* b = nullptr);

uint32_t rank_of(const Fp& fp, const Mat& A);
Mat rref(const Fp& fp, const Mat& A);

// Inverse of a square matrix; nullopt when singular.
std::optional<Mat> inverse(const Fp& fp, const Mat& A);

}  // namespace coreg::gf

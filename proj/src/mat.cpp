#include "coreg/mat.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "coreg/kernels.hpp"

namespace coreg::gf {

std::string Mat::key() const {
    std::string s;
    s.reserve(a.size() * 4 + 8);
    auto push = [&s](uint32_t v) {
        s.push_back(static_cast<char>(v & 0xff));
        s.push_back(static_cast<char>((v >> 8) & 0xff));
        s.push_back(static_cast<char>((v >> 16) & 0xff));
        s.push_back(static_cast<char>((v >> 24) & 0xff));
    };
    push(rows);
    push(cols);
    for (uint32_t v : a) push(v);
    return s;
}

Mat mat_mul(const Fp& fp, const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat c(a.rows, b.cols);
    for (uint32_t i = 0; i < a.rows; ++i)
        for (uint32_t k = 0; k < a.cols; ++k) {
            uint32_t v = a.at(i, k);
            if (!v) continue;
            for (uint32_t j = 0; j < b.cols; ++j)
                c.at(i, j) = fp.add(c.at(i, j), fp.mul(v, b.at(k, j)));
        }
    return c;
}

Mat mat_sub(const Fp& fp, const Mat& a, const Mat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("mat_sub: shape mismatch");
    Mat c(a.rows, a.cols);
    for (size_t i = 0; i < a.a.size(); ++i) c.a[i] = fp.sub(a.a[i], b.a[i]);
    return c;
}

std::vector<uint32_t> mat_vec(const Fp& fp, const Mat& a, std::span<const uint32_t> v) {
    if (a.cols != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<uint32_t> out(a.rows, 0);
    for (uint32_t i = 0; i < a.rows; ++i) {
        uint64_t acc = 0;
        for (uint32_t j = 0; j < a.cols; ++j)
            acc += static_cast<uint64_t>(a.at(i, j)) * v[j] % fp.p;
        out[i] = static_cast<uint32_t>(acc % fp.p);
    }
    return out;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols, a.rows);
    for (uint32_t i = 0; i < a.rows; ++i)
        for (uint32_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
    return t;
}

bool is_identity(const Mat& a) {
    if (a.rows != a.cols) return false;
    for (uint32_t i = 0; i < a.rows; ++i)
        for (uint32_t j = 0; j < a.cols; ++j)
            if (a.at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Echelon

namespace {
inline bool bit_get(const uint64_t* w, uint32_t i) { return (w[i >> 6] >> (i & 63)) & 1; }
inline void bit_flip(uint64_t* w, uint32_t i) { w[i >> 6] ^= (uint64_t{1} << (i & 63)); }
}  // namespace

Echelon::Echelon(const Fp& fp, uint32_t cols)
    : fp_(fp), cols_(cols), words_((cols + 63) / 64), packed_(fp.p == 2) {}

bool Echelon::insert(std::span<uint32_t> row) {
    if (row.size() != cols_) throw std::invalid_argument("Echelon::insert: width mismatch");
    if (packed_) {
        std::vector<uint64_t> w(words_, 0);
        for (uint32_t j = 0; j < cols_; ++j)
            if (row[j] & 1) bit_flip(w.data(), j);
        return insert_bits(w);
    }
    const auto& K = kern::active();
    // forward-reduce against existing pivots
    for (size_t i = 0; i < pivots_.size(); ++i) {
        uint32_t v = row[pivots_[i]];
        if (v) K.axpy_u32(row.data(), rows_[i].data(), fp_.p - v, cols_, fp_.p);
    }
    uint32_t piv = cols_;
    for (uint32_t j = 0; j < cols_; ++j)
        if (row[j]) { piv = j; break; }
    if (piv == cols_) return false;
    if (row[piv] != 1) K.scal_u32(row.data(), fp_.inv(row[piv]), cols_, fp_.p);
    // back-eliminate the new pivot from stored rows
    for (size_t i = 0; i < pivots_.size(); ++i) {
        uint32_t v = rows_[i][piv];
        if (v) K.axpy_u32(rows_[i].data(), row.data(), fp_.p - v, cols_, fp_.p);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::vector<uint32_t>(row.begin(), row.end()));
    return true;
}

bool Echelon::insert_bits(std::span<uint64_t> row) {
    const auto& K = kern::active();
    for (size_t i = 0; i < pivots_.size(); ++i)
        if (bit_get(row.data(), pivots_[i]))
            K.xor_u64(row.data(), bits_[i].data(), words_);
    uint32_t piv = cols_;
    for (uint32_t w = 0; w < words_; ++w)
        if (row[w]) {
            piv = w * 64 + static_cast<uint32_t>(__builtin_ctzll(row[w]));
            break;
        }
    if (piv >= cols_) return false;
    for (size_t i = 0; i < pivots_.size(); ++i)
        if (bit_get(bits_[i].data(), piv))
            K.xor_u64(bits_[i].data(), row.data(), words_);
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    bits_.insert(bits_.begin() + pos, std::vector<uint64_t>(row.begin(), row.end()));
    return true;
}

void Echelon::reduce(std::span<uint32_t> row) const {
    if (row.size() != cols_) throw std::invalid_argument("Echelon::reduce: width mismatch");
    if (packed_) {
        for (size_t i = 0; i < pivots_.size(); ++i)
            if (row[pivots_[i]] & 1)
                for (uint32_t j = 0; j < cols_; ++j)
                    row[j] ^= static_cast<uint32_t>(bit_get(bits_[i].data(), j));
        return;
    }
    const auto& K = kern::active();
    for (size_t i = 0; i < pivots_.size(); ++i) {
        uint32_t v = row[pivots_[i]];
        if (v) K.axpy_u32(row.data(), rows_[i].data(), fp_.p - v, cols_, fp_.p);
    }
}

bool Echelon::contains(std::span<const uint32_t> row) const {
    std::vector<uint32_t> tmp(row.begin(), row.end());
    reduce(tmp);
    return std::all_of(tmp.begin(), tmp.end(), [](uint32_t v) { return v == 0; });
}

void Echelon::basis_row(uint32_t i, std::span<uint32_t> out) const {
    if (packed_) {
        for (uint32_t j = 0; j < cols_; ++j) out[j] = bit_get(bits_[i].data(), j);
    } else {
        std::copy(rows_[i].begin(), rows_[i].end(), out.begin());
    }
}

Mat Echelon::basis() const {
    Mat b(rank(), cols_);
    for (uint32_t i = 0; i < rank(); ++i) basis_row(i, b.row(i));
    return b;
}

Mat Echelon::kernel(const Fp& fp) const {
    // Standard free-column construction from the RREF, then canonicalize.
    std::vector<bool> is_pivot(cols_, false);
    for (uint32_t p : pivots_) is_pivot[p] = true;
    Mat R = basis();
    Echelon out(fp, cols_);
    std::vector<uint32_t> v(cols_);
    for (uint32_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        std::fill(v.begin(), v.end(), 0);
        v[f] = 1;
        for (uint32_t i = 0; i < R.rows; ++i) v[pivots_[i]] = fp.neg(R.at(i, f));
        out.insert(v);
    }
    return out.basis();
}

// ---------------------------------------------------------------------------
// rank / solve

RankSolveResult rank_solve(const Fp& fp, const Mat& A, const std::vector<uint32_t>* b) {
    if (b && b->size() != A.rows) throw std::invalid_argument("rank_solve: rhs length mismatch");
    Echelon ech(fp, A.cols);
    std::vector<uint32_t> scratch(A.cols);
    for (uint32_t i = 0; i < A.rows; ++i) {
        auto r = A.row(i);
        std::copy(r.begin(), r.end(), scratch.begin());
        ech.insert(scratch);
    }
    RankSolveResult res;
    res.rank = ech.rank();
    res.kernel = ech.kernel(fp);
    if (b) {
        // Augmented elimination: a pivot in the rhs column means inconsistent.
        Echelon aug(fp, A.cols + 1);
        std::vector<uint32_t> row(A.cols + 1);
        for (uint32_t i = 0; i < A.rows; ++i) {
            auto r = A.row(i);
            std::copy(r.begin(), r.end(), row.begin());
            row[A.cols] = (*b)[i];
            aug.insert(row);
        }
        bool consistent = true;
        for (uint32_t p : aug.pivots())
            if (p == A.cols) consistent = false;
        if (consistent) {
            std::vector<uint32_t> x(A.cols, 0);
            Mat R = aug.basis();
            const auto& piv = aug.pivots();
            for (uint32_t i = 0; i < R.rows; ++i) x[piv[i]] = R.at(i, A.cols);
            res.solution = std::move(x);
        }
    }
    return res;
}

uint32_t rank_of(const Fp& fp, const Mat& A) {
    Echelon ech(fp, A.cols);
    std::vector<uint32_t> scratch(A.cols);
    for (uint32_t i = 0; i < A.rows; ++i) {
        auto r = A.row(i);
        std::copy(r.begin(), r.end(), scratch.begin());
        ech.insert(scratch);
    }
    return ech.rank();
}

Mat rref(const Fp& fp, const Mat& A) {
    Echelon ech(fp, A.cols);
    std::vector<uint32_t> scratch(A.cols);
    for (uint32_t i = 0; i < A.rows; ++i) {
        auto r = A.row(i);
        std::copy(r.begin(), r.end(), scratch.begin());
        ech.insert(scratch);
    }
    return ech.basis();
}

std::optional<Mat> inverse(const Fp& fp, const Mat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("inverse: not square");
    uint32_t n = A.rows;
    Echelon ech(fp, 2 * n);
    std::vector<uint32_t> row(2 * n);
    for (uint32_t i = 0; i < n; ++i) {
        std::fill(row.begin(), row.end(), 0);
        auto r = A.row(i);
        std::copy(r.begin(), r.end(), row.begin());
        row[n + i] = 1;
        ech.insert(row);
    }
    Mat R = ech.basis();
    // invertible iff the left block reduced to the identity
    if (R.rows != n) return std::nullopt;
    for (uint32_t i = 0; i < n; ++i)
        if (ech.pivots()[i] != i) return std::nullopt;
    Mat inv(n, n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) inv.at(i, j) = R.at(i, n + j);
    return inv;
}

}  // namespace coreg::gf

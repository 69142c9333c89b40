#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "coreg/group.hpp"
#include "coreg/poly.hpp"

namespace coreg::poly {

// All monomials of one degree in grlex-descending order; the coordinate
// system for every per-degree rank computation.
struct MonomialBasis {
    uint32_t n = 0, d = 0;
    std::vector<Exps> mons;

    uint32_t size() const { return static_cast<uint32_t>(mons.size()); }
    uint32_t index_of(const Exps& e) const;

private:
    friend class BasisCache;
    std::unordered_map<std::string, uint32_t> index_;
};

// Shared per-dimension registry of monomial bases and the index tables for
// multiplication by a single variable.
class BasisCache {
public:
    explicit BasisCache(uint32_t nvars) : n_(nvars) {}

    uint32_t nvars() const { return n_; }
    const MonomialBasis& at(uint32_t d);
    // mult(d)[k*n + j] = index in degree d+1 of mons(d)[k] * x_j
    const std::vector<uint32_t>& mult(uint32_t d);

    // Dense coordinates of a homogeneous polynomial in the degree-d basis.
    std::vector<uint32_t> to_row(const Poly& f, uint32_t d);
    Poly to_poly(const gf::Fp& fp, std::span<const uint32_t> row, uint32_t d);

private:
    uint32_t n_;
    std::vector<MonomialBasis> degrees_;
    std::vector<std::vector<uint32_t>> mult_;
};

// Dense degree-slice matrix over GF(p); rows bit-packed when p = 2.
class SliceMat {
public:
    SliceMat() = default;
    SliceMat(const gf::Fp& fp, uint32_t rows, uint32_t cols);

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    bool packed() const { return packed_; }
    uint32_t words() const { return words_; }

    void add_at(uint32_t r, uint32_t c, uint32_t v, const gf::Fp& fp);
    uint32_t get(uint32_t r, uint32_t c) const;
    void row_u32(uint32_t r, std::span<uint32_t> out) const;
    void col_u32(uint32_t c, std::span<uint32_t> out) const;
    void col_bits(uint32_t c, std::span<uint64_t> out) const;  // packed only
    std::span<const uint64_t> row_bits(uint32_t r) const;
    std::span<const uint32_t> row_dense(uint32_t r) const;

private:
    uint32_t rows_ = 0, cols_ = 0, words_ = 0;
    bool packed_ = false;
    std::vector<uint32_t> dense_;
    std::vector<uint64_t> bits_;
};

// Per-element matrices of the k[V] action on each graded slice, built
// degree by degree from the contragredient and cached.
class ActionCache {
public:
    ActionCache(const grp::Group& G, std::shared_ptr<BasisCache> bases);

    const grp::Group& group() const { return *G_; }
    BasisCache& bases() { return *bases_; }
    const MonomialBasis& mons(uint32_t d) { return bases_->at(d); }

    // Matrix of elements[e] acting on k[V]_d: row k = coordinates of
    // sigma(m_k).
    const SliceMat& table(uint32_t elem, uint32_t d);

    // out = sum over all elements e of weight[e] * table(e, d).row(k).
    void weighted_row_sum(uint32_t d, uint32_t k, std::span<const uint32_t> weights,
                          std::span<uint32_t> out);

private:
    void build(uint32_t elem, uint32_t d);

    const grp::Group* G_;
    std::shared_ptr<BasisCache> bases_;
    std::vector<gf::Mat> contragredient_;             // sigma^{-1} per element
    std::vector<std::vector<SliceMat>> tables_;       // [elem][degree]
};

}  // namespace coreg::poly

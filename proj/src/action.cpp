#include "coreg/action.hpp"

#include <algorithm>

#include "coreg/error.hpp"

namespace coreg::poly {

namespace {
std::string exps_key(const Exps& e) {
    return std::string(reinterpret_cast<const char*>(e.data()), e.size() * sizeof(Exp));
}

void enumerate(uint32_t n, uint32_t d, Exps& cur, uint32_t pos, std::vector<Exps>& out) {
    if (pos + 1 == n) {
        cur[pos] = static_cast<Exp>(d);
        out.push_back(cur);
        return;
    }
    for (int e = static_cast<int>(d); e >= 0; --e) {
        cur[pos] = static_cast<Exp>(e);
        enumerate(n, d - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}
}  // namespace

uint32_t MonomialBasis::index_of(const Exps& e) const {
    auto it = index_.find(exps_key(e));
    if (it == index_.end()) throw internal_fault("MonomialBasis::index_of: monomial not in basis");
    return it->second;
}

const MonomialBasis& BasisCache::at(uint32_t d) {
    while (degrees_.size() <= d) {
        uint32_t deg = static_cast<uint32_t>(degrees_.size());
        MonomialBasis b;
        b.n = n_;
        b.d = deg;
        Exps cur(n_, 0);
        if (n_ == 0) {
            if (deg == 0) b.mons.push_back({});
        } else {
            enumerate(n_, deg, cur, 0, b.mons);
        }
        for (uint32_t i = 0; i < b.mons.size(); ++i) b.index_.emplace(exps_key(b.mons[i]), i);
        degrees_.push_back(std::move(b));
    }
    return degrees_[d];
}

const std::vector<uint32_t>& BasisCache::mult(uint32_t d) {
    while (mult_.size() <= d) {
        uint32_t deg = static_cast<uint32_t>(mult_.size());
        const MonomialBasis& lo = at(deg);
        const MonomialBasis& hi = at(deg + 1);
        std::vector<uint32_t> t(static_cast<size_t>(lo.size()) * n_);
        Exps e(n_);
        for (uint32_t k = 0; k < lo.size(); ++k) {
            for (uint32_t j = 0; j < n_; ++j) {
                e = lo.mons[k];
                ++e[j];
                t[static_cast<size_t>(k) * n_ + j] = hi.index_of(e);
            }
        }
        mult_.push_back(std::move(t));
    }
    return mult_[d];
}

std::vector<uint32_t> BasisCache::to_row(const Poly& f, uint32_t d) {
    const MonomialBasis& b = at(d);
    std::vector<uint32_t> row(b.size(), 0);
    for (const auto& [e, c] : f.terms()) {
        if (total_deg(e) != d)
            throw std::invalid_argument("BasisCache::to_row: polynomial not homogeneous of degree d");
        row[b.index_of(e)] = c;
    }
    return row;
}

Poly BasisCache::to_poly(const gf::Fp& fp, std::span<const uint32_t> row, uint32_t d) {
    const MonomialBasis& b = at(d);
    Poly f(n_);
    for (uint32_t k = 0; k < b.size(); ++k)
        if (row[k]) f.add_term(fp, b.mons[k], row[k]);
    return f;
}

// ---------------------------------------------------------------------------

SliceMat::SliceMat(const gf::Fp& fp, uint32_t rows, uint32_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), packed_(fp.p == 2) {
    if (packed_)
        bits_.assign(static_cast<size_t>(rows_) * words_, 0);
    else
        dense_.assign(static_cast<size_t>(rows_) * cols_, 0);
}

void SliceMat::add_at(uint32_t r, uint32_t c, uint32_t v, const gf::Fp& fp) {
    if (packed_) {
        if (v & 1) bits_[static_cast<size_t>(r) * words_ + (c >> 6)] ^= (uint64_t{1} << (c & 63));
    } else {
        uint32_t& slot = dense_[static_cast<size_t>(r) * cols_ + c];
        slot = fp.add(slot, v % fp.p);
    }
}

uint32_t SliceMat::get(uint32_t r, uint32_t c) const {
    if (packed_)
        return (bits_[static_cast<size_t>(r) * words_ + (c >> 6)] >> (c & 63)) & 1;
    return dense_[static_cast<size_t>(r) * cols_ + c];
}

void SliceMat::row_u32(uint32_t r, std::span<uint32_t> out) const {
    if (packed_) {
        for (uint32_t c = 0; c < cols_; ++c) out[c] = get(r, c);
    } else {
        auto src = row_dense(r);
        std::copy(src.begin(), src.end(), out.begin());
    }
}

void SliceMat::col_u32(uint32_t c, std::span<uint32_t> out) const {
    for (uint32_t r = 0; r < rows_; ++r) out[r] = get(r, c);
}

void SliceMat::col_bits(uint32_t c, std::span<uint64_t> out) const {
    std::fill(out.begin(), out.end(), 0);
    uint32_t word = c >> 6;
    uint64_t mask = uint64_t{1} << (c & 63);
    for (uint32_t r = 0; r < rows_; ++r)
        if (bits_[static_cast<size_t>(r) * words_ + word] & mask)
            out[r >> 6] |= (uint64_t{1} << (r & 63));
}

std::span<const uint64_t> SliceMat::row_bits(uint32_t r) const {
    return {bits_.data() + static_cast<size_t>(r) * words_, words_};
}

std::span<const uint32_t> SliceMat::row_dense(uint32_t r) const {
    return {dense_.data() + static_cast<size_t>(r) * cols_, cols_};
}

// ---------------------------------------------------------------------------

ActionCache::ActionCache(const grp::Group& G, std::shared_ptr<BasisCache> bases)
    : G_(&G), bases_(std::move(bases)) {
    contragredient_.reserve(G.elements.size());
    for (uint32_t i = 0; i < G.elements.size(); ++i)
        contragredient_.push_back(G.inverse_of(i));
    tables_.resize(G.elements.size());
}

const SliceMat& ActionCache::table(uint32_t elem, uint32_t d) {
    auto& per = tables_[elem];
    while (per.size() <= d) build(elem, static_cast<uint32_t>(per.size()));
    return per[d];
}

void ActionCache::build(uint32_t elem, uint32_t d) {
    const gf::Fp& fp = G_->fp;
    uint32_t n = G_->n;
    const MonomialBasis& b = bases_->at(d);
    SliceMat out(fp, b.size(), b.size());
    auto& per = tables_[elem];

    if (d == 0) {
        out.add_at(0, 0, 1, fp);
        per.push_back(std::move(out));
        return;
    }
    const gf::Mat& L = contragredient_[elem];  // row i = image coefficients of x_i
    if (d == 1) {
        // degree-1 monomials are x1..xn in this order
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j)
                if (L.at(i, j)) out.add_at(i, bases_->at(1).index_of([&] {
                                               Exps e(n, 0);
                                               e[j] = 1;
                                               return e;
                                           }()),
                                           L.at(i, j), fp);
        per.push_back(std::move(out));
        return;
    }

    const SliceMat& prev = per[d - 1];
    const MonomialBasis& lo = bases_->at(d - 1);
    const std::vector<uint32_t>& mt = bases_->mult(d - 1);
    std::vector<uint32_t> scratch(lo.size());
    Exps parent(n);
    for (uint32_t k = 0; k < b.size(); ++k) {
        const Exps& e = b.mons[k];
        uint32_t i = 0;
        while (e[i] == 0) ++i;
        parent = e;
        --parent[i];
        uint32_t pidx = lo.index_of(parent);
        // image(m) = image(x_i) * image(parent)
        if (prev.packed()) {
            auto wsrc = prev.row_bits(pidx);
            for (uint32_t w = 0; w < prev.words(); ++w) {
                uint64_t bitsw = wsrc[w];
                while (bitsw) {
                    uint32_t t = w * 64 + static_cast<uint32_t>(__builtin_ctzll(bitsw));
                    bitsw &= bitsw - 1;
                    for (uint32_t j = 0; j < n; ++j)
                        if (L.at(i, j)) out.add_at(k, mt[static_cast<size_t>(t) * n + j], 1, fp);
                }
            }
        } else {
            auto src = prev.row_dense(pidx);
            for (uint32_t t = 0; t < lo.size(); ++t) {
                uint32_t v = src[t];
                if (!v) continue;
                for (uint32_t j = 0; j < n; ++j) {
                    uint32_t c = L.at(i, j);
                    if (c) out.add_at(k, mt[static_cast<size_t>(t) * n + j], fp.mul(v, c), fp);
                }
            }
        }
    }
    per.push_back(std::move(out));
}

void ActionCache::weighted_row_sum(uint32_t d, uint32_t k, std::span<const uint32_t> weights,
                                   std::span<uint32_t> out) {
    const gf::Fp& fp = G_->fp;
    std::fill(out.begin(), out.end(), 0);
    std::vector<uint32_t> tmp(out.size());
    for (uint32_t e = 0; e < G_->elements.size(); ++e) {
        uint32_t w = weights[e];
        if (!w) continue;
        const SliceMat& t = table(e, d);
        t.row_u32(k, tmp);
        for (size_t c = 0; c < out.size(); ++c)
            out[c] = fp.add(out[c], fp.mul(w, tmp[c]));
    }
}

}  // namespace coreg::poly

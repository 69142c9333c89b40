// Exact Molien series for diagonalizable non-modular groups. Eigenvalues in
// GF(p)* are lifted to complex roots of unity through a cyclic-group
// isomorphism and the character sum is evaluated in Z[zeta_m] represented as
// Z[y]/Phi_m(y), so every series coefficient comes out as an exact integer.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

#include "coreg/error.hpp"
#include "coreg/invar.hpp"

namespace coreg::invar {

namespace {

using ZPoly = std::vector<long long>;  // ascending integer coefficients

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// exact division of integer polynomials (remainder must vanish)
ZPoly zp_div(ZPoly num, const ZPoly& den) {
    ZPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
    while (num.size() >= den.size()) {
        while (!num.empty() && num.back() == 0) num.pop_back();
        if (num.size() < den.size()) break;
        long long lead = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] = lead;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= lead * den[i];
    }
    for (long long v : num)
        if (v != 0) throw internal_fault("molien: inexact cyclotomic division");
    return q;
}

ZPoly cyclotomic(uint32_t m, std::map<uint32_t, ZPoly>& memo) {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    ZPoly xm(m + 1, 0);
    xm[0] = -1;
    xm[m] = 1;  // x^m - 1
    ZPoly q = xm;
    for (uint32_t d = 1; d < m; ++d)
        if (m % d == 0) q = zp_div(q, cyclotomic(d, memo));
    memo[m] = q;
    return q;
}

// Z[y]/Phi_m(y)
struct CycRing {
    uint32_t m;
    ZPoly phi;
    size_t deg;

    explicit CycRing(uint32_t order) : m(order) {
        std::map<uint32_t, ZPoly> memo;
        phi = cyclotomic(m, memo);
        deg = phi.size() - 1;
    }

    using Elt = std::vector<long long>;  // size deg

    Elt zero() const { return Elt(deg, 0); }
    Elt one() const {
        Elt e = zero();
        if (deg > 0) e[0] = 1;
        return e;
    }
    // zeta^k reduced mod Phi_m
    Elt zeta_pow(uint32_t k) const {
        k %= m;
        ZPoly v(k + 1, 0);
        v[k] = 1;
        reduce(v);
        Elt e = zero();
        for (size_t i = 0; i < v.size(); ++i) e[i] = v[i];
        return e;
    }
    void reduce(ZPoly& v) const {
        while (v.size() > deg) {
            long long lead = v.back();
            size_t shift = v.size() - phi.size();
            if (lead != 0)
                for (size_t i = 0; i < phi.size(); ++i) v[shift + i] -= lead * phi[i];
            v.pop_back();
        }
    }
    void add_in(Elt& a, const Elt& b) const {
        for (size_t i = 0; i < deg; ++i) a[i] += b[i];
    }
    Elt mul(const Elt& a, const Elt& b) const {
        ZPoly v = zp_mul(ZPoly(a.begin(), a.end()), ZPoly(b.begin(), b.end()));
        reduce(v);
        Elt e = zero();
        for (size_t i = 0; i < v.size(); ++i) e[i] = v[i];
        return e;
    }
};

}  // namespace

std::vector<uint32_t> molien_series(const grp::Group& D,
                                    const std::vector<uint32_t>& candidate_eigenvalues,
                                    uint32_t Dmax) {
    const gf::Fp& fp = D.fp;
    if (D.order % fp.p == 0)
        throw std::invalid_argument("molien_series: group must be non-modular");
    uint32_t n = D.n;

    // Refine V into common eigenblocks of the generators.
    struct Block {
        gf::Mat basis;  // rows
    };
    std::vector<Block> blocks;
    if (n > 0) blocks.push_back({gf::Mat::identity(n)});
    for (const auto& g : D.generators) {
        std::vector<Block> next;
        for (const auto& blk : blocks) {
            uint32_t m = blk.basis.rows;
            if (m == 0) continue;
            // restrict g to the block
            gf::Mat bt = gf::transpose(blk.basis);
            gf::Mat r(m, m);
            for (uint32_t i = 0; i < m; ++i) {
                std::vector<uint32_t> v(blk.basis.row(i).begin(), blk.basis.row(i).end());
                auto img = gf::mat_vec(fp, g, v);
                auto sol = gf::rank_solve(fp, bt, &img);
                if (!sol.solution)
                    throw internal_fault("molien_series: block is not invariant");
                for (uint32_t j = 0; j < m; ++j) r.at(j, i) = (*sol.solution)[j];
            }
            uint32_t found = 0;
            for (uint32_t c : candidate_eigenvalues) {
                gf::Mat shifted = r;
                for (uint32_t i = 0; i < m; ++i) shifted.at(i, i) = fp.sub(shifted.at(i, i), c);
                auto ker = gf::rank_solve(fp, shifted).kernel;  // coords within block
                if (ker.rows == 0) continue;
                found += ker.rows;
                gf::Mat sub(ker.rows, n);
                for (uint32_t i = 0; i < ker.rows; ++i)
                    for (uint32_t j = 0; j < n; ++j) {
                        uint32_t acc = 0;
                        for (uint32_t k = 0; k < m; ++k)
                            acc = fp.add(acc, fp.mul(ker.at(i, k), blk.basis.at(k, j)));
                        sub.at(i, j) = acc;
                    }
                next.push_back({gf::rref(fp, sub)});
            }
            if (found != m)
                throw internal_fault(
                    "molien_series: generator not diagonalizable over the candidate set");
        }
        blocks = std::move(next);
    }

    // scalar of each element on each block
    std::vector<std::vector<uint32_t>> scalars(D.elements.size());
    for (uint32_t e = 0; e < D.elements.size(); ++e) {
        scalars[e].reserve(blocks.size());
        for (const auto& blk : blocks) {
            std::vector<uint32_t> v(blk.basis.row(0).begin(), blk.basis.row(0).end());
            auto img = gf::mat_vec(fp, D.elements[e], v);
            uint32_t j0 = 0;
            while (v[j0] == 0) ++j0;
            uint32_t lam = fp.div(img[j0], v[j0]);
            // the whole block must scale uniformly
            for (uint32_t i = 0; i < blk.basis.rows; ++i) {
                std::vector<uint32_t> w(blk.basis.row(i).begin(), blk.basis.row(i).end());
                auto wi = gf::mat_vec(fp, D.elements[e], w);
                for (uint32_t j = 0; j < n; ++j)
                    if (wi[j] != fp.mul(lam, w[j]))
                        throw internal_fault("molien_series: element not scalar on eigenblock");
            }
            scalars[e].push_back(lam);
        }
    }

    // cyclic group generated by all occurring eigenvalues, and its order m
    std::vector<uint32_t> subgroup{1};
    for (const auto& row : scalars)
        for (uint32_t lam : row)
            if (std::find(subgroup.begin(), subgroup.end(), lam) == subgroup.end())
                subgroup.push_back(lam);
    bool grew = true;
    while (grew) {
        grew = false;
        for (uint32_t a : std::vector<uint32_t>(subgroup))
            for (uint32_t b : std::vector<uint32_t>(subgroup)) {
                uint32_t c = fp.mul(a, b);
                if (std::find(subgroup.begin(), subgroup.end(), c) == subgroup.end()) {
                    subgroup.push_back(c);
                    grew = true;
                }
            }
    }
    uint32_t m = static_cast<uint32_t>(subgroup.size());
    // a generator of the cyclic subgroup and discrete logs relative to it
    uint32_t gen = 1;
    for (uint32_t c : subgroup)
        if (fp.mult_order(c) == m) {
            gen = c;
            break;
        }
    std::map<uint32_t, uint32_t> dlog;
    {
        uint32_t x = 1;
        for (uint32_t k = 0; k < m; ++k) {
            dlog[x] = k;
            x = fp.mul(x, gen);
        }
    }

    CycRing ring(m);
    // sum over elements of prod over blocks of (sum_k lambda^k t^k) truncated
    std::vector<CycRing::Elt> total(Dmax + 1, ring.zero());
    std::vector<CycRing::Elt> series(Dmax + 1), factor(Dmax + 1), next(Dmax + 1);
    for (uint32_t e = 0; e < D.elements.size(); ++e) {
        for (uint32_t d = 0; d <= Dmax; ++d) series[d] = d == 0 ? ring.one() : ring.zero();
        for (size_t b = 0; b < blocks.size(); ++b) {
            uint32_t mult = blocks[b].basis.rows;
            uint32_t lg = dlog.at(scalars[e][b]);
            for (uint32_t rep = 0; rep < mult; ++rep) {
                for (uint32_t d = 0; d <= Dmax; ++d)
                    factor[d] = ring.zeta_pow(
                        static_cast<uint32_t>(static_cast<uint64_t>(lg) * d % m));
                for (uint32_t d = 0; d <= Dmax; ++d) {
                    next[d] = ring.zero();
                    for (uint32_t a = 0; a <= d; ++a)
                        ring.add_in(next[d], ring.mul(series[a], factor[d - a]));
                }
                std::swap(series, next);
            }
        }
        for (uint32_t d = 0; d <= Dmax; ++d) ring.add_in(total[d], series[d]);
    }

    std::vector<uint32_t> dims(Dmax + 1);
    long long order = static_cast<long long>(D.order);
    for (uint32_t d = 0; d <= Dmax; ++d) {
        for (size_t i = 1; i < ring.deg; ++i)
            if (total[d][i] != 0)
                throw internal_fault("molien_series: character sum is not a rational integer");
        long long v = ring.deg ? total[d][0] : 0;
        if (v % order != 0 || v < 0)
            throw internal_fault("molien_series: dimension count not divisible by |D|");
        dims[d] = static_cast<uint32_t>(v / order);
    }
    return dims;
}

}  // namespace coreg::invar

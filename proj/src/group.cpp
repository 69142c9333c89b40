#include "coreg/group.hpp"

#include <algorithm>
#include <deque>

#include "coreg/error.hpp"

namespace coreg::grp {

uint32_t Group::index_of(const gf::Mat& m) const {
    for (uint32_t i = 0; i < elements.size(); ++i)
        if (elements[i] == m) return i;
    throw internal_fault("Group::index_of: matrix not in closure");
}

Group close_group(const gf::Fp& fp, uint32_t n, std::vector<gf::Mat> gens,
                  uint64_t element_cap) {
    for (auto& g : gens) {
        if (g.rows != n || g.cols != n)
            throw input_error("close_group: generator has wrong shape");
        for (auto& v : g.a) v %= fp.p;
        if (!gf::inverse(fp, g)) throw input_error("close_group: singular generator");
    }
    Group G(fp, n);
    G.generators = gens;

    std::unordered_map<std::string, uint32_t> seen;
    gf::Mat id = gf::Mat::identity(n);
    G.elements.push_back(id);
    seen.emplace(id.key(), 0);
    std::deque<uint32_t> queue{0};
    while (!queue.empty()) {
        uint32_t cur = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            gf::Mat prod = gf::mat_mul(fp, G.elements[cur], g);
            std::string key = prod.key();
            if (seen.contains(key)) continue;
            if (G.elements.size() >= element_cap)
                throw input_error("close_group: element cap (" + std::to_string(element_cap) +
                                  ") exceeded");
            seen.emplace(std::move(key), static_cast<uint32_t>(G.elements.size()));
            queue.push_back(static_cast<uint32_t>(G.elements.size()));
            G.elements.push_back(std::move(prod));
        }
    }
    G.order = G.elements.size();

    G.is_abelian = true;
    for (size_t i = 0; i < gens.size() && G.is_abelian; ++i)
        for (size_t j = i + 1; j < gens.size() && G.is_abelian; ++j)
            if (gf::mat_mul(fp, gens[i], gens[j]) != gf::mat_mul(fp, gens[j], gens[i]))
                G.is_abelian = false;

    uint64_t o = G.order;
    while (o % fp.p == 0) o /= fp.p;
    G.is_p_group = (o == 1);

    G.inverse_idx.resize(G.elements.size());
    for (uint32_t i = 0; i < G.elements.size(); ++i) {
        auto inv = gf::inverse(fp, G.elements[i]);
        if (!inv) throw internal_fault("close_group: element not invertible");
        auto it = seen.find(inv->key());
        if (it == seen.end()) throw internal_fault("close_group: inverse escaped closure");
        G.inverse_idx[i] = it->second;
    }
    return G;
}

Classification classify_element(const gf::Fp& fp, const gf::Mat& sigma) {
    if (sigma.rows != sigma.cols) throw std::invalid_argument("classify_element: not square");
    uint32_t n = sigma.rows;
    gf::Mat M = gf::mat_sub(fp, sigma, gf::Mat::identity(n));
    bool zero = std::all_of(M.a.begin(), M.a.end(), [](uint32_t v) { return v == 0; });
    if (zero) return {ElemKind::identity, std::nullopt};

    // rank-1 test via explicit outer-product factorization M = e x^T
    uint32_t c0 = n;
    for (uint32_t j = 0; j < n && c0 == n; ++j)
        for (uint32_t i = 0; i < n; ++i)
            if (M.at(i, j)) { c0 = j; break; }
    std::vector<uint32_t> e(n), x(n, 0);
    for (uint32_t i = 0; i < n; ++i) e[i] = M.at(i, c0);
    uint32_t r0 = 0;
    while (e[r0] == 0) ++r0;
    for (uint32_t j = 0; j < n; ++j) x[j] = fp.div(M.at(r0, j), e[r0]);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            if (M.at(i, j) != fp.mul(e[i], x[j]))
                return {ElemKind::non_reflection, std::nullopt};

    // normalize: first nonzero coefficient of the form equals 1
    uint32_t j0 = 0;
    while (x[j0] == 0) ++j0;
    uint32_t s = x[j0];
    for (auto& v : x) v = fp.div(v, s);
    for (auto& v : e) v = fp.mul(v, s);

    ReflectionInfo info;
    info.direction = e;
    info.form = x;
    uint32_t xe = 0;
    for (uint32_t i = 0; i < n; ++i) xe = fp.add(xe, fp.mul(x[i], e[i]));
    info.eigenvalue = fp.add(1, xe);
    if (info.eigenvalue == 0)
        throw internal_fault("classify_element: rank-1 map with eigenvalue 0 is singular");
    info.kind = (xe == 0) ? ElemKind::transvection : ElemKind::homology;
    gf::Mat formrow(1, n);
    std::copy(x.begin(), x.end(), formrow.row(0).begin());
    gf::Echelon ech(fp, n);
    {
        std::vector<uint32_t> scratch(x);
        ech.insert(scratch);
    }
    info.hyperplane = gf::Subspace{n, ech.kernel(fp)};
    return {info.kind, std::move(info)};
}

gf::Mat reflection_matrix(const gf::Fp& fp, uint32_t n, std::span<const uint32_t> direction,
                          std::span<const uint32_t> form) {
    gf::Mat m = gf::Mat::identity(n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            m.at(i, j) = fp.add(m.at(i, j), fp.mul(direction[i], form[j]));
    return m;
}

ReflectionCensus reflection_census(const Group& G) {
    ReflectionCensus c{{}, {}, {}, {}, false, Group(G.fp, G.n), Group(G.fp, G.n)};
    std::vector<gf::Mat> trans_mats, homol_mats, all_refl;
    for (uint32_t i = 0; i < G.elements.size(); ++i) {
        Classification cl = classify_element(G.fp, G.elements[i]);
        if (cl.kind == ElemKind::transvection) {
            c.info_of_elem[i] = static_cast<uint32_t>(c.reflections.size());
            c.reflections.push_back(*cl.refl);
            c.transvection_idx.push_back(i);
            trans_mats.push_back(G.elements[i]);
            all_refl.push_back(G.elements[i]);
        } else if (cl.kind == ElemKind::homology) {
            c.info_of_elem[i] = static_cast<uint32_t>(c.reflections.size());
            c.reflections.push_back(*cl.refl);
            c.homology_idx.push_back(i);
            homol_mats.push_back(G.elements[i]);
            all_refl.push_back(G.elements[i]);
        }
    }
    c.T = close_group(G.fp, G.n, trans_mats, kDefaultElementCap);
    c.D = close_group(G.fp, G.n, homol_mats, kDefaultElementCap);
    Group span = close_group(G.fp, G.n, all_refl, kDefaultElementCap);
    c.is_reflection_group = (span.order == G.order);
    return c;
}

Character trivial_character(const Group& G) {
    return Character{std::vector<uint32_t>(G.elements.size(), 1)};
}

Character char_mul(const gf::Fp& fp, const Character& a, const Character& b) {
    Character c{a.values};
    for (size_t i = 0; i < c.values.size(); ++i) c.values[i] = fp.mul(a.values[i], b.values[i]);
    return c;
}

Character char_pow(const gf::Fp& fp, const Character& a, uint64_t e) {
    Character c{std::vector<uint32_t>(a.values.size(), 1)};
    for (size_t i = 0; i < c.values.size(); ++i) c.values[i] = fp.pow(a.values[i], e);
    return c;
}

Character char_inv(const gf::Fp& fp, const Character& a) {
    Character c{a.values};
    for (auto& v : c.values) v = fp.inv(v);
    return c;
}

std::vector<uint32_t> act_on_form(const gf::Fp& fp, const gf::Mat& sigma_inv,
                                  std::span<const uint32_t> form) {
    uint32_t n = sigma_inv.rows;
    std::vector<uint32_t> out(n, 0);
    for (uint32_t j = 0; j < n; ++j) {
        uint64_t acc = 0;
        for (uint32_t i = 0; i < n; ++i)
            acc += static_cast<uint64_t>(form[i]) * sigma_inv.at(i, j) % fp.p;
        out[j] = static_cast<uint32_t>(acc % fp.p);
    }
    return out;
}

std::vector<Hyperplane> hyperplanes(const Group& G) {
    if (!G.is_abelian) throw std::invalid_argument("hyperplanes: group must be abelian");
    ReflectionCensus census = reflection_census(G);

    // one entry per distinct normalized form, in deterministic (sorted) order
    std::vector<std::vector<uint32_t>> forms;
    for (const auto& r : census.reflections)
        if (std::find(forms.begin(), forms.end(), r.form) == forms.end())
            forms.push_back(r.form);
    std::sort(forms.begin(), forms.end());

    std::vector<Hyperplane> out;
    for (const auto& form : forms) {
        Hyperplane h;
        h.form = form;
        gf::Echelon ech(G.fp, G.n);
        {
            std::vector<uint32_t> scratch(form);
            ech.insert(scratch);
        }
        gf::Mat hyp = ech.kernel(G.fp);  // rows span H

        // pointwise stabilizer: sigma fixing every basis vector of H
        for (uint32_t i = 0; i < G.elements.size(); ++i) {
            bool fixes = true;
            for (uint32_t r = 0; r < hyp.rows && fixes; ++r) {
                std::vector<uint32_t> v(hyp.row(r).begin(), hyp.row(r).end());
                if (gf::mat_vec(G.fp, G.elements[i], v) != v) fixes = false;
            }
            if (fixes) h.stabilizer_idx.push_back(i);
        }
        h.stabilizer_order = h.stabilizer_idx.size();
        h.stabilizer_transvective = true;
        for (uint32_t idx : h.stabilizer_idx) {
            if (idx == 0) continue;
            auto it = census.info_of_elem.find(idx);
            if (it == census.info_of_elem.end())
                throw internal_fault("hyperplanes: stabilizer element is not a reflection");
            if (census.reflections[it->second].kind != ElemKind::transvection)
                h.stabilizer_transvective = false;
        }

        // chi_H: sigma . x_H = chi_H(sigma) x_H for every sigma (abelian G)
        h.character.values.resize(G.elements.size());
        for (uint32_t i = 0; i < G.elements.size(); ++i) {
            std::vector<uint32_t> img = act_on_form(G.fp, G.inverse_of(i), form);
            uint32_t j0 = 0;
            while (j0 < G.n && form[j0] == 0) ++j0;
            uint32_t c = img[j0];  // form[j0] == 1 after normalization
            for (uint32_t j = 0; j < G.n; ++j)
                if (img[j] != G.fp.mul(c, form[j]))
                    throw internal_fault(
                        "hyperplanes: form is not semi-invariant (non-abelian action?)");
            if (c == 0) throw internal_fault("hyperplanes: character value 0");
            h.character.values[i] = c;
        }
        out.push_back(std::move(h));
    }
    return out;
}

Decomposition decompose(const Group& G) {
    if (!G.is_abelian) throw std::invalid_argument("decompose: group must be abelian");
    ReflectionCensus census = reflection_census(G);
    if (!census.is_reflection_group)
        throw std::invalid_argument("decompose: group is not generated by reflections");

    const gf::Fp& fp = G.fp;
    uint32_t n = G.n;

    // V^D = common kernel of (sigma - 1), V_D = sum of images, over all of D
    gf::Echelon stack(fp, n);  // rows of all (sigma - 1): kernel = V^D
    gf::Echelon moved(fp, n);
    std::vector<uint32_t> scratch(n);
    for (const auto& m : census.D.elements) {
        gf::Mat diff = gf::mat_sub(fp, m, gf::Mat::identity(n));
        for (uint32_t i = 0; i < n; ++i) {
            auto r = diff.row(i);
            std::copy(r.begin(), r.end(), scratch.begin());
            stack.insert(scratch);
        }
        gf::Mat dt = transpose(diff);  // columns of diff = images of basis vectors
        for (uint32_t i = 0; i < n; ++i) {
            auto r = dt.row(i);
            std::copy(r.begin(), r.end(), scratch.begin());
            moved.insert(scratch);
        }
    }
    Decomposition dec{.T = census.T,
                      .D = census.D,
                      .fixed_D = gf::Subspace{n, stack.kernel(fp)},
                      .moved_D = gf::Subspace{n, moved.basis()},
                      .adapted = gf::Mat(n, n)};

    if (dec.fixed_D.dim() + dec.moved_D.dim() != n)
        throw internal_fault("decompose: V^D and V_D dimensions do not add up");
    for (uint32_t i = 0; i < dec.fixed_D.dim(); ++i)
        for (uint32_t r = 0; r < n; ++r) dec.adapted.at(r, i) = dec.fixed_D.basis.at(i, r);
    for (uint32_t i = 0; i < dec.moved_D.dim(); ++i)
        for (uint32_t r = 0; r < n; ++r)
            dec.adapted.at(r, dec.fixed_D.dim() + i) = dec.moved_D.basis.at(i, r);
    if (!gf::inverse(fp, dec.adapted))
        throw internal_fault("decompose: V != V^D + V_D (sum not direct)");

    // structure assertions from the T x D split
    if (dec.T.order * dec.D.order != G.order)
        throw internal_fault("decompose: |T| |D| != |G|");
    if (dec.D.order % fp.p == 0) throw internal_fault("decompose: D is modular");
    if (!dec.T.is_p_group) throw internal_fault("decompose: T is not a p-group");
    {
        std::unordered_map<std::string, bool> t_keys;
        for (const auto& m : dec.T.elements) t_keys.emplace(m.key(), true);
        uint32_t common = 0;
        for (const auto& m : dec.D.elements)
            if (t_keys.contains(m.key())) ++common;
        if (common != 1) throw internal_fault("decompose: T and D intersect nontrivially");
    }
    for (const auto& t : dec.T.elements)
        for (uint32_t i = 0; i < dec.moved_D.dim(); ++i) {
            std::vector<uint32_t> v(dec.moved_D.basis.row(i).begin(),
                                    dec.moved_D.basis.row(i).end());
            if (gf::mat_vec(fp, t, v) != v)
                throw internal_fault("decompose: T does not act trivially on V_D");
        }
    for (const auto& d : dec.D.elements)
        for (uint32_t i = 0; i < dec.fixed_D.dim(); ++i) {
            std::vector<uint32_t> v(dec.fixed_D.basis.row(i).begin(),
                                    dec.fixed_D.basis.row(i).end());
            if (gf::mat_vec(fp, d, v) != v)
                throw internal_fault("decompose: D does not act trivially on V^D");
        }
    return dec;
}

Group restrict_group(const Group& G, const std::vector<gf::Mat>& gens, const gf::Mat& basis_rows) {
    const gf::Fp& fp = G.fp;
    uint32_t m = basis_rows.rows;
    gf::Mat bt = transpose(basis_rows);  // n x m, columns are basis vectors
    std::vector<gf::Mat> restricted;
    for (const auto& g : gens) {
        gf::Mat r(m, m);
        for (uint32_t i = 0; i < m; ++i) {
            std::vector<uint32_t> v(basis_rows.row(i).begin(), basis_rows.row(i).end());
            std::vector<uint32_t> img = gf::mat_vec(fp, g, v);
            auto sol = gf::rank_solve(fp, bt, &img);
            if (!sol.solution)
                throw internal_fault("restrict_group: subspace is not invariant");
            for (uint32_t j = 0; j < m; ++j) r.at(j, i) = (*sol.solution)[j];
        }
        restricted.push_back(std::move(r));
    }
    return close_group(fp, m, restricted, kDefaultElementCap);
}

gf::Subspace fixed_space(const Group& G) {
    gf::Echelon stack(G.fp, G.n);
    std::vector<uint32_t> scratch(G.n);
    for (const auto& g : G.generators) {
        gf::Mat diff = gf::mat_sub(G.fp, g, gf::Mat::identity(G.n));
        for (uint32_t i = 0; i < G.n; ++i) {
            auto r = diff.row(i);
            std::copy(r.begin(), r.end(), scratch.begin());
            stack.insert(scratch);
        }
    }
    return gf::Subspace{G.n, stack.kernel(G.fp)};
}

uint32_t element_order(const gf::Fp& fp, const gf::Mat& m) {
    gf::Mat x = m;
    uint32_t k = 1;
    while (!is_identity(x)) {
        x = gf::mat_mul(fp, x, m);
        ++k;
        if (k > (1u << 26)) throw internal_fault("element_order: runaway");
    }
    return k;
}

namespace {
// dense univariate polynomials over GF(p), ascending coefficients
using UPoly = std::vector<uint32_t>;
UPoly upoly_mul(const gf::Fp& fp, const UPoly& a, const UPoly& b) {
    UPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = fp.add(c[i + j], fp.mul(a[i], b[j]));
    }
    return c;
}
void upoly_addmul(const gf::Fp& fp, UPoly& acc, const UPoly& t, uint32_t sign_one) {
    // acc += sign * t with sign in {1, p-1}
    if (acc.size() < t.size()) acc.resize(t.size(), 0);
    for (size_t i = 0; i < t.size(); ++i) acc[i] = fp.add(acc[i], fp.mul(sign_one, t[i]));
}

UPoly det_poly(const gf::Fp& fp, const std::vector<std::vector<UPoly>>& m,
               std::vector<uint32_t>& cols, uint32_t row) {
    if (cols.empty()) return {1};
    UPoly acc{0};
    uint32_t sign = 1;
    for (size_t k = 0; k < cols.size(); ++k) {
        uint32_t c = cols[k];
        const UPoly& entry = m[row][c];
        bool zero = std::all_of(entry.begin(), entry.end(), [](uint32_t v) { return v == 0; });
        if (!zero) {
            cols.erase(cols.begin() + k);
            UPoly sub = det_poly(fp, m, cols, row + 1);
            cols.insert(cols.begin() + k, c);
            upoly_addmul(fp, acc, upoly_mul(fp, entry, sub), sign);
        }
        sign = fp.neg(sign);
    }
    return acc;
}
}  // namespace

std::vector<uint32_t> char_poly(const gf::Fp& fp, const gf::Mat& a) {
    uint32_t n = a.rows;
    std::vector<std::vector<UPoly>> m(n, std::vector<UPoly>(n));
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            if (i == j)
                m[i][j] = {fp.neg(a.at(i, j)), 1};  // t - a_ii
            else
                m[i][j] = {fp.neg(a.at(i, j))};
        }
    std::vector<uint32_t> cols(n);
    for (uint32_t i = 0; i < n; ++i) cols[i] = i;
    UPoly det = det_poly(fp, m, cols, 0);
    det.resize(n + 1, 0);
    return det;
}

}  // namespace coreg::grp

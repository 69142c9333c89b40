#include "coreg/diffr.hpp"

#include <algorithm>
#include <functional>

#include "coreg/error.hpp"

namespace coreg::diffr {

namespace {

// Unimodular form basis starting with x_H: rows of the returned matrix are
// y_1 = x_H, y_2, ..., y_n.
gf::Mat adapted_forms(const gf::Fp& fp, std::span<const uint32_t> x_H) {
    uint32_t n = static_cast<uint32_t>(x_H.size());
    gf::Echelon ech(fp, n);
    gf::Mat out(n, n);
    std::vector<uint32_t> row(x_H.begin(), x_H.end());
    uint32_t placed = 0;
    std::copy(x_H.begin(), x_H.end(), out.row(placed).begin());
    ++placed;
    ech.insert(row);
    for (uint32_t j = 0; j < n && placed < n; ++j) {
        std::fill(row.begin(), row.end(), 0);
        row[j] = 1;
        std::vector<uint32_t> cand = row;
        if (ech.insert(cand)) {
            std::fill(out.row(placed).begin(), out.row(placed).end(), 0);
            out.at(placed, j) = 1;
            ++placed;
        }
    }
    if (placed != n) throw internal_fault("adapted_forms: failed to complete a basis");
    return out;
}

std::vector<std::vector<uint32_t>> pascal_mod_p(const gf::Fp& fp, uint32_t maxn) {
    std::vector<std::vector<uint32_t>> C(maxn + 1);
    for (uint32_t i = 0; i <= maxn; ++i) {
        C[i].assign(i + 1, 1);
        for (uint32_t j = 1; j < i; ++j) C[i][j] = fp.add(C[i - 1][j - 1], C[i - 1][j]);
    }
    return C;
}

}  // namespace

HyperplaneExponent hyperplane_exponent(const grp::Group& G_H, std::span<const uint32_t> x_H,
                                       uint32_t test_bound) {
    const gf::Fp& fp = G_H.fp;
    uint32_t n = G_H.n;
    uint64_t order = G_H.order;
    if (order == 1)
        throw std::invalid_argument("hyperplane_exponent: trivial stabilizer has no hyperplane");
    if (test_bound == 0) test_bound = static_cast<uint32_t>(2 * n * order);
    uint32_t cap = static_cast<uint32_t>(2 * (order - 1));

    // normalize the form
    std::vector<uint32_t> form(x_H.begin(), x_H.end());
    {
        uint32_t j0 = 0;
        while (j0 < n && form[j0] == 0) ++j0;
        if (j0 == n) throw std::invalid_argument("hyperplane_exponent: zero form");
        uint32_t inv = fp.inv(form[j0]);
        for (auto& v : form) v = fp.mul(v, inv);
    }

    // precondition: every non-identity element is a reflection fixing ker x_H
    // pointwise, with sigma.y_j = y_j + c_j y_1 and sigma.y_1 = chi y_1 in the
    // adapted form basis
    gf::Mat Y = adapted_forms(fp, form);
    auto yinv = gf::inverse(fp, Y);
    if (!yinv) throw internal_fault("hyperplane_exponent: adapted basis singular");

    std::vector<uint32_t> chi(G_H.elements.size());
    std::vector<std::vector<uint32_t>> cvec(G_H.elements.size());  // c_j per element, j = 1..n-1
    for (uint32_t e = 0; e < G_H.elements.size(); ++e) {
        cvec[e].assign(n, 0);
        for (uint32_t i = 0; i < n; ++i) {
            std::vector<uint32_t> yi(Y.row(i).begin(), Y.row(i).end());
            std::vector<uint32_t> img = grp::act_on_form(fp, G_H.inverse_of(e), yi);
            // coefficients of the image in the y-basis
            std::vector<uint32_t> coef(n, 0);
            for (uint32_t j = 0; j < n; ++j) {
                uint32_t acc = 0;
                for (uint32_t k = 0; k < n; ++k)
                    acc = fp.add(acc, fp.mul(img[k], yinv->at(k, j)));
                coef[j] = acc;
            }
            if (i == 0) {
                for (uint32_t j = 1; j < n; ++j)
                    if (coef[j])
                        throw std::invalid_argument(
                            "hyperplane_exponent: element does not stabilize the hyperplane");
                chi[e] = coef[0];
            } else {
                for (uint32_t j = 1; j < n; ++j)
                    if (coef[j] != (j == i ? 1u : 0u))
                        throw std::invalid_argument(
                            "hyperplane_exponent: element does not fix the hyperplane pointwise");
                cvec[e][i] = coef[0];
            }
        }
    }

    auto C = pascal_mod_p(fp, test_bound);

    // For a monomial y^e with e_1 < a, the twisted transfer is divisible by
    // y_1^a iff for every tuple (t_2..t_n) with e_1 + sum t < a:
    //   sum_sigma chi^(e_1 - a) prod_j C(e_j, t_j) c_j^{t_j} = 0.
    struct Failure {
        poly::Exps mono;
        bool found = false;
    };

    auto divisible = [&](uint32_t a, Failure* fail) -> bool {
        // enumerate monomials of degree <= test_bound with e_1 < a
        poly::Exps e(n, 0);
        std::vector<uint32_t> t(n, 0);
        std::function<bool(uint32_t, uint32_t)> tuples = [&](uint32_t pos, uint32_t left) -> bool {
            if (pos == n) {
                uint32_t s = 0;
                for (uint32_t sigma = 0; sigma < G_H.elements.size(); ++sigma) {
                    uint32_t term;
                    uint32_t e1 = e[0];
                    term = (e1 >= a) ? fp.pow(chi[sigma], e1 - a)
                                     : fp.pow(fp.inv(chi[sigma]), a - e1);
                    for (uint32_t j = 1; j < n; ++j) {
                        if (!t[j]) continue;
                        term = fp.mul(term, C[e[j]][t[j]]);
                        term = fp.mul(term, fp.pow(cvec[sigma][j], t[j]));
                    }
                    s = fp.add(s, term);
                }
                return s == 0;
            }
            for (uint32_t tj = 0; tj <= std::min<uint32_t>(left, e[pos]); ++tj) {
                t[pos] = tj;
                if (!tuples(pos + 1, left - tj)) return false;
            }
            t[pos] = 0;
            return true;
        };
        std::function<bool(uint32_t, uint32_t)> monos = [&](uint32_t pos, uint32_t left) -> bool {
            if (pos == n) {
                if (e[0] >= a) return true;
                // tuples with sum t <= a - 1 - e_1
                return tuples(1, a - 1 - e[0]);
            }
            uint32_t hi = left;
            for (uint32_t ev = 0; ev <= hi; ++ev) {
                e[pos] = static_cast<poly::Exp>(ev);
                if (!monos(pos + 1, left - ev)) {
                    if (fail && !fail->found) {
                        fail->mono = e;
                        fail->found = true;
                    }
                    e[pos] = 0;
                    return false;
                }
            }
            e[pos] = 0;
            return true;
        };
        return monos(0, test_bound);
    };

    HyperplaneExponent result;
    result.test_bound = test_bound;
    result.search_cap = cap;
    uint32_t a = 1;
    if (!divisible(1, nullptr))
        throw internal_fault("hyperplane_exponent: transfer not divisible by the hyperplane form");
    Failure fail;
    while (true) {
        if (a + 1 > cap + 1)
            throw input_error(
                "hyperplane_exponent: exponent search cap " + std::to_string(cap) +
                " reached; rerun with a larger cap (a divergent exponent would be a finding)");
        fail = Failure{};
        if (divisible(a + 1, &fail)) {
            ++a;
            continue;
        }
        break;
    }
    result.a = a;

    // reconstruct the failing y-monomial as a polynomial in x and verify the
    // fast path against the generic twisted transfer
    poly::Poly witness = poly::Poly::constant(fp, n, 1);
    for (uint32_t i = 0; i < n; ++i) {
        if (!fail.mono[i]) continue;
        std::vector<uint32_t> yi(Y.row(i).begin(), Y.row(i).end());
        witness = poly::mul(fp, witness, poly::pow(fp, poly::Poly::linear_form(fp, yi),
                                                   fail.mono[i]));
    }
    result.failing_monomial = witness;
    {
        grp::Character chi_pow{std::vector<uint32_t>(G_H.elements.size(), 1)};
        for (uint32_t eidx = 0; eidx < G_H.elements.size(); ++eidx)
            chi_pow.values[eidx] = fp.pow(chi[eidx], a + 1);
        poly::Poly tw = poly::twisted_transfer(G_H, chi_pow, witness);
        poly::Poly xf = poly::Poly::linear_form(fp, form);
        poly::Poly rem = tw;
        bool divides_all = true;
        for (uint32_t k = 0; k < a + 1 && divides_all; ++k) {
            auto q = poly::exact_divide(fp, rem, xf);
            if (!q)
                divides_all = false;
            else
                rem = *q;
        }
        if (divides_all)
            throw internal_fault("hyperplane_exponent: witness fails to certify maximality");
    }
    return result;
}

DifferentResult different(const grp::Group& G) {
    if (!G.is_abelian) throw std::invalid_argument("different: group must be abelian");
    const gf::Fp& fp = G.fp;
    uint32_t n = G.n;
    DifferentResult res;
    res.hyperplanes = grp::hyperplanes(G);
    res.theta = poly::Poly::constant(fp, n, 1);
    res.theta_character = grp::trivial_character(G);
    for (const auto& h : res.hyperplanes) {
        std::vector<gf::Mat> stab;
        for (uint32_t idx : h.stabilizer_idx) stab.push_back(G.elements[idx]);
        grp::Group G_H = grp::close_group(fp, n, stab);
        if (G_H.order != h.stabilizer_order)
            throw internal_fault("different: stabilizer set is not closed");
        HyperplaneExponent ex = hyperplane_exponent(G_H, h.form);
        res.exponents.push_back(ex.a);
        res.stabilizer_orders.push_back(static_cast<uint32_t>(h.stabilizer_order));
        res.test_bound = std::max(res.test_bound, ex.test_bound);
        res.search_cap = std::max(res.search_cap, ex.search_cap);
        if (ex.a != h.stabilizer_order - 1) res.exponents_match_stabilizer_orders = false;
        res.theta = poly::mul(fp, res.theta,
                              poly::pow(fp, poly::Poly::linear_form(fp, h.form), ex.a));
        res.theta_character =
            grp::char_mul(fp, res.theta_character, grp::char_pow(fp, h.character, ex.a));
        res.degree += ex.a;
    }
    // semi-invariance with the recorded character
    for (uint32_t e = 0; e < G.elements.size(); ++e) {
        poly::Poly img = poly::act_with_inverse(fp, G.inverse_of(e), res.theta);
        if (img != poly::scale(fp, res.theta, res.theta_character.values[e]))
            throw internal_fault("different: theta is not semi-invariant with chi_theta");
    }
    // T/D factorisation: transvection hyperplanes vs homology hyperplanes
    res.theta_T = poly::Poly::constant(fp, n, 1);
    res.theta_D = poly::Poly::constant(fp, n, 1);
    for (size_t i = 0; i < res.hyperplanes.size(); ++i) {
        const auto& h = res.hyperplanes[i];
        poly::Poly f = poly::pow(fp, poly::Poly::linear_form(fp, h.form), res.exponents[i]);
        if (h.stabilizer_transvective)
            res.theta_T = poly::mul(fp, res.theta_T, f);
        else
            res.theta_D = poly::mul(fp, res.theta_D, f);
    }
    if (poly::mul(fp, res.theta_T, res.theta_D) != res.theta)
        throw internal_fault("different: theta_T * theta_D != theta");
    return res;
}

DspResult dsp_check(invar::InvariantTable& table, const DifferentResult& diff) {
    const grp::Group& G = table.group();
    const gf::Fp& fp = G.fp;
    uint32_t t = diff.degree;
    table.extend_to(t);
    uint32_t N = table.bases().at(t).size();

    std::vector<uint32_t> weights(G.elements.size());
    for (uint32_t e = 0; e < G.elements.size(); ++e)
        weights[e] = fp.inv(diff.theta_character.values[e]);

    // column k of the system = coordinates of the twisted transfer of m_k
    gf::Mat A(N, N);
    std::vector<uint32_t> row(N);
    for (uint32_t k = 0; k < N; ++k) {
        table.action().weighted_row_sum(t, k, weights, row);
        for (uint32_t r = 0; r < N; ++r) A.at(r, k) = row[r];
    }
    std::vector<uint32_t> rhs = table.bases().to_row(diff.theta, t);
    auto sol = gf::rank_solve(fp, A, &rhs);

    DspResult res;
    res.unknowns = N;
    res.system_rank = sol.rank;
    if (!sol.solution) {
        // rank certificate: the augmented system has strictly larger rank
        gf::Mat Ab(N, N + 1);
        for (uint32_t r = 0; r < N; ++r) {
            for (uint32_t c = 0; c < N; ++c) Ab.at(r, c) = A.at(r, c);
            Ab.at(r, N) = rhs[r];
        }
        res.augmented_rank = gf::rank_of(fp, Ab);
        res.holds = false;
        res.witness = poly::Poly::zero(G.n);
        return res;
    }
    res.augmented_rank = sol.rank;
    res.holds = true;
    res.witness = table.bases().to_poly(fp, *sol.solution, t);
    // verify through the generic transfer path
    poly::Poly check = poly::twisted_transfer(G, diff.theta_character, res.witness);
    if (check != diff.theta)
        throw internal_fault("dsp_check: witness does not reproduce theta under the transfer");
    return res;
}

poly::Poly projection_apply(const grp::Group& G, const DifferentResult& diff,
                            const poly::Poly& witness, const poly::Poly& f) {
    const gf::Fp& fp = G.fp;
    poly::Poly num = poly::twisted_transfer(G, diff.theta_character, poly::mul(fp, witness, f));
    auto q = poly::exact_divide(fp, num, diff.theta);
    if (!q)
        throw internal_fault("projection_apply: transfer is not divisible by theta");
    for (const auto& g : G.generators)
        if (poly::act(fp, g, *q) != *q)
            throw internal_fault("projection_apply: projection output is not invariant");
    return *q;
}

TransferImageProfile transfer_image_profile(invar::InvariantTable& table, uint32_t D) {
    const grp::Group& G = table.group();
    const gf::Fp& fp = G.fp;
    table.extend_to(D);
    std::vector<uint32_t> weights(G.elements.size(), 1);

    TransferImageProfile res;
    res.bound = D;
    res.generator = poly::Poly::zero(G.n);
    res.per_degree_dims.resize(D + 1, 0);

    std::vector<gf::Mat> tr_basis(D + 1);  // RREF rows of (Im Tr)_d
    std::vector<uint32_t> row;
    for (uint32_t d = 0; d <= D; ++d) {
        uint32_t N = table.bases().at(d).size();
        gf::Echelon span(fp, N);
        row.assign(N, 0);
        for (uint32_t k = 0; k < N; ++k) {
            table.action().weighted_row_sum(d, k, weights, row);
            span.insert(row);
        }
        tr_basis[d] = span.basis();
        res.per_degree_dims[d] = span.rank();
        if (d == 0 && span.rank() > 0) res.contains_unit = true;

        // decomposable part over the invariant ring
        gf::Echelon dec(fp, N);
        std::vector<uint32_t> prod(N);
        for (const auto& g : table.generators()) {
            if (g.degree > d) continue;
            const gf::Mat& lower = tr_basis[d - g.degree];
            for (uint32_t i = 0; i < lower.rows; ++i) {
                std::fill(prod.begin(), prod.end(), 0);
                table.promote_by_poly(lower.row(i), d - g.degree, g.f, prod);
                dec.insert(prod);
            }
        }
        for (uint32_t i = 0; i < tr_basis[d].rows; ++i) {
            std::vector<uint32_t> r(tr_basis[d].row(i).begin(), tr_basis[d].row(i).end());
            if (dec.insert(r)) {
                res.gen_degrees.push_back(d);
                if (res.generator.is_zero())
                    res.generator = table.bases().to_poly(fp, tr_basis[d].row(i), d);
            }
        }
    }
    res.mu = static_cast<uint32_t>(res.gen_degrees.size());
    res.principal = (res.mu == 1);
    return res;
}

}  // namespace coreg::diffr

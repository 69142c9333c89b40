#include "coreg/poly.hpp"

#include <algorithm>

#include "coreg/error.hpp"

namespace coreg::poly {

Poly Poly::constant(const gf::Fp& fp, uint32_t nvars, uint32_t c) {
    Poly p(nvars);
    p.add_term(fp, Exps(nvars, 0), c);
    return p;
}

Poly Poly::variable(uint32_t nvars, uint32_t i, Exp power) {
    Poly p(nvars);
    Exps e(nvars, 0);
    e[i] = power;
    p.terms_.emplace(std::move(e), 1);
    return p;
}

Poly Poly::monomial(const gf::Fp& fp, uint32_t nvars, Exps e, uint32_t c) {
    Poly p(nvars);
    p.add_term(fp, e, c);
    return p;
}

Poly Poly::linear_form(const gf::Fp& fp, std::span<const uint32_t> coeffs) {
    Poly p(static_cast<uint32_t>(coeffs.size()));
    for (uint32_t i = 0; i < coeffs.size(); ++i) {
        Exps e(coeffs.size(), 0);
        e[i] = 1;
        p.add_term(fp, e, coeffs[i]);
    }
    return p;
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    uint32_t d = total_deg(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (total_deg(e) != d) return false;
    return true;
}

uint32_t Poly::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
}

void Poly::add_term(const gf::Fp& fp, const Exps& e, uint32_t c) {
    c %= fp.p;
    if (!c) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second = fp.add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

Poly add(const gf::Fp& fp, const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.terms()) r.add_term(fp, e, c);
    return r;
}

Poly sub(const gf::Fp& fp, const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.terms()) r.add_term(fp, e, fp.neg(c));
    return r;
}

Poly scale(const gf::Fp& fp, const Poly& a, uint32_t c) {
    Poly r(a.nvars());
    for (const auto& [e, v] : a.terms()) r.add_term(fp, e, fp.mul(v, c));
    return r;
}

Poly mul(const gf::Fp& fp, const Poly& a, const Poly& b) {
    Poly r(a.nvars());
    Exps e(a.nvars());
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = static_cast<Exp>(ea[i] + eb[i]);
            r.add_term(fp, e, fp.mul(ca, cb));
        }
    return r;
}

Poly pow(const gf::Fp& fp, const Poly& a, uint32_t e) {
    Poly r = Poly::constant(fp, a.nvars(), 1);
    Poly base = a;
    while (e) {
        if (e & 1) r = mul(fp, r, base);
        base = mul(fp, base, base);
        e >>= 1;
    }
    return r;
}

std::string to_string(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (const auto& [e, c] : f.terms()) {
        if (!s.empty()) s += " + ";
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            s += std::to_string(c);
        } else if (c == 1) {
            s += mono;
        } else {
            s += std::to_string(c) + "*" + mono;
        }
    }
    return s;
}

Poly act_with_inverse(const gf::Fp& fp, const gf::Mat& sigma_inv, const Poly& f) {
    uint32_t n = f.nvars();
    if (sigma_inv.rows != n) throw std::invalid_argument("act: dimension mismatch");
    // image of x_i is the linear form with coefficients from row i of sigma^{-1}
    std::vector<Poly> var_img(n);
    for (uint32_t i = 0; i < n; ++i) {
        std::vector<uint32_t> row(sigma_inv.row(i).begin(), sigma_inv.row(i).end());
        var_img[i] = Poly::linear_form(fp, row);
    }
    std::vector<std::map<Exp, Poly>> powers(n);  // memoized var_img[i]^e
    Poly out(n);
    for (const auto& [e, c] : f.terms()) {
        Poly term = Poly::constant(fp, n, c);
        for (uint32_t i = 0; i < n; ++i) {
            if (!e[i]) continue;
            auto it = powers[i].find(e[i]);
            if (it == powers[i].end())
                it = powers[i].emplace(e[i], pow(fp, var_img[i], e[i])).first;
            term = mul(fp, term, it->second);
        }
        out = add(fp, out, term);
    }
    return out;
}

Poly act(const gf::Fp& fp, const gf::Mat& sigma, const Poly& f) {
    auto inv = gf::inverse(fp, sigma);
    if (!inv) throw std::invalid_argument("act: matrix not invertible");
    return act_with_inverse(fp, *inv, f);
}

std::optional<Poly> exact_divide(const gf::Fp& fp, const Poly& f, const Poly& g) {
    if (g.is_zero()) throw std::invalid_argument("exact_divide: division by zero polynomial");
    Poly q(f.nvars());
    Poly r = f;
    const auto& [ge, gc] = g.leading();
    while (!r.is_zero()) {
        const auto& [re, rc] = r.leading();
        Exps t(re.size());
        for (size_t i = 0; i < re.size(); ++i) {
            if (re[i] < ge[i]) return std::nullopt;
            t[i] = static_cast<Exp>(re[i] - ge[i]);
        }
        uint32_t tc = fp.div(rc, gc);
        Poly term = Poly::monomial(fp, f.nvars(), t, tc);
        q = add(fp, q, term);
        r = sub(fp, r, mul(fp, term, g));
    }
    return q;
}

Poly delta(const gf::Fp& fp, const gf::Mat& sigma, std::span<const uint32_t> form, const Poly& f) {
    Poly diff = sub(fp, act(fp, sigma, f), f);
    Poly x = Poly::linear_form(fp, form);
    auto q = exact_divide(fp, diff, x);
    if (!q) throw internal_fault("delta: sigma(f) - f is not divisible by x_rho");
    return *q;
}

Poly delta(const grp::Group& G, const grp::ReflectionInfo& rho, const Poly& f) {
    gf::Mat sigma = grp::reflection_matrix(G.fp, G.n, rho.direction, rho.form);
    return delta(G.fp, sigma, rho.form, f);
}

Poly transfer(const grp::Group& G, const Poly& f) {
    Poly sum(f.nvars());
    for (uint32_t i = 0; i < G.elements.size(); ++i)
        sum = add(G.fp, sum, act_with_inverse(G.fp, G.inverse_of(i), f));
    return sum;
}

Poly twisted_transfer(const grp::Group& G, const grp::Character& chi, const Poly& f) {
    if (chi.values.size() != G.elements.size())
        throw std::invalid_argument("twisted_transfer: character not defined on all of G");
    Poly sum(f.nvars());
    for (uint32_t i = 0; i < G.elements.size(); ++i) {
        Poly img = act_with_inverse(G.fp, G.inverse_of(i), f);
        sum = add(G.fp, sum, scale(G.fp, img, G.fp.inv(chi.values[i])));
    }
    return sum;
}

Poly orbit_norm(const grp::Group& G, const Poly& linear) {
    if (linear.degree() != 1 || !linear.is_homogeneous())
        throw std::invalid_argument("orbit_norm: input must be a homogeneous linear form");
    std::vector<Poly> orbit;
    for (uint32_t i = 0; i < G.elements.size(); ++i) {
        Poly img = act_with_inverse(G.fp, G.inverse_of(i), linear);
        if (std::find(orbit.begin(), orbit.end(), img) == orbit.end())
            orbit.push_back(std::move(img));
    }
    Poly prod = Poly::constant(G.fp, linear.nvars(), 1);
    for (const auto& g : orbit) prod = mul(G.fp, prod, g);
    return prod;
}

}  // namespace coreg::poly

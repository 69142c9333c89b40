#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "coreg/group.hpp"
#include "coreg/mat.hpp"

namespace coreg::poly {

using Exp = uint16_t;
using Exps = std::vector<Exp>;

inline uint32_t total_deg(const Exps& e) {
    return std::accumulate(e.begin(), e.end(), 0u,
                           [](uint32_t a, Exp b) { return a + b; });
}

// Graded lexicographic order, descending (leading term first), x1 > x2 > ...
struct GrlexGreater {
    bool operator()(const Exps& a, const Exps& b) const {
        uint32_t da = total_deg(a), db = total_deg(b);
        if (da != db) return da > db;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

// Sparse multivariate polynomial over GF(p): exponent vector -> nonzero
// coefficient, iterated in descending graded-lex order.
class Poly {
public:
    Poly() = default;
    explicit Poly(uint32_t nvars) : n_(nvars) {}

    static Poly zero(uint32_t nvars) { return Poly(nvars); }
    static Poly constant(const gf::Fp& fp, uint32_t nvars, uint32_t c);
    static Poly variable(uint32_t nvars, uint32_t i, Exp power = 1);
    static Poly monomial(const gf::Fp& fp, uint32_t nvars, Exps e, uint32_t c);
    static Poly linear_form(const gf::Fp& fp, std::span<const uint32_t> coeffs);

    uint32_t nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    // total degree; -1 for the zero polynomial
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_deg(terms_.begin()->first)); }
    bool is_homogeneous() const;
    size_t term_count() const { return terms_.size(); }
    const std::map<Exps, uint32_t, GrlexGreater>& terms() const { return terms_; }
    const std::pair<const Exps, uint32_t>& leading() const { return *terms_.begin(); }
    uint32_t coeff(const Exps& e) const;

    void add_term(const gf::Fp& fp, const Exps& e, uint32_t c);

    bool operator==(const Poly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

private:
    uint32_t n_ = 0;
    std::map<Exps, uint32_t, GrlexGreater> terms_;
};

Poly add(const gf::Fp& fp, const Poly& a, const Poly& b);
Poly sub(const gf::Fp& fp, const Poly& a, const Poly& b);
Poly scale(const gf::Fp& fp, const Poly& a, uint32_t c);
Poly mul(const gf::Fp& fp, const Poly& a, const Poly& b);
Poly pow(const gf::Fp& fp, const Poly& a, uint32_t e);

// Terms in graded-lex order, variables x1..xn, least nonnegative residues,
// e.g. "x1^2*x2 + 2*x3". Bit-exact output format.
std::string to_string(const Poly& f);

// (sigma . f)(v) = f(sigma^{-1} v); an algebra automorphism of k[V].
Poly act(const gf::Fp& fp, const gf::Mat& sigma, const Poly& f);
// Same action given a precomputed inverse.
Poly act_with_inverse(const gf::Fp& fp, const gf::Mat& sigma_inv, const Poly& f);

// Exact multivariate division: q with f = q*g, or nullopt when g does not
// divide f. Throws on g = 0.
std::optional<Poly> exact_divide(const gf::Fp& fp, const Poly& f, const Poly& g);

// Delta operator of a pseudo-reflection: sigma(f) - f = delta(f) * x_rho.
// Division is exact by construction; failure is an internal fault.
Poly delta(const gf::Fp& fp, const gf::Mat& sigma, std::span<const uint32_t> form, const Poly& f);
Poly delta(const grp::Group& G, const grp::ReflectionInfo& rho, const Poly& f);

// Tr(f) = sum over sigma in G of sigma(f).
Poly transfer(const grp::Group& G, const Poly& f);

// Sum over sigma of chi(sigma)^{-1} sigma(f); plain transfer for trivial chi.
Poly twisted_transfer(const grp::Group& G, const grp::Character& chi, const Poly& f);

// Product over the distinct G-orbit of a linear form.
Poly orbit_norm(const grp::Group& G, const Poly& linear);

}  // namespace coreg::poly

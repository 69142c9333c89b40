#include <doctest.h>

#include <random>

#include "coreg/action.hpp"
#include "coreg/error.hpp"
#include "coreg/poly.hpp"

using namespace coreg;
using gf::Fp;
using gf::Mat;
using poly::Poly;

namespace {
Mat mat_from(uint32_t n, std::initializer_list<uint32_t> vals) {
    Mat m(n, n);
    std::copy(vals.begin(), vals.end(), m.a.begin());
    return m;
}

std::vector<Mat> z2cubed_generators() {
    return {
        mat_from(4, {1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1}),
        mat_from(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1}),
        mat_from(4, {1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 1, 1, 0, 1}),
    };
}

Poly random_poly(std::mt19937_64& rng, const Fp& fp, uint32_t n, uint32_t maxdeg) {
    Poly f(n);
    int terms = 1 + rng() % 6;
    for (int t = 0; t < terms; ++t) {
        poly::Exps e(n);
        uint32_t budget = rng() % (maxdeg + 1);
        for (uint32_t i = 0; i < n && budget; ++i) {
            uint32_t ei = rng() % (budget + 1);
            e[i] = static_cast<poly::Exp>(ei);
            budget -= ei;
        }
        f.add_term(fp, e, rng() % fp.p);
    }
    return f;
}

// Evaluate a polynomial at a point (valid only as a cross-check in contexts
// where points determine the polynomials involved, e.g. linear forms).
uint32_t eval(const Fp& fp, const Poly& f, const std::vector<uint32_t>& v) {
    uint32_t acc = 0;
    for (const auto& [e, c] : f.terms()) {
        uint32_t term = c;
        for (size_t i = 0; i < e.size(); ++i)
            term = fp.mul(term, fp.pow(v[i], e[i]));
        acc = fp.add(acc, term);
    }
    return acc;
}
}  // namespace

TEST_CASE("poly rendering is bit-exact") {
    Fp f3(3);
    Poly f(3);
    f.add_term(f3, {2, 1, 0}, 1);
    f.add_term(f3, {0, 0, 1}, 2);
    CHECK(poly::to_string(f) == "x1^2*x2 + 2*x3");
    CHECK(poly::to_string(Poly::zero(2)) == "0");
    CHECK(poly::to_string(Poly::constant(f3, 2, 2)) == "2");
    Poly g(2);
    g.add_term(f3, {1, 1}, 1);
    g.add_term(f3, {0, 2}, 1);
    CHECK(poly::to_string(g) == "x1*x2 + x2^2");
}

TEST_CASE("act: identity, fixture invariance of x1 and x2, shear image") {
    Fp f2(2);
    auto gens = z2cubed_generators();
    Poly x1 = Poly::variable(4, 0), x2 = Poly::variable(4, 1);
    std::mt19937_64 rng(3);
    Poly f = random_poly(rng, f2, 4, 4);
    CHECK(poly::act(f2, Mat::identity(4), f) == f);
    for (const auto& s : gens) {
        CHECK(poly::act(f2, s, x1) == x1);
        CHECK(poly::act(f2, s, x2) == x2);
    }

    // shear [[1,0],[1,1]] over GF(2): sigma . x2 = x1 + x2
    Mat shear = mat_from(2, {1, 0, 1, 1});
    Poly img = poly::act(f2, shear, Poly::variable(2, 1));
    Poly want(2);
    want.add_term(f2, {1, 0}, 1);
    want.add_term(f2, {0, 1}, 1);
    CHECK(img == want);
    // cross-check on all 4 points of GF(2)^2 (degree-1 forms are determined
    // by their values)
    auto sinv = gf::inverse(f2, shear);
    for (uint32_t a = 0; a < 2; ++a)
        for (uint32_t b = 0; b < 2; ++b) {
            std::vector<uint32_t> v{a, b};
            auto pre = gf::mat_vec(f2, *sinv, v);
            CHECK(eval(f2, img, v) == pre[1]);
        }
}

TEST_CASE("act is an algebra automorphism respecting composition") {
    Fp f3(3);
    std::mt19937_64 rng(77);
    Mat a = mat_from(3, {1, 0, 0, 0, 1, 0, 1, 0, 1});
    Mat b = mat_from(3, {1, 0, 0, 0, 2, 0, 0, 0, 1});
    for (int it = 0; it < 30; ++it) {
        Poly f = random_poly(rng, f3, 3, 4), g = random_poly(rng, f3, 3, 4);
        CHECK(poly::act(f3, a, poly::mul(f3, f, g)) ==
              poly::mul(f3, poly::act(f3, a, f), poly::act(f3, a, g)));
        // act(ab, f) = act(a, act(b, f))
        CHECK(poly::act(f3, gf::mat_mul(f3, a, b), f) ==
              poly::act(f3, a, poly::act(f3, b, f)));
        // inverse undoes
        auto ainv = gf::inverse(f3, a);
        CHECK(poly::act(f3, *ainv, poly::act(f3, a, f)) == f);
    }
}

TEST_CASE("exact_divide: pinned quotients and failure as a value") {
    Fp f2(2);
    Poly x1 = Poly::variable(2, 0), x2 = Poly::variable(2, 1);
    CHECK(*poly::exact_divide(f2, Poly::zero(2), x1) == Poly::zero(2));

    Poly f = poly::add(f2, poly::mul(f2, x1, x1), poly::mul(f2, x1, x2));
    CHECK(*poly::exact_divide(f2, f, x1) == poly::add(f2, x1, x2));

    // x1 x2 (x1 + x2) / x2 = x1^2 + x1 x2
    Poly theta = poly::mul(f2, poly::mul(f2, x1, x2), poly::add(f2, x1, x2));
    auto q = poly::exact_divide(f2, theta, x2);
    REQUIRE(q);
    CHECK(*q == f);
    CHECK(poly::mul(f2, *q, x2) == theta);

    CHECK(!poly::exact_divide(f2, x1, x2).has_value());
    CHECK_THROWS_AS(poly::exact_divide(f2, x1, Poly::zero(2)), std::invalid_argument);
}

TEST_CASE("exact_divide: divide-then-remultiply on random products") {
    Fp f5(5);
    std::mt19937_64 rng(123);
    for (int it = 0; it < 40; ++it) {
        Poly a = random_poly(rng, f5, 3, 3), b = random_poly(rng, f5, 3, 3);
        if (a.is_zero() || b.is_zero()) continue;
        Poly prod = poly::mul(f5, a, b);
        auto q = poly::exact_divide(f5, prod, b);
        REQUIRE(q);
        CHECK(poly::mul(f5, *q, b) == prod);
    }
}

TEST_CASE("delta: transvection kernel facts and the shear scalar") {
    Fp f2(2);
    Mat shear = mat_from(2, {1, 0, 1, 1});
    std::vector<uint32_t> form{1, 0};  // x1
    // delta of the defining form vanishes for transvections
    CHECK(poly::delta(f2, shear, form, Poly::variable(2, 0)) == Poly::zero(2));
    // delta(x2) = 1
    CHECK(poly::delta(f2, shear, form, Poly::variable(2, 1)) == Poly::constant(f2, 2, 1));
}

TEST_CASE("delta identity sigma(f) = f + delta(f) x_rho on the fixture group") {
    Fp f2(2);
    auto G = grp::close_group(f2, 4, z2cubed_generators());
    auto census = grp::reflection_census(G);
    std::mt19937_64 rng(7);
    for (int it = 0; it < 25; ++it) {
        Poly f = random_poly(rng, f2, 4, 5);
        for (const auto& info : census.reflections) {
            Mat sigma = grp::reflection_matrix(f2, 4, info.direction, info.form);
            Poly d = poly::delta(f2, sigma, info.form, f);
            Poly rhs = poly::add(f2, f, poly::mul(f2, d, Poly::linear_form(f2, info.form)));
            CHECK(poly::act(f2, sigma, f) == rhs);
        }
        // invariant polynomials have delta = 0
        Poly inv = poly::transfer(G, f);
        for (const auto& info : census.reflections) {
            Mat sigma = grp::reflection_matrix(f2, 4, info.direction, info.form);
            CHECK(poly::delta(f2, sigma, info.form, inv) == Poly::zero(4));
        }
    }
}

TEST_CASE("transfer: trivial group, order-p transvection power sums") {
    Fp f2(2), f3(3);
    auto trivial = grp::close_group(f2, 2, {});
    Poly x2 = Poly::variable(2, 1);
    CHECK(poly::transfer(trivial, x2) == x2);

    // single transvection on GF(p)^2, f = x2^{p-1}: transfer = -x1^{p-1}
    auto T2 = grp::close_group(f2, 2, {mat_from(2, {1, 0, 1, 1})});
    CHECK(poly::transfer(T2, x2) == Poly::variable(2, 0));  // -x1 = x1 mod 2

    auto T3 = grp::close_group(f3, 2, {mat_from(2, {1, 0, 1, 1})});
    Poly f = Poly::variable(2, 1, 2);  // x2^2
    Poly want = poly::scale(f3, Poly::variable(2, 0, 2), 2);  // -x1^2 = 2 x1^2
    CHECK(poly::transfer(T3, f) == want);
}

TEST_CASE("transfer output is invariant; k[V]^G-linearity; non-modular projection") {
    Fp f3(3);
    Mat t = mat_from(3, {1, 0, 0, 0, 1, 0, 1, 0, 1});
    Mat h = mat_from(3, {1, 0, 0, 0, 2, 0, 0, 0, 1});
    auto G = grp::close_group(f3, 3, {t, h});
    std::mt19937_64 rng(19);
    for (int it = 0; it < 20; ++it) {
        Poly f = random_poly(rng, f3, 3, 4);
        Poly tr = poly::transfer(G, f);
        for (const auto& g : G.generators) CHECK(poly::act(f3, g, tr) == tr);
        // h invariant => Tr(h f) = h Tr(f)
        Poly hinv = poly::transfer(G, random_poly(rng, f3, 3, 3));
        CHECK(poly::transfer(G, poly::mul(f3, hinv, f)) == poly::mul(f3, hinv, tr));
    }
    // non-modular group: Tr(|G|^{-1} f) = f for invariant f
    auto D = grp::close_group(f3, 2, {mat_from(2, {1, 0, 0, 2})});
    for (int it = 0; it < 20; ++it) {
        Poly f = poly::transfer(D, random_poly(rng, f3, 2, 4));  // invariant
        Poly scaled = poly::scale(f3, f, f3.inv(static_cast<uint32_t>(D.order % 3)));
        CHECK(poly::transfer(D, scaled) == f);
    }
}

TEST_CASE("twisted_transfer: trivial character reduces to transfer; pinned value") {
    Fp f3(3);
    auto D = grp::close_group(f3, 2, {mat_from(2, {1, 0, 0, 2})});
    std::mt19937_64 rng(29);
    for (int it = 0; it < 10; ++it) {
        Poly f = random_poly(rng, f3, 2, 4);
        CHECK(poly::twisted_transfer(D, grp::trivial_character(D), f) == poly::transfer(D, f));
    }
    // chi(diag(1,2)) = 2, f = 2 x2: sum = 2 x2 + 2^{-1} * (2 * 2 x2) = x2
    grp::Character chi{std::vector<uint32_t>(D.elements.size(), 1)};
    for (uint32_t i = 0; i < D.elements.size(); ++i)
        if (!gf::is_identity(D.elements[i])) chi.values[i] = 2;
    Poly f = poly::scale(f3, Poly::variable(2, 1), 2);
    CHECK(poly::twisted_transfer(D, chi, f) == Poly::variable(2, 1));
    // k[V]^G-linearity of the twisted transfer
    for (int it = 0; it < 10; ++it) {
        Poly f2p = random_poly(rng, f3, 2, 3);
        Poly hinv = poly::transfer(D, random_poly(rng, f3, 2, 3));
        CHECK(poly::twisted_transfer(D, chi, poly::mul(f3, hinv, f2p)) ==
              poly::mul(f3, hinv, poly::twisted_transfer(D, chi, f2p)));
    }
}

TEST_CASE("orbit_norm: fixture norms N(x3) and N(x4)") {
    Fp f2(2);
    auto G = grp::close_group(f2, 4, z2cubed_generators());
    Poly x1 = Poly::variable(4, 0), x2 = Poly::variable(4, 1);
    Poly x3 = Poly::variable(4, 2), x4 = Poly::variable(4, 3);

    CHECK(poly::orbit_norm(G, x1) == x1);  // invariant form, orbit size 1

    // N(x3) = x3 (x3+x1)(x3+x2)(x3+x1+x2), expanded via plain poly products
    Poly want = x3;
    want = poly::mul(f2, want, poly::add(f2, x3, x1));
    want = poly::mul(f2, want, poly::add(f2, x3, x2));
    want = poly::mul(f2, want, poly::add(f2, x3, poly::add(f2, x1, x2)));
    Poly n3 = poly::orbit_norm(G, x3);
    CHECK(n3 == want);
    CHECK(n3.degree() == 4);
    Poly n4 = poly::orbit_norm(G, x4);
    Poly want4 = x4;
    want4 = poly::mul(f2, want4, poly::add(f2, x4, x1));
    want4 = poly::mul(f2, want4, poly::add(f2, x4, x2));
    want4 = poly::mul(f2, want4, poly::add(f2, x4, poly::add(f2, x1, x2)));
    CHECK(n4 == want4);
    for (const auto& g : G.generators) {
        CHECK(poly::act(f2, g, n3) == n3);
        CHECK(poly::act(f2, g, n4) == n4);
    }
}

TEST_CASE("action tables match per-monomial act() on every slice") {
    Fp f2(2), f3(3);
    for (int which = 0; which < 2; ++which) {
        const Fp& fp = which ? f3 : f2;
        grp::Group G = which ? grp::close_group(f3, 3,
                                                {mat_from(3, {1, 0, 0, 0, 1, 0, 1, 0, 1}),
                                                 mat_from(3, {1, 0, 0, 0, 2, 0, 0, 0, 1})})
                             : grp::close_group(f2, 4, z2cubed_generators());
        auto bases = std::make_shared<poly::BasisCache>(G.n);
        poly::ActionCache cache(G, bases);
        for (uint32_t d = 0; d <= 4; ++d) {
            const auto& mons = cache.mons(d);
            for (uint32_t e = 0; e < G.elements.size(); ++e) {
                const auto& tab = cache.table(e, d);
                std::vector<uint32_t> row(mons.size());
                for (uint32_t k = 0; k < mons.size(); ++k) {
                    tab.row_u32(k, row);
                    Poly direct = poly::act_with_inverse(
                        fp, G.inverse_of(e), Poly::monomial(fp, G.n, mons.mons[k], 1));
                    CHECK(bases->to_row(direct, d) == row);
                }
            }
        }
    }
}

TEST_CASE("monomial bases: counts, order, and coordinate round-trip") {
    poly::BasisCache bases(3);
    CHECK(bases.at(0).size() == 1);
    CHECK(bases.at(1).size() == 3);
    CHECK(bases.at(4).size() == 15);  // C(6,2)
    // descending grlex: x1^2 first at degree 2
    CHECK(bases.at(2).mons[0] == poly::Exps{2, 0, 0});
    CHECK(bases.at(2).mons[5] == poly::Exps{0, 0, 2});
    Fp f5(5);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 20; ++it) {
        Poly f(3);
        for (int t = 0; t < 4; ++t) {
            poly::Exps e(3);
            uint32_t budget = 3;
            for (int i = 0; i < 3; ++i) {
                e[i] = static_cast<poly::Exp>(rng() % (budget + 1));
                budget -= e[i];
            }
            e[2] = static_cast<poly::Exp>(e[2] + budget);
            f.add_term(f5, e, rng() % 5);
        }
        auto row = bases.to_row(f, 3);
        CHECK(bases.to_poly(f5, row, 3) == f);
    }
}

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coreg/group.hpp"
#include "coreg/invar.hpp"
#include "coreg/poly.hpp"

namespace coreg::diffr {

// Ramification exponent of one reflection hyperplane: the largest a with
// x_H^a dividing the chi^a-twisted transfer over the pointwise stabilizer of
// every polynomial, tested on all monomials up to test_bound. Maximality is
// certified by a concrete monomial failing at a + 1.
struct HyperplaneExponent {
    uint32_t a = 0;
    uint32_t test_bound = 0;
    uint32_t search_cap = 0;
    poly::Poly failing_monomial;  // witness for a + 1
};

HyperplaneExponent hyperplane_exponent(const grp::Group& G_H, std::span<const uint32_t> x_H,
                                       uint32_t test_bound = 0);

struct DifferentResult {
    std::vector<grp::Hyperplane> hyperplanes;
    std::vector<uint32_t> exponents;  // parallel to hyperplanes
    std::vector<uint32_t> stabilizer_orders;
    poly::Poly theta;
    grp::Character theta_character;
    uint32_t degree = 0;
    uint32_t test_bound = 0, search_cap = 0;
    // empirical observation a_H = |G_H| - 1, surfaced in reports
    bool exponents_match_stabilizer_orders = true;
    // split against a T x D decomposition when the group is one
    poly::Poly theta_T, theta_D;
};

// The different of an abelian group, assembled hyperplane-locally. For a
// group with no reflections theta = 1.
DifferentResult different(const grp::Group& G);

struct DspResult {
    bool holds = false;
    poly::Poly witness;  // theta-tilde with twisted_transfer(chi, witness) = theta
    uint32_t system_rank = 0, augmented_rank = 0, unknowns = 0;
};

// Direct summand property as a linear system in degree deg(theta).
DspResult dsp_check(invar::InvariantTable& table, const DifferentResult& diff);

// pi(f) = Tr(theta-tilde * f / theta), the invariant-ring-linear projection.
poly::Poly projection_apply(const grp::Group& G, const DifferentResult& diff,
                            const poly::Poly& witness, const poly::Poly& f);

struct TransferImageProfile {
    uint32_t mu = 0;
    bool principal = false;
    bool contains_unit = false;  // non-modular: the image contains 1
    poly::Poly generator;        // first minimal generator when principal
    std::vector<uint32_t> per_degree_dims;
    std::vector<uint32_t> gen_degrees;
    uint32_t bound = 0;
};

// Spans of transfers of monomials per degree, with the minimal-generator
// count taken over the invariant ring.
TransferImageProfile transfer_image_profile(invar::InvariantTable& table, uint32_t D);

}  // namespace coreg::diffr

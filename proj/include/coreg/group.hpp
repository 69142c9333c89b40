#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coreg/mat.hpp"
#include "coreg/subspace.hpp"

namespace coreg::grp {

// Finite matrix group held as its full element closure in breadth-first
// order; elements[0] is the identity. Immutable after construction.
struct Group {
    gf::Fp fp;
    uint32_t n = 0;
    std::vector<gf::Mat> generators;
    std::vector<gf::Mat> elements;
    uint64_t order = 0;
    bool is_abelian = false;
    bool is_p_group = false;
    std::vector<uint32_t> inverse_idx;

    Group(const gf::Fp& f, uint32_t dim) : fp(f), n(dim) {}

    uint32_t index_of(const gf::Mat& m) const;  // throws internal_fault if absent
    const gf::Mat& inverse_of(uint32_t idx) const { return elements[inverse_idx[idx]]; }
    bool is_modular() const { return order % fp.p == 0; }
};

inline constexpr uint64_t kDefaultElementCap = 1'000'000;

Group close_group(const gf::Fp& fp, uint32_t n, std::vector<gf::Mat> gens,
                  uint64_t element_cap = kDefaultElementCap);

enum class ElemKind { identity, transvection, homology, non_reflection };

// Data of a pseudo-reflection sigma: rank(sigma - 1) = 1 with
// sigma(v) - v = form(v) * direction. The form is scaled so its first nonzero
// coefficient is 1, which also pins the direction vector.
struct ReflectionInfo {
    ElemKind kind = ElemKind::non_reflection;
    std::vector<uint32_t> direction;  // e in V
    std::vector<uint32_t> form;       // x in V*, normalized
    gf::Subspace hyperplane;          // ker x = fixed space
    uint32_t eigenvalue = 1;          // 1 + x(e); != 1 exactly for homologies
};

struct Classification {
    ElemKind kind;
    std::optional<ReflectionInfo> refl;  // set iff kind is a reflection kind
};

Classification classify_element(const gf::Fp& fp, const gf::Mat& sigma);

// Rebuild sigma from its reflection data (v -> v + x(v) e).
gf::Mat reflection_matrix(const gf::Fp& fp, uint32_t n, std::span<const uint32_t> direction,
                          std::span<const uint32_t> form);

struct ReflectionCensus {
    std::vector<uint32_t> transvection_idx;  // indices into G.elements
    std::vector<uint32_t> homology_idx;
    std::vector<ReflectionInfo> reflections;  // parallel to concat(transv, homol) order below
    std::unordered_map<uint32_t, uint32_t> info_of_elem;  // element idx -> reflections idx
    bool is_reflection_group = false;
    Group T;  // subgroup generated by the transvections
    Group D;  // subgroup generated by the homologies
};

ReflectionCensus reflection_census(const Group& G);

// Multiplicative character of G with values in GF(p)*, tabulated on every
// element in element order.
struct Character {
    std::vector<uint32_t> values;
    bool is_trivial() const {
        for (uint32_t v : values)
            if (v != 1) return false;
        return true;
    }
};

Character trivial_character(const Group& G);
Character char_mul(const gf::Fp& fp, const Character& a, const Character& b);
Character char_pow(const gf::Fp& fp, const Character& a, uint64_t e);
Character char_inv(const gf::Fp& fp, const Character& a);

// A reflection hyperplane of an abelian group: its normalized linear form,
// the pointwise stabilizer G_H, and the character by which G scales the form.
struct Hyperplane {
    std::vector<uint32_t> form;
    std::vector<uint32_t> stabilizer_idx;  // element indices of G_H, sorted
    uint64_t stabilizer_order = 0;
    bool stabilizer_transvective = false;  // all non-identity stabilizer elements transvections
    Character character;
};

std::vector<Hyperplane> hyperplanes(const Group& G);

// The image of a linear form under sigma: (sigma . x)(v) = x(sigma^{-1} v),
// i.e. the coefficient row of x times sigma^{-1}.
std::vector<uint32_t> act_on_form(const gf::Fp& fp, const gf::Mat& sigma_inv,
                                  std::span<const uint32_t> form);

// G = T x D split of an abelian reflection group, with the fixed/moved
// decomposition V = V^D (+) V_D and the change of basis exhibiting it.
struct Decomposition {
    Group T, D;
    gf::Subspace fixed_D;  // V^D
    gf::Subspace moved_D;  // V_D
    gf::Mat adapted;       // columns: basis of V^D, then basis of V_D
};

Decomposition decompose(const Group& G);

// Matrices of those elements of G that leave the row span of basis_rows
// invariant, rewritten in that basis. Used for the T-action on V^D.
Group restrict_group(const Group& G, const std::vector<gf::Mat>& gens, const gf::Mat& basis_rows);

// Order of a single element.
uint32_t element_order(const gf::Fp& fp, const gf::Mat& m);

// V^G: common fixed space of all elements.
gf::Subspace fixed_space(const Group& G);

// Characteristic polynomial det(tI - A), monic, coefficients ascending.
std::vector<uint32_t> char_poly(const gf::Fp& fp, const gf::Mat& a);

}  // namespace coreg::grp

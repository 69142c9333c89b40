#pragma once

#include "coreg/mat.hpp"

namespace coreg::gf {

// Linear subspace of GF(p)^n held as its canonical reduced-echelon basis, so
// equality of subspaces is equality of the representation.
struct Subspace {
    uint32_t ambient = 0;
    Mat basis;  // RREF, one row per basis vector; 0 rows = zero subspace

    uint32_t dim() const { return basis.rows; }
    bool operator==(const Subspace& o) const = default;
};

Subspace span_rows(const Fp& fp, uint32_t ambient, const Mat& vectors);
Subspace zero_subspace(uint32_t ambient);
Subspace full_subspace(const Fp& fp, uint32_t ambient);

Subspace sum(const Fp& fp, const Subspace& u, const Subspace& w);
Subspace intersect(const Fp& fp, const Subspace& u, const Subspace& w);

// Annihilator under the standard pairing <u, x> = sum u_i x_i; an
// inclusion-reversing involution with dim U + dim perp(U) = n.
Subspace perp(const Fp& fp, const Subspace& u);

bool contains(const Fp& fp, const Subspace& u, const Subspace& w);        // w <= u
bool contains_vector(const Fp& fp, const Subspace& u, std::span<const uint32_t> v);

}  // namespace coreg::gf

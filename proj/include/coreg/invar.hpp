#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coreg/action.hpp"
#include "coreg/group.hpp"
#include "coreg/poly.hpp"
#include "coreg/subspace.hpp"

namespace coreg::invar {

// Basis of one graded slice of k[V]^G in monomial coordinates (RREF rows).
struct GradedBasis {
    uint32_t degree = 0;
    gf::Mat coords;
};

struct Generator {
    uint32_t degree = 0;
    poly::Poly f;
};

// Degree bound up to which modular invariant rings are generated.
inline uint32_t symonds_bound(const grp::Group& G) {
    uint64_t b = static_cast<uint64_t>(G.n) * (G.order - 1);
    if (G.order == 1) b = 1;
    return static_cast<uint32_t>(b);
}

// Per-degree data for one group, extended on demand: invariant slices,
// minimal algebra generators (graded Nakayama), and Hilbert-ideal slices with
// their minimal-generator counts. All verdicts derived from this table are
// valid up to the computed degree.
class InvariantTable {
public:
    explicit InvariantTable(const grp::Group& G);

    const grp::Group& group() const { return *G_; }
    poly::ActionCache& action() { return cache_; }
    poly::BasisCache& bases() { return *bases_; }

    void extend_to(uint32_t d);
    int computed() const { return computed_; }

    const GradedBasis& invariants(uint32_t d);
    uint32_t dim(uint32_t d);
    poly::Poly invariant_poly(uint32_t d, uint32_t i);
    std::vector<uint32_t> hilbert_series(uint32_t D);

    // Minimal algebra generators of k[V]^G found so far (complete up to
    // computed()).
    const std::vector<Generator>& generators() const { return gens_; }
    // Minimal generators of the Hilbert ideal found so far.
    const std::vector<Generator>& hilb_generators() const { return hilb_gens_; }
    uint32_t hilb_dim(uint32_t d) const { return degs_[d].hilb_dim; }
    uint32_t hilb_mu_at(uint32_t d) const { return degs_[d].mu_d; }

    // row_out accumulates coeff * (monomial t) * row over the degree-d
    // monomial basis; index maps are memoized.
    void promote_by_monomial(std::span<const uint32_t> row, uint32_t d_from, const poly::Exps& t,
                             uint32_t coeff, std::span<uint32_t> out);
    // out += coeff * (g * poly-of-row), g sparse.
    void promote_by_poly(std::span<const uint32_t> row, uint32_t d_from, const poly::Poly& g,
                         std::span<uint32_t> out);

private:
    void compute_next();

    const grp::Group* G_;
    std::shared_ptr<poly::BasisCache> bases_;
    poly::ActionCache cache_;
    std::vector<uint32_t> gen_elem_idx_;
    int computed_ = -1;

    struct Deg {
        GradedBasis inv;
        uint32_t hilb_dim = 0, mhilb_dim = 0, mu_d = 0;
        std::unique_ptr<gf::Echelon> hilb;  // released once no longer needed
    };
    std::vector<Deg> degs_;
    std::vector<Generator> gens_;
    std::vector<Generator> hilb_gens_;
    std::map<std::pair<uint32_t, poly::Exps>, std::vector<uint32_t>> promo_;
};

// Standalone spec operations (thin wrappers building a transient table).
GradedBasis invariant_basis(const grp::Group& G, uint32_t d);
std::vector<Generator> algebra_generators(const grp::Group& G, uint32_t D);

// Profile of a graded ideal: per-degree slice dimensions, minimal-generator
// count from graded Nakayama, and the complete-intersection verdict against
// the expected codimension. Every verdict is labeled with its degree bound;
// certified_complete records that the CI verdict is exact rather than merely
// valid at the bound (mu already exceeds the codimension, a regular-sequence
// certificate holds, or the generation bound was reached).
struct IdealProfile {
    std::vector<Generator> generators;
    std::vector<uint32_t> gen_degrees;
    std::vector<uint32_t> per_degree_dims;
    uint32_t mu = 0;
    uint32_t expected_codim = 0;
    bool is_complete_intersection = false;
    uint32_t bound = 0;
    bool certified_complete = false;
};

// Hilbert ideal of k[V] generated by all positive-degree invariants.
// The adaptive form extends degree by degree until the verdict is certified
// (mu > n, or mu = n with the quotient vanishing at sum(d_i - 1) + 1) or the
// ceiling is reached; ceiling 0 means the Symonds bound.
IdealProfile hilbert_ideal(InvariantTable& table, uint32_t D);
IdealProfile hilbert_ideal_adaptive(InvariantTable& table, uint32_t ceiling = 0);

// Relative Hilbert ideal for U inside V^G: the ideal of k[V] generated by the
// invariants lying in I(U), with CI measured against codim U.
IdealProfile relative_hilbert_ideal(InvariantTable& table, const gf::Subspace& U, uint32_t D);
IdealProfile relative_hilbert_ideal_adaptive(InvariantTable& table, const gf::Subspace& U,
                                             uint32_t ceiling = 0);

// Extend J to k[V], contract back to k[V]^G, and compare slice-wise.
struct ContractExtendResult {
    IdealProfile jec;            // profile of J^{ec} as an ideal of k[V]^G
    bool equal_up_to_bound = true;
    int first_divergence = -1;   // degree of the first strict inclusion
    poly::Poly new_generator;    // representative of J^{ec} mod J there
    uint32_t bound = 0;
};
ContractExtendResult contract_extend(InvariantTable& table, const std::vector<poly::Poly>& j_gens,
                                     uint32_t D);

struct CoregularityVerdict {
    bool coregular = false;
    std::string route;  // "hilbert-ideal-ci + dsp"
    std::vector<uint32_t> certificate_degrees;
    std::string failure_witness;  // empty when coregular
};

// Main criterion: coregular iff the Hilbert ideal is CI and the direct
// summand property holds. When coregular, cross-checks the certificate route
// (n generators, h.s.o.p., degree product = |G|, subalgebra exhausts the
// invariants) and faults if the routes disagree.
CoregularityVerdict decide_coregular(InvariantTable& table, const IdealProfile& hilb,
                                     bool dsp_holds);

// Checks the factorisation of the invariant ring over V = V^D (+) V_D:
// the Hilbert series of k[V]^G must equal the product of the factor series,
// and the non-modular factor's series must match the character-sum (Molien)
// count.
struct SeriesCheck {
    bool ok = false;
    int first_mismatch = -1;
    std::vector<uint32_t> series_G, series_T_on_fixed, series_D_on_moved, product;
    bool molien_ok = false;
    int molien_first_mismatch = -1;
    std::vector<uint32_t> molien_D;
};
SeriesCheck hilbert_series_checks(InvariantTable& table, const grp::Decomposition& dec,
                                  uint32_t D);

// Exact dimensions of (k[V]^D)_d for a diagonalizable non-modular group via
// the classical character sum, evaluated in the cyclotomic integers.
// candidate_eigenvalues must contain every eigenvalue of every element
// (e.g. the multiplicative closure of the generator eigenvalues).
std::vector<uint32_t> molien_series(const grp::Group& D,
                                    const std::vector<uint32_t>& candidate_eigenvalues,
                                    uint32_t Dmax);

}  // namespace coreg::invar

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coreg/diffr.hpp"
#include "coreg/group.hpp"
#include "coreg/invar.hpp"

namespace coreg::harness {

// Parsed group description: {"name", "p", "n", "generators": [[[int]]]},
// matrices acting on column vectors, entries reduced mod p on load.
struct GroupSpec {
    std::string name;
    uint32_t p = 0;
    uint32_t n = 0;
    std::vector<gf::Mat> generators;
};

GroupSpec parse_spec(const std::string& bytes);
GroupSpec load_spec_file(const std::string& path);
std::string spec_to_json(const GroupSpec& spec);

// The built-in regression fixture: the (Z/2Z)^3 transvection group on F_2^4.
GroupSpec builtin_example_spec();

struct Options {
    uint32_t degree_bound = 0;   // 0 = adaptive with certificates
    uint64_t element_cap = grp::kDefaultElementCap;
    uint32_t transfer_bound = 0;  // 0 = max(2 deg theta + 2, 4)
    uint32_t series_check_depth = 8;
    bool with_series_checks = true;
    bool with_transfer_image = true;
};

struct AnalysisReport {
    std::string name;
    uint32_t p = 0, n = 0;
    uint64_t order = 0;
    bool abelian = false, p_group = false, modular = false;
    bool out_of_theorem_scope = false;  // non-abelian input

    uint32_t transvections = 0, homologies = 0;
    bool is_reflection_group = false;
    uint64_t t_order = 0, d_order = 0;
    uint32_t dim_fixed_D = 0, dim_moved_D = 0;

    struct HyperplaneRow {
        std::string form;
        uint64_t stabilizer_order = 0;
        uint32_t exponent = 0;
        bool character_trivial = true;
    };
    std::vector<HyperplaneRow> hyperplanes;

    std::string theta;
    uint32_t theta_degree = 0;
    bool theta_character_trivial = true;
    bool exponents_match_stabilizer_orders = true;

    bool dsp_holds = false;
    std::string dsp_witness;  // empty when infeasible
    uint32_t dsp_rank = 0, dsp_augmented_rank = 0, dsp_unknowns = 0;

    std::vector<uint32_t> invariant_series;
    std::vector<uint32_t> generator_degrees;
    uint32_t generators_complete_to = 0;

    invar::IdealProfile hilb;
    invar::IdealProfile hilb_relative;  // U = V^G
    bool jec_equal = true;              // J = (V^G relative gens) extension test
    int jec_first_divergence = -1;
    std::string jec_new_generator;

    diffr::TransferImageProfile transfer_image;

    bool coregular = false;
    std::string coregular_route;
    std::string failure_witness;
    std::vector<uint32_t> certificate_degrees;

    bool series_check_ok = true;
    bool molien_check_ok = true;

    double seconds = 0.0;  // wall time; text output only, never serialized
};

AnalysisReport analyze(const GroupSpec& spec, const Options& opt = {});

std::string report_to_json(const AnalysisReport& r);  // stable key order
std::string report_to_text(const AnalysisReport& r);

// Census machinery -----------------------------------------------------------

struct CensusRow {
    std::string signature;
    GroupSpec spec;
    uint64_t order = 0;
    bool is_p_group = false;
    bool is_reflection_group = false;
    bool dsp = false;
    bool hilb_ci = false;
    bool coregular = false;
    bool transfer_principal = false;
    bool transfer_contains_unit = false;

    bool theorem_ok = false;    // coregular == (reflection && dsp)
    bool corollary_ok = true;   // p-groups: principal == coregular
};

enum class EnumMode { exhaustive, sampled };

// All abelian reflection subgroups up to signature dedup (exhaustive), or a
// seeded random sample of commuting reflection sets (sampled).
std::vector<GroupSpec> enumerate_abelian_reflection_groups(uint32_t n, uint32_t p,
                                                           uint64_t max_order, EnumMode mode,
                                                           uint64_t seed = 0, uint32_t count = 0);

struct TheoremVerification {
    std::vector<CensusRow> rows;
    uint32_t violations = 0;
    std::vector<std::string> violation_reports;  // full dumps for findings
};

TheoremVerification verify_theorem(const std::vector<GroupSpec>& batch, const Options& opt = {});

std::string census_to_json(const TheoremVerification& v);
std::string census_to_text(const TheoremVerification& v);

// cheap canonical signature: order + sorted per-element classification data
std::string group_signature(const grp::Group& G);

}  // namespace coreg::harness

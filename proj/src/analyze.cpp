#include <chrono>

#include "coreg/error.hpp"
#include "coreg/harness.hpp"

namespace coreg::harness {

AnalysisReport analyze(const GroupSpec& spec, const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    gf::Fp fp(spec.p);
    grp::Group G = grp::close_group(fp, spec.n, spec.generators, opt.element_cap);

    AnalysisReport r;
    r.name = spec.name;
    r.p = spec.p;
    r.n = spec.n;
    r.order = G.order;
    r.abelian = G.is_abelian;
    r.p_group = G.is_p_group;
    r.modular = G.is_modular();

    auto census = grp::reflection_census(G);
    r.transvections = static_cast<uint32_t>(census.transvection_idx.size());
    r.homologies = static_cast<uint32_t>(census.homology_idx.size());
    r.is_reflection_group = census.is_reflection_group;
    r.t_order = census.T.order;
    r.d_order = census.D.order;

    if (!G.is_abelian) {
        // the structure theory only covers abelian groups; report the census
        // facts and stop
        r.out_of_theorem_scope = true;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }

    auto diff = diffr::different(G);
    r.theta = poly::to_string(diff.theta);
    r.theta_degree = diff.degree;
    r.theta_character_trivial = diff.theta_character.is_trivial();
    r.exponents_match_stabilizer_orders = diff.exponents_match_stabilizer_orders;
    for (size_t i = 0; i < diff.hyperplanes.size(); ++i) {
        AnalysisReport::HyperplaneRow row;
        row.form = poly::to_string(
            poly::Poly::linear_form(fp, diff.hyperplanes[i].form));
        row.stabilizer_order = diff.hyperplanes[i].stabilizer_order;
        row.exponent = diff.exponents[i];
        row.character_trivial = diff.hyperplanes[i].character.is_trivial();
        r.hyperplanes.push_back(std::move(row));
    }

    invar::InvariantTable table(G);
    r.hilb = opt.degree_bound ? invar::hilbert_ideal(table, opt.degree_bound)
                              : invar::hilbert_ideal_adaptive(table);

    auto dsp = diffr::dsp_check(table, diff);
    r.dsp_holds = dsp.holds;
    r.dsp_rank = dsp.system_rank;
    r.dsp_augmented_rank = dsp.augmented_rank;
    r.dsp_unknowns = dsp.unknowns;
    if (dsp.holds) r.dsp_witness = poly::to_string(dsp.witness);

    gf::Subspace vg = grp::fixed_space(G);
    r.hilb_relative = opt.degree_bound
                          ? invar::relative_hilbert_ideal(table, vg, opt.degree_bound)
                          : invar::relative_hilbert_ideal_adaptive(table, vg);

    {
        std::vector<poly::Poly> jgens;
        for (const auto& g : r.hilb_relative.generators) jgens.push_back(g.f);
        uint32_t ce_bound = std::max<uint32_t>(4, r.hilb.bound);
        auto ce = invar::contract_extend(table, jgens, ce_bound);
        r.jec_equal = ce.equal_up_to_bound;
        r.jec_first_divergence = ce.first_divergence;
        if (!ce.new_generator.is_zero()) r.jec_new_generator = poly::to_string(ce.new_generator);
    }

    if (opt.with_transfer_image) {
        uint32_t tb = opt.transfer_bound ? opt.transfer_bound
                                         : std::max<uint32_t>(2 * diff.degree + 2, 4);
        r.transfer_image = diffr::transfer_image_profile(table, tb);
    }

    auto verdict = invar::decide_coregular(table, r.hilb, dsp.holds);
    r.coregular = verdict.coregular;
    r.coregular_route = verdict.route;
    r.failure_witness = verdict.failure_witness;
    r.certificate_degrees = verdict.certificate_degrees;

    r.invariant_series = table.hilbert_series(r.hilb.bound);
    for (const auto& g : table.generators()) r.generator_degrees.push_back(g.degree);
    r.generators_complete_to = static_cast<uint32_t>(table.computed());

    if (opt.with_series_checks && census.is_reflection_group) {
        auto dec = grp::decompose(G);
        r.dim_fixed_D = dec.fixed_D.dim();
        r.dim_moved_D = dec.moved_D.dim();
        auto chk = invar::hilbert_series_checks(table, dec, opt.series_check_depth);
        r.series_check_ok = chk.ok;
        r.molien_check_ok = chk.molien_ok;
        if (!chk.ok)
            throw internal_fault("analyze: Hilbert series factorisation failed at degree " +
                                 std::to_string(chk.first_mismatch));
        if (!chk.molien_ok)
            throw internal_fault("analyze: Molien cross-check failed at degree " +
                                 std::to_string(chk.molien_first_mismatch));
    }

    // internal consistency: coregular demands DSP and a CI Hilbert ideal
    if (r.coregular && !(r.dsp_holds && r.hilb.is_complete_intersection))
        throw internal_fault("analyze: inconsistent coregularity verdict");

    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace coreg::harness

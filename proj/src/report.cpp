#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "coreg/harness.hpp"

namespace coreg::harness {

using nlohmann::ordered_json;

namespace {
constexpr int kSchemaVersion = 1;

ordered_json profile_json(const invar::IdealProfile& p) {
    ordered_json j;
    j["mu"] = p.mu;
    j["generator_degrees"] = p.gen_degrees;
    j["expected_codim"] = p.expected_codim;
    j["complete_intersection"] = p.is_complete_intersection;
    j["bound"] = p.bound;
    j["verdict_certified"] = p.certified_complete;
    j["per_degree_dims"] = p.per_degree_dims;
    ordered_json gens = ordered_json::array();
    for (const auto& g : p.generators) gens.push_back(poly::to_string(g.f));
    j["generators"] = gens;
    return j;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }
}  // namespace

std::string report_to_json(const AnalysisReport& r) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = r.name;
    j["p"] = r.p;
    j["n"] = r.n;
    j["order"] = r.order;
    j["abelian"] = r.abelian;
    j["p_group"] = r.p_group;
    j["modular"] = r.modular;
    j["out_of_theorem_scope"] = r.out_of_theorem_scope;
    j["transvections"] = r.transvections;
    j["homologies"] = r.homologies;
    j["reflection_group"] = r.is_reflection_group;
    j["t_order"] = r.t_order;
    j["d_order"] = r.d_order;
    if (r.out_of_theorem_scope) return j.dump(2) + "\n";

    j["dim_fixed_D"] = r.dim_fixed_D;
    j["dim_moved_D"] = r.dim_moved_D;
    ordered_json hyps = ordered_json::array();
    for (const auto& h : r.hyperplanes) {
        ordered_json hj;
        hj["form"] = h.form;
        hj["stabilizer_order"] = h.stabilizer_order;
        hj["exponent"] = h.exponent;
        hj["character_trivial"] = h.character_trivial;
        hyps.push_back(hj);
    }
    j["hyperplanes"] = hyps;
    j["theta"] = r.theta;
    j["theta_degree"] = r.theta_degree;
    j["theta_character_trivial"] = r.theta_character_trivial;
    j["exponents_match_stabilizer_orders"] = r.exponents_match_stabilizer_orders;

    ordered_json dsp;
    dsp["holds"] = r.dsp_holds;
    dsp["witness"] = r.dsp_witness;
    dsp["system_rank"] = r.dsp_rank;
    dsp["augmented_rank"] = r.dsp_augmented_rank;
    dsp["unknowns"] = r.dsp_unknowns;
    j["dsp"] = dsp;

    j["invariant_series"] = r.invariant_series;
    j["generator_degrees"] = r.generator_degrees;
    j["generators_complete_to"] = r.generators_complete_to;
    j["hilbert_ideal"] = profile_json(r.hilb);
    j["relative_hilbert_ideal"] = profile_json(r.hilb_relative);

    ordered_json jec;
    jec["equal"] = r.jec_equal;
    jec["first_divergence"] = r.jec_first_divergence;
    jec["new_generator"] = r.jec_new_generator;
    j["contract_extend"] = jec;

    ordered_json tr;
    tr["mu"] = r.transfer_image.mu;
    tr["principal"] = r.transfer_image.principal;
    tr["contains_unit"] = r.transfer_image.contains_unit;
    tr["generator"] = poly::to_string(r.transfer_image.generator);
    tr["generator_degrees"] = r.transfer_image.gen_degrees;
    tr["per_degree_dims"] = r.transfer_image.per_degree_dims;
    tr["bound"] = r.transfer_image.bound;
    j["transfer_image"] = tr;

    ordered_json cg;
    cg["coregular"] = r.coregular;
    cg["route"] = r.coregular_route;
    cg["failure_witness"] = r.failure_witness;
    cg["certificate_degrees"] = r.certificate_degrees;
    j["coregularity"] = cg;

    j["series_factorisation_ok"] = r.series_check_ok;
    j["molien_check_ok"] = r.molien_check_ok;
    return j.dump(2) + "\n";
}

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << "group " << r.name << "  (p=" << r.p << ", n=" << r.n << ")\n";
    os << "  order " << r.order << (r.abelian ? ", abelian" : ", non-abelian")
       << (r.p_group ? ", p-group" : "") << (r.modular ? ", modular" : ", non-modular") << "\n";
    os << "  reflections: " << r.transvections << " transvections, " << r.homologies
       << " homologies; reflection group: " << yes_no(r.is_reflection_group) << "\n";
    os << "  T x D: |T| = " << r.t_order << ", |D| = " << r.d_order << "\n";
    if (r.out_of_theorem_scope) {
        os << "  non-abelian input: outside the scope of the theorem; census facts only\n";
        return os.str();
    }
    if (!r.hyperplanes.empty()) {
        os << "  hyperplanes (form, |G_H|, exponent):\n";
        for (const auto& h : r.hyperplanes)
            os << "    " << h.form << "  |G_H| = " << h.stabilizer_order << "  a_H = "
               << h.exponent << (h.character_trivial ? "" : "  (nontrivial character)") << "\n";
    }
    os << "  different theta = " << r.theta << "  (degree " << r.theta_degree << ", character "
       << (r.theta_character_trivial ? "trivial" : "nontrivial") << ")\n";
    if (!r.exponents_match_stabilizer_orders)
        os << "  NOTE: some exponent a_H differs from |G_H| - 1 (unexpected; see report)\n";
    os << "  direct summand property: " << yes_no(r.dsp_holds);
    if (r.dsp_holds)
        os << "  witness " << r.dsp_witness << "\n";
    else
        os << "  (rank " << r.dsp_rank << " vs augmented " << r.dsp_augmented_rank << " on "
           << r.dsp_unknowns << " unknowns)\n";
    os << "  invariant series:";
    for (uint32_t v : r.invariant_series) os << " " << v;
    os << "\n  minimal generator degrees:";
    for (uint32_t v : r.generator_degrees) os << " " << v;
    os << "  (complete to degree " << r.generators_complete_to << ")\n";
    os << "  Hilbert ideal: mu = " << r.hilb.mu << ", degrees";
    for (uint32_t v : r.hilb.gen_degrees) os << " " << v;
    os << ", CI: " << yes_no(r.hilb.is_complete_intersection) << " (bound " << r.hilb.bound
       << (r.hilb.certified_complete ? ", certified" : "") << ")\n";
    os << "  Hilbert ideal rel V^G: mu = " << r.hilb_relative.mu << ", degrees";
    for (uint32_t v : r.hilb_relative.gen_degrees) os << " " << v;
    os << ", CI: " << yes_no(r.hilb_relative.is_complete_intersection) << " (codim "
       << r.hilb_relative.expected_codim << ")\n";
    os << "  J = relative generators: J = J^ec up to bound: " << yes_no(r.jec_equal);
    if (!r.jec_equal)
        os << "  first divergence at degree " << r.jec_first_divergence << ", new generator "
           << r.jec_new_generator;
    os << "\n";
    os << "  transfer image: mu = " << r.transfer_image.mu
       << ", principal: " << yes_no(r.transfer_image.principal);
    if (r.transfer_image.contains_unit) os << " (contains a unit: non-modular transfer)";
    if (r.transfer_image.principal && !r.transfer_image.generator.is_zero())
        os << ", generator " << poly::to_string(r.transfer_image.generator);
    os << " (bound " << r.transfer_image.bound << ")\n";
    os << "  coregular: " << (r.coregular ? "YES" : "NO");
    if (r.coregular) {
        os << "  certificate degrees";
        for (uint32_t v : r.certificate_degrees) os << " " << v;
    } else {
        os << "  (failed: " << r.failure_witness << ")";
    }
    os << "\n";
    os << "  checks: series factorisation " << yes_no(r.series_check_ok) << ", Molien "
       << yes_no(r.molien_check_ok) << "\n";
    os << std::fixed << std::setprecision(3) << "  elapsed " << r.seconds << " s\n";
    return os.str();
}

std::string census_to_json(const TheoremVerification& v) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    ordered_json rows = ordered_json::array();
    for (const auto& row : v.rows) {
        ordered_json rj;
        rj["signature"] = row.signature;
        rj["name"] = row.spec.name;
        rj["p"] = row.spec.p;
        rj["n"] = row.spec.n;
        rj["order"] = row.order;
        rj["p_group"] = row.is_p_group;
        rj["reflection_group"] = row.is_reflection_group;
        rj["dsp"] = row.dsp;
        rj["hilbert_ideal_ci"] = row.hilb_ci;
        rj["coregular"] = row.coregular;
        rj["transfer_principal"] = row.transfer_principal;
        rj["transfer_contains_unit"] = row.transfer_contains_unit;
        rj["theorem_ok"] = row.theorem_ok;
        rj["corollary_ok"] = row.corollary_ok;
        rows.push_back(rj);
    }
    j["rows"] = rows;
    j["violations"] = v.violations;
    j["violation_reports"] = v.violation_reports;
    return j.dump(2) + "\n";
}

std::string census_to_text(const TheoremVerification& v) {
    std::ostringstream os;
    os << "order  p-grp  refl  dsp  hilbCI  coreg  trPrinc  thm  cor  signature...\n";
    for (const auto& row : v.rows) {
        os << std::setw(5) << row.order << "  " << std::setw(5) << yes_no(row.is_p_group) << "  "
           << std::setw(4) << yes_no(row.is_reflection_group) << "  " << std::setw(3)
           << yes_no(row.dsp) << "  " << std::setw(6) << yes_no(row.hilb_ci) << "  "
           << std::setw(5) << yes_no(row.coregular) << "  " << std::setw(7)
           << yes_no(row.transfer_principal) << "  " << std::setw(3) << yes_no(row.theorem_ok)
           << "  " << std::setw(3) << yes_no(row.corollary_ok) << "  " << row.spec.name << "\n";
    }
    os << v.rows.size() << " groups, " << v.violations << " violations\n";
    for (const auto& rep : v.violation_reports) os << "\nVIOLATION:\n" << rep;
    return os.str();
}

}  // namespace coreg::harness

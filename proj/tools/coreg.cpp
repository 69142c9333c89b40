// coreg: decide coregularity, the direct summand property, and reflection
// structure for finite abelian matrix groups over prime fields, exactly.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coreg/error.hpp"
#include "coreg/harness.hpp"

using namespace coreg;

namespace {

struct GlobalOpts {
    uint32_t degree_bound = 0;
    uint64_t element_cap = grp::kDefaultElementCap;
    std::string output = "text";
};

harness::Options make_options(const GlobalOpts& g) {
    harness::Options o;
    o.degree_bound = g.degree_bound;
    o.element_cap = g.element_cap;
    return o;
}

void print_report(const harness::AnalysisReport& rep, const GlobalOpts& g) {
    if (g.output == "json")
        std::cout << harness::report_to_json(rep);
    else
        std::cout << harness::report_to_text(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact coregularity / direct-summand analysis of abelian matrix groups over GF(p)"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--degree-bound", g.degree_bound,
                   "fixed degree bound for graded computations (0 = adaptive, certified)");
    app.add_option("--element-cap", g.element_cap, "maximum group order for closure");
    app.add_option("--output", g.output, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    std::string file;
    uint32_t max_degree = 0;

    auto* cmd_analyze = app.add_subcommand("analyze", "full analysis report for a group spec");
    cmd_analyze->add_option("file", file, "group spec JSON")->required();

    auto* cmd_diff = app.add_subcommand("different", "hyperplane exponents and theta");
    cmd_diff->add_option("file", file, "group spec JSON")->required();

    auto* cmd_dsp = app.add_subcommand("dsp", "direct summand property check");
    cmd_dsp->add_option("file", file, "group spec JSON")->required();

    auto* cmd_inv = app.add_subcommand("invariants", "invariant series and minimal generators");
    cmd_inv->add_option("file", file, "group spec JSON")->required();
    cmd_inv->add_option("--max-degree", max_degree, "compute invariants up to this degree");

    auto* cmd_tr = app.add_subcommand("transfer-image", "transfer image profile");
    cmd_tr->add_option("file", file, "group spec JSON")->required();

    uint32_t cen_n = 2, cen_p = 2, cen_count = 100;
    uint64_t cen_max_order = 16, cen_seed = 0;
    bool cen_sampled = false;
    auto* cmd_thm = app.add_subcommand("verify-theorem",
                                       "census of abelian reflection groups with both "
                                       "biconditionals checked per row");
    cmd_thm->add_option("--n", cen_n, "dimension")->required();
    cmd_thm->add_option("--p", cen_p, "prime")->required();
    cmd_thm->add_option("--max-order", cen_max_order, "largest group order")->required();
    cmd_thm->add_flag("--sampled", cen_sampled, "seeded random sampling instead of exhaustion");
    cmd_thm->add_option("--seed", cen_seed, "sampling seed");
    cmd_thm->add_option("--count", cen_count, "number of sampled groups");

    auto* cmd_ex = app.add_subcommand("paper-example", "analyze the built-in regression fixture");

    CLI11_PARSE(app, argc, argv);

    try {
        harness::Options opt = make_options(g);
        if (*cmd_analyze) {
            print_report(harness::analyze(harness::load_spec_file(file), opt), g);
        } else if (*cmd_ex) {
            print_report(harness::analyze(harness::builtin_example_spec(), opt), g);
        } else if (*cmd_diff || *cmd_dsp || *cmd_inv || *cmd_tr) {
            if (*cmd_inv && max_degree) opt.degree_bound = max_degree;
            harness::AnalysisReport rep = harness::analyze(harness::load_spec_file(file), opt);
            if (g.output == "json") {
                std::cout << harness::report_to_json(rep);
            } else if (*cmd_diff) {
                std::cout << "theta = " << rep.theta << "  (degree " << rep.theta_degree << ")\n";
                for (const auto& h : rep.hyperplanes)
                    std::cout << "  " << h.form << "  |G_H| = " << h.stabilizer_order
                              << "  a_H = " << h.exponent << "\n";
            } else if (*cmd_dsp) {
                std::cout << "dsp: " << (rep.dsp_holds ? "holds" : "infeasible");
                if (rep.dsp_holds)
                    std::cout << "  witness " << rep.dsp_witness << "\n";
                else
                    std::cout << "  (rank " << rep.dsp_rank << " vs augmented "
                              << rep.dsp_augmented_rank << ")\n";
            } else if (*cmd_inv) {
                std::cout << "series:";
                for (uint32_t v : rep.invariant_series) std::cout << " " << v;
                std::cout << "\nminimal generator degrees:";
                for (uint32_t v : rep.generator_degrees) std::cout << " " << v;
                std::cout << "  (complete to degree " << rep.generators_complete_to << ")\n";
            } else {
                std::cout << "transfer image: mu = " << rep.transfer_image.mu << ", principal: "
                          << (rep.transfer_image.principal ? "yes" : "no") << " (bound "
                          << rep.transfer_image.bound << ")\n";
            }
        } else if (*cmd_thm) {
            auto batch = harness::enumerate_abelian_reflection_groups(
                cen_n, cen_p, cen_max_order,
                cen_sampled ? harness::EnumMode::sampled : harness::EnumMode::exhaustive, cen_seed,
                cen_count);
            auto verification = harness::verify_theorem(batch, opt);
            if (g.output == "json")
                std::cout << harness::census_to_json(verification);
            else
                std::cout << harness::census_to_text(verification);
            if (verification.violations) return 2;
        }
    } catch (const internal_fault& e) {
        std::cerr << "internal consistency fault: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal consistency fault: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "coreg/error.hpp"
#include "coreg/harness.hpp"

using namespace coreg;
using harness::GroupSpec;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file ", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string run_cli(const std::string& args) {
    std::string cmd = std::string(COREG_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    return out;
}
}  // namespace

TEST_CASE("parse_spec: shipped fixture file") {
    auto spec = harness::load_spec_file(std::string(COREG_SOURCE_DIR) +
                                        "/fixtures/paper_example.json");
    CHECK(spec.p == 2);
    CHECK(spec.n == 4);
    CHECK(spec.generators.size() == 3);
    // identical to the built-in fixture
    auto builtin = harness::builtin_example_spec();
    CHECK(spec.generators == builtin.generators);
}

TEST_CASE("parse_spec: validation errors carry locations") {
    CHECK_THROWS_AS(harness::parse_spec("not json"), input_error);
    CHECK_THROWS_AS(harness::parse_spec(R"({"p": 4, "n": 2, "generators": []})"), input_error);
    CHECK_THROWS_AS(harness::parse_spec(R"({"p": 2, "n": 0, "generators": []})"), input_error);
    // empty generator list is a valid trivial-group spec
    auto trivial = harness::parse_spec(R"({"name": "t", "p": 2, "n": 3, "generators": []})");
    CHECK(trivial.generators.empty());
    // zero row => singular
    try {
        harness::parse_spec(R"({"p": 2, "n": 2, "generators": [[[1, 1], [0, 0]]]})");
        FAIL("expected singular-generator rejection");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("singular") != std::string::npos);
    }
    // entries reduced mod p, negatives included
    auto neg = harness::parse_spec(R"({"p": 3, "n": 1, "generators": [[[-1]]]})");
    CHECK(neg.generators[0].at(0, 0) == 2);
}

TEST_CASE("analyze: fixture report carries all pinned values") {
    auto rep = harness::analyze(harness::builtin_example_spec());
    CHECK(rep.order == 8);
    CHECK(rep.abelian);
    CHECK(rep.transvections == 3);
    CHECK(rep.theta == "x1^2*x2 + x1*x2^2");
    CHECK(!rep.dsp_holds);
    CHECK(rep.generator_degrees == std::vector<uint32_t>{1, 1, 3, 4, 4});
    CHECK(rep.hilb.gen_degrees == std::vector<uint32_t>{1, 1, 4, 4});
    CHECK(rep.hilb.is_complete_intersection);
    CHECK(rep.hilb_relative.gen_degrees == std::vector<uint32_t>{1, 1});
    CHECK(rep.hilb_relative.is_complete_intersection);
    CHECK(!rep.jec_equal);
    CHECK(rep.jec_first_divergence == 3);
    CHECK(!rep.coregular);
    CHECK(!rep.transfer_image.principal);
}

TEST_CASE("analyze: trivial group and non-abelian input") {
    GroupSpec trivial;
    trivial.name = "trivial";
    trivial.p = 5;
    trivial.n = 2;
    auto rep = harness::analyze(trivial);
    CHECK(rep.coregular);
    CHECK(rep.dsp_holds);
    CHECK(rep.theta == "1");
    CHECK(rep.certificate_degrees == std::vector<uint32_t>{1, 1});

    // GL_2(F_2): non-abelian input degrades to census facts
    GroupSpec gl;
    gl.p = 2;
    gl.n = 2;
    gl.generators.resize(2, gf::Mat(2, 2));
    gl.generators[0].a = {1, 0, 1, 1};
    gl.generators[1].a = {1, 1, 0, 1};
    auto rep2 = harness::analyze(gl);
    CHECK(rep2.out_of_theorem_scope);
    CHECK(!rep2.abelian);
    CHECK(rep2.order == 6);
}

TEST_CASE("golden file: paper-example JSON report is byte-stable") {
    auto rep = harness::analyze(harness::builtin_example_spec());
    std::string got = harness::report_to_json(rep);
    std::string want = slurp(std::string(COREG_SOURCE_DIR) +
                             "/tests/golden/paper_example_report.json");
    CHECK(got == want);
}

TEST_CASE("enumerate: n=1 cyclic groups are all coregular") {
    for (uint32_t p : {3u, 5u}) {
        auto batch = harness::enumerate_abelian_reflection_groups(1, p, 16,
                                                                  harness::EnumMode::exhaustive);
        CHECK(batch.size() >= 2);  // trivial plus at least one scalar group
        auto v = harness::verify_theorem(batch);
        CHECK(v.violations == 0);
        for (const auto& row : v.rows) CHECK(row.coregular);
    }
}

TEST_CASE("enumerate: n=2 p=2 exhaustive finds the transvection group") {
    auto batch = harness::enumerate_abelian_reflection_groups(2, 2, 8,
                                                              harness::EnumMode::exhaustive);
    bool found_order2 = false;
    for (const auto& s : batch) {
        gf::Fp fp(s.p);
        auto G = grp::close_group(fp, s.n, s.generators);
        if (G.order == 2) found_order2 = true;
        CHECK(G.is_abelian);
    }
    CHECK(found_order2);
}

TEST_CASE("enumerate: sampled mode is reproducible for a fixed seed") {
    auto a = harness::enumerate_abelian_reflection_groups(3, 2, 16, harness::EnumMode::sampled,
                                                          7, 25);
    auto b = harness::enumerate_abelian_reflection_groups(3, 2, 16, harness::EnumMode::sampled,
                                                          7, 25);
    REQUIRE(a.size() == b.size());
    CHECK(a.size() == 25);
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].generators == b[i].generators);
}

TEST_CASE("verify_theorem: fixture row and -I row have consistent verdicts") {
    std::vector<GroupSpec> batch{harness::builtin_example_spec()};
    GroupSpec minus;
    minus.name = "minus-identity-gl2-f5";
    minus.p = 5;
    minus.n = 2;
    minus.generators.resize(1, gf::Mat(2, 2));
    minus.generators[0].a = {4, 0, 0, 4};
    batch.push_back(minus);

    auto v = harness::verify_theorem(batch);
    CHECK(v.violations == 0);
    REQUIRE(v.rows.size() == 2);
    const auto& fx = v.rows[0];
    CHECK(fx.is_reflection_group);
    CHECK(!fx.dsp);
    CHECK(!fx.coregular);
    CHECK(fx.theorem_ok);
    CHECK(fx.is_p_group);
    CHECK(!fx.transfer_principal);
    CHECK(fx.corollary_ok);
    const auto& mi = v.rows[1];
    CHECK(!mi.is_reflection_group);
    CHECK(mi.dsp);  // non-modular
    CHECK(!mi.coregular);
    CHECK(mi.theorem_ok);
}

TEST_CASE("verify_theorem: a doctored inconsistent row is reported, not crashed") {
    // feed a row checker a fabricated inconsistency through the public
    // structures to pin the finding semantics
    harness::CensusRow row;
    row.coregular = true;
    row.is_reflection_group = false;
    row.dsp = true;
    row.theorem_ok = (row.coregular == (row.is_reflection_group && row.dsp));
    CHECK(!row.theorem_ok);
}

TEST_CASE("CLI: exit codes and byte-identical repeated census runs") {
    std::string out1 = run_cli("--output json verify-theorem --n 2 --p 2 --max-order 8 "
                               "--sampled --seed 42 --count 20");
    std::string out2 = run_cli("--output json verify-theorem --n 2 --p 2 --max-order 8 "
                               "--sampled --seed 42 --count 20");
    CHECK(!out1.empty());
    CHECK(out1 == out2);

    std::string text = run_cli("paper-example");
    CHECK(text.find("coregular: NO") != std::string::npos);

    // usage error -> exit 1
    int rc = std::system((std::string(COREG_CLI_PATH) + " analyze /nonexistent.json "
                          ">/dev/null 2>&1")
                             .c_str());
    CHECK(WEXITSTATUS(rc) == 1);
    int rc2 = std::system((std::string(COREG_CLI_PATH) + " >/dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc2) != 0);
}

TEST_CASE("CLI: subcommand surfaces") {
    std::string fix = std::string(COREG_SOURCE_DIR) + "/fixtures/paper_example.json";
    CHECK(run_cli("different " + fix).find("theta = x1^2*x2 + x1*x2^2") != std::string::npos);
    CHECK(run_cli("dsp " + fix).find("infeasible") != std::string::npos);
    CHECK(run_cli("invariants " + fix + " --max-degree 5").find("1 1 3 4 4") !=
          std::string::npos);
    CHECK(run_cli("transfer-image " + fix).find("principal: no") != std::string::npos);
}

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coreg/error.hpp"
#include "coreg/harness.hpp"

namespace coreg::harness {

using nlohmann::ordered_json;

GroupSpec parse_spec(const std::string& bytes) {
    ordered_json j;
    try {
        j = ordered_json::parse(bytes);
    } catch (const std::exception& e) {
        throw input_error(std::string("spec parse: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw input_error("spec parse: top level must be an object");
    GroupSpec spec;
    if (!j.contains("p") || !j["p"].is_number_integer())
        throw input_error("spec parse: missing integer field \"p\"");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw input_error("spec parse: missing integer field \"n\"");
    spec.name = j.value("name", "unnamed");
    long long p = j["p"].get<long long>();
    long long n = j["n"].get<long long>();
    if (p < 2 || p >= (1ll << 31) || !gf::Fp::is_prime(static_cast<uint32_t>(p)))
        throw input_error("spec parse: p = " + std::to_string(p) + " is not a prime in range");
    if (n < 1 || n > 64) throw input_error("spec parse: n = " + std::to_string(n) + " out of range");
    spec.p = static_cast<uint32_t>(p);
    spec.n = static_cast<uint32_t>(n);
    gf::Fp fp(spec.p);

    if (!j.contains("generators") || !j["generators"].is_array())
        throw input_error("spec parse: missing array field \"generators\"");
    uint32_t gi = 0;
    for (const auto& mat : j["generators"]) {
        std::string where = "generators[" + std::to_string(gi) + "]";
        if (!mat.is_array() || mat.size() != spec.n)
            throw input_error("spec parse: " + where + " must be an " + std::to_string(spec.n) +
                              "-row matrix");
        gf::Mat m(spec.n, spec.n);
        for (uint32_t r = 0; r < spec.n; ++r) {
            const auto& row = mat[r];
            if (!row.is_array() || row.size() != spec.n)
                throw input_error("spec parse: " + where + "[" + std::to_string(r) +
                                  "] must have " + std::to_string(spec.n) + " entries");
            for (uint32_t c = 0; c < spec.n; ++c) {
                if (!row[c].is_number_integer())
                    throw input_error("spec parse: " + where + "[" + std::to_string(r) + "][" +
                                      std::to_string(c) + "] is not an integer");
                m.at(r, c) = fp.reduce_int(row[c].get<long long>());
            }
        }
        if (!gf::inverse(fp, m))
            throw input_error("spec parse: singular generator at " + where);
        spec.generators.push_back(std::move(m));
        ++gi;
    }
    return spec;
}

GroupSpec load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

std::string spec_to_json(const GroupSpec& spec) {
    ordered_json j;
    j["name"] = spec.name;
    j["p"] = spec.p;
    j["n"] = spec.n;
    ordered_json gens = ordered_json::array();
    for (const auto& m : spec.generators) {
        ordered_json mat = ordered_json::array();
        for (uint32_t r = 0; r < m.rows; ++r) {
            ordered_json row = ordered_json::array();
            for (uint32_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
            mat.push_back(row);
        }
        gens.push_back(mat);
    }
    j["generators"] = gens;
    return j.dump(2) + "\n";
}

GroupSpec builtin_example_spec() {
    GroupSpec spec;
    spec.name = "z2cubed-on-f2^4";
    spec.p = 2;
    spec.n = 4;
    auto mk = [](std::initializer_list<uint32_t> v) {
        gf::Mat m(4, 4);
        std::copy(v.begin(), v.end(), m.a.begin());
        return m;
    };
    spec.generators = {
        mk({1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1}),
        mk({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1}),
        mk({1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 1, 1, 0, 1}),
    };
    return spec;
}

}  // namespace coreg::harness

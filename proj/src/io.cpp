#include "nlskp/io.hpp"

#include "nlskp/errors.hpp"

#include <fstream>
#include <vector>

namespace nlskp {

namespace {

double number_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        throw InputError(std::string("missing field '") + key + "'");
    }
    if (!j.at(key).is_number()) {
        throw InputError(std::string("field '") + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

Vector number_array(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw InputError(std::string("field '") + key + "' must be an array of numbers");
    }
    std::vector<double> v;
    for (const auto& x : j.at(key)) {
        if (!x.is_number()) {
            throw InputError(std::string("field '") + key + "' must contain only numbers");
        }
        v.push_back(x.get<double>());
    }
    return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

}  // namespace

CadlagPath path_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw InputError("path must be an object with 'times' and 'values'");
    }
    return CadlagPath(TimeGrid(number_array(j, "times")), number_array(j, "values"));
}

nlohmann::json path_to_json(const CadlagPath& path) {
    const Vector& t = path.grid().times();
    const Vector& v = path.values();
    return {{"times", std::vector<double>(t.data(), t.data() + t.size())},
            {"values", std::vector<double>(v.data(), v.data() + v.size())}};
}

BoundaryFunction boundary_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) {
        throw InputError("boundary must be a JSON object");
    }
    if (!j.contains("family") || !j.at("family").is_string()) {
        throw InputError("boundary needs a string field 'family'");
    }
    if (!j.contains("offset") || !j.at("offset").is_object()) {
        throw InputError("boundary needs an object field 'offset'");
    }
    const auto& off = j.at("offset");
    CadlagPath offset;
    if (off.contains("const")) {
        offset = CadlagPath::constant(number_field(off, "const"));
    } else if (off.contains("file")) {
        if (!off.at("file").is_string()) {
            throw InputError("offset 'file' must be a string");
        }
        std::filesystem::path file = off.at("file").get<std::string>();
        if (file.is_relative() && !base_dir.empty()) {
            file = base_dir / file;
        }
        offset = read_path_csv_file(file.string());
    } else if (off.contains("times")) {
        offset = path_from_json(off);
    } else {
        throw InputError("offset must be {\"const\":x}, {\"file\":...} or {\"times\":[...],\"values\":[...]}");
    }

    const std::string family = j.at("family").get<std::string>();
    if (family == "linear") {
        return BoundaryFunction::linear(std::move(offset));
    }
    if (family == "scaled") {
        return BoundaryFunction::scaled(number_field(j, "a"), std::move(offset));
    }
    if (family == "sine") {
        return BoundaryFunction::sine(number_field(j, "eps"), number_field(j, "omega"), std::move(offset));
    }
    throw InputError("unknown boundary family '" + family + "'");
}

nlohmann::json boundary_to_json(const BoundaryFunction& g) {
    nlohmann::json j;
    j["family"] = to_string(g.family());
    if (g.offset().size() == 1) {
        j["offset"] = {{"const", g.offset()[0]}};
    } else {
        j["offset"] = path_to_json(g.offset());
    }
    if (g.family() == Family::Scaled) {
        j["a"] = g.scale();
    }
    if (g.family() == Family::Sine) {
        j["eps"] = g.eps();
        j["omega"] = g.omega();
    }
    return j;
}

BoundaryPair pair_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir, const Tolerances& tol) {
    if (!j.is_object() || !j.contains("L") || !j.contains("R")) {
        throw InputError("pair JSON needs fields 'L' and 'R'");
    }
    return BoundaryPair(boundary_from_json(j.at("L"), base_dir), boundary_from_json(j.at("R"), base_dir), tol);
}

BoundaryPair load_pair_file(const std::string& filename, const Tolerances& tol) {
    return pair_from_json(read_json_file(filename), std::filesystem::path(filename).parent_path(), tol);
}

nlohmann::json pair_to_json(const BoundaryPair& pair) {
    return {{"L", boundary_to_json(pair.L())}, {"R", boundary_to_json(pair.R())}};
}

GenSpec genspec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw InputError("GenSpec must be a JSON object");
    }
    GenSpec spec;
    try {
        if (j.contains("kind")) {
            spec.kind = parse_path_kind(j.at("kind").get<std::string>());
        }
        if (j.contains("seed")) {
            spec.seed = j.at("seed").get<std::uint64_t>();
        }
        if (j.contains("n")) {
            spec.n = j.at("n").get<Index>();
        }
        auto read = [&](const char* key, double& field) {
            if (j.contains(key)) {
                field = number_field(j, key);
            }
        };
        read("horizon", spec.horizon);
        read("volatility", spec.params.volatility);
        read("intensity", spec.params.intensity);
        read("jump_scale", spec.params.jump_scale);
        read("amplitude", spec.params.amplitude);
        read("period", spec.params.period);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("GenSpec: ") + e.what());
    }
    return spec;
}

nlohmann::json genspec_to_json(const GenSpec& spec) {
    return {{"kind", to_string(spec.kind)},
            {"seed", spec.seed},
            {"n", spec.n},
            {"horizon", spec.horizon},
            {"volatility", spec.params.volatility},
            {"intensity", spec.params.intensity},
            {"jump_scale", spec.params.jump_scale},
            {"amplitude", spec.params.amplitude},
            {"period", spec.params.period}};
}

nlohmann::json read_json_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) {
        throw InputError("cannot open '" + filename + "'");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("'" + filename + "': " + e.what());
    }
}

}  // namespace nlskp

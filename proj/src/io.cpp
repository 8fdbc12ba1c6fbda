#include "gentess/io.hpp"

#include <fstream>

#include "gentess/errors.hpp"

namespace gentess {

using nlohmann::json;

namespace {

double number(const json& params, const char* key) {
    if (!params.contains(key)) throw InvalidParameter(std::string("missing parameter '") + key + "'");
    const json& v = params.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
    throw InvalidParameter(std::string("parameter '") + key + "' is not a number");
}

int integer(const json& params, const char* key) {
    const double d = number(params, key);
    if (d != static_cast<int>(d)) throw InvalidParameter(std::string("parameter '") + key + "' must be an integer");
    return static_cast<int>(d);
}

Rational coordinate(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number()) return parse_rational(v.dump());
    throw InvalidParameter("coordinate is neither a string nor a number");
}

} // namespace

json generator_to_json(const GeneratorPair& gen) {
    json params = json::object();
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, TwoExponentials>) {
                params["lambda1"] = g.lambda1;
                params["lambda2"] = g.lambda2;
            } else if constexpr (std::is_same_v<T, ExpTimesLinear>) {
                params["lambda"] = g.lambda;
            } else if constexpr (std::is_same_v<T, ExpTrig>) {
                params["alpha"] = g.alpha;
                params["beta"] = g.beta;
            } else if constexpr (std::is_same_v<T, PowerPair>) {
                params["m0"] = g.m0;
                params["m1"] = g.m1;
            }
        },
        gen.variant());
    return {{"kind", gen.kind_name()}, {"params", params}};
}

GeneratorPair generator_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw InvalidParameter("generator pair needs a string 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    const json params = j.value("params", json::object());
    if (!params.is_object()) throw InvalidParameter("generator 'params' must be an object");
    if (kind == "two_exponentials")
        return GeneratorPair(TwoExponentials{number(params, "lambda1"), number(params, "lambda2")});
    if (kind == "exp_times_linear") return GeneratorPair(ExpTimesLinear{number(params, "lambda")});
    if (kind == "exp_trig")
        return GeneratorPair(ExpTrig{number(params, "alpha"), number(params, "beta")});
    if (kind == "power_pair")
        return GeneratorPair(PowerPair{integer(params, "m0"), integer(params, "m1")});
    if (kind == "polynomial") return GeneratorPair(PolynomialDegenerate{});
    throw InvalidParameter("unknown generator kind '" + kind +
                           "' (known: two_exponentials, exp_times_linear, exp_trig, "
                           "power_pair, polynomial)");
}

json family_to_json(const SectionFamily& f) {
    json j = generator_to_json(f.gen);
    j["n"] = f.n;
    return j;
}

SectionFamily family_from_json(const json& j) {
    SectionFamily f;
    f.gen = generator_from_json(j);
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw InvalidParameter("section needs an integer order 'n'");
    f.n = j.at("n").get<int>();
    if (f.n < 3) throw InvalidParameter("section order n must be at least 3");
    return f;
}

MeshDocument mesh_document_from_json(const json& j) {
    if (!j.is_object() || !j.contains("cells") || !j.at("cells").is_array())
        throw MeshError("mesh document needs a 'cells' array", {});
    MeshDocument doc;
    int id = 0;
    for (const auto& c : j.at("cells")) {
        if (!c.is_array() || c.size() != 4)
            throw MeshError("cell " + std::to_string(id) + " is not [a, b, c, d]", {id});
        try {
            doc.cells.push_back({coordinate(c[0]), coordinate(c[1]), coordinate(c[2]), coordinate(c[3])});
        } catch (const InvalidParameter& e) {
            throw MeshError("cell " + std::to_string(id) + ": " + e.what(), {id});
        }
        ++id;
    }
    if (j.contains("sections")) {
        const json& s = j.at("sections");
        if (!s.is_object() || !s.contains("s") || !s.contains("t"))
            throw InvalidParameter("'sections' needs both 's' and 't'");
        doc.s = family_from_json(s.at("s"));
        doc.t = family_from_json(s.at("t"));
    }
    if (j.contains("smoothness")) {
        const json& r = j.at("smoothness");
        if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
            throw InvalidParameter("'smoothness' must be [r1, r2]");
        doc.smoothness = std::make_pair(r[0].get<int>(), r[1].get<int>());
    }
    return doc;
}

json mesh_document_to_json(const MeshDocument& doc) {
    json cells = json::array();
    for (const auto& b : doc.cells)
        cells.push_back({to_string(b.a), to_string(b.b), to_string(b.c), to_string(b.d)});
    json j = {{"cells", cells}};
    if (doc.s && doc.t) j["sections"] = {{"s", family_to_json(*doc.s)}, {"t", family_to_json(*doc.t)}};
    if (doc.smoothness) j["smoothness"] = {doc.smoothness->first, doc.smoothness->second};
    return j;
}

MeshDocument read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open mesh file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw MeshError("mesh file '" + path + "' is not valid JSON: " + e.what(), {});
    }
    return mesh_document_from_json(j);
}

void write_mesh_file(const std::string& path, const MeshDocument& doc) {
    std::ofstream out(path);
    if (!out) throw InvalidParameter("cannot write '" + path + "'");
    out << mesh_document_to_json(doc).dump(2) << '\n';
}

TMesh load_mesh(const json& j) { return TMesh(mesh_document_from_json(j).cells); }

} // namespace gentess

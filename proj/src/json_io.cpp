#include "teich/json_io.hpp"

#include <string>

namespace teich::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("json: " + what); }

template <class T>
T get(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        bad(std::string("field '") + key + "': " + e.what());
    }
}

Incidence incidence_from(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        bad("incidence must be [triangle, slot]");
    return {j[0].get<int>(), j[1].get<int>()};
}

Rational rational_from(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    bad("rational must be a \"p/q\" string or an integer");
}

int index_key(const std::string& key) {
    std::size_t pos = 0;
    int v = -1;
    try {
        v = std::stoi(key, &pos);
    } catch (const std::exception&) {
        bad("key '" + key + "' is not an id");
    }
    if (pos != key.size() || v < 0) bad("key '" + key + "' is not an id");
    return v;
}

}  // namespace

Json to_json(const DecoratedTriangulation& dit) {
    Json j;
    j["genus"] = dit.genus();
    j["punctures"] = dit.puncture_count();
    Json tris = Json::array();
    for (TriangleId t = 0; t < dit.triangle_count(); ++t) {
        const auto& tri = dit.triangle(t);
        tris.push_back({{"id", t}, {"slots", tri.edges}, {"corners", tri.corners}});
    }
    j["triangles"] = tris;
    Json gluing = Json::array();
    for (const auto& s : dit.all_sides())
        gluing.push_back(Json::array({Json::array({s[0].tri, s[0].slot}), Json::array({s[1].tri, s[1].slot})}));
    j["gluing"] = gluing;
    Json flags = Json::array();
    for (bool b : dit.reembedded_flags()) flags.push_back(b);
    j["reembedded"] = flags;
    return j;
}

DecoratedTriangulation triangulation_from_json(const Json& j) {
    const auto tris = get<Json>(j, "triangles");
    const auto gluing = get<Json>(j, "gluing");
    if (!tris.is_array() || !gluing.is_array()) bad("triangles and gluing must be arrays");
    std::vector<std::pair<Incidence, Incidence>> pairs;
    for (const auto& g : gluing) {
        if (!g.is_array() || g.size() != 2) bad("gluing entries must be pairs");
        pairs.emplace_back(incidence_from(g[0]), incidence_from(g[1]));
    }
    std::vector<Triangle> triangles(tris.size());
    bool have_corners = true;
    for (const auto& t : tris) {
        const int id = get<int>(t, "id");
        if (id < 0 || id >= static_cast<int>(tris.size())) bad("triangle id out of range");
        triangles[id].edges = get<std::array<EdgeId, 3>>(t, "slots");
        if (t.contains("corners"))
            triangles[id].corners = get<std::array<PunctureId, 3>>(t, "corners");
        else
            have_corners = false;
    }
    std::vector<bool> flags;
    if (j.contains("reembedded")) flags = get<std::vector<bool>>(j, "reembedded");

    DecoratedTriangulation dit = [&] {
        if (have_corners) {
            std::vector<std::array<Incidence, 2>> sides;
            for (const auto& [a, b] : pairs) sides.push_back({a, b});
            return DecoratedTriangulation(triangles, sides, flags);
        }
        auto built = DecoratedTriangulation::from_gluing(static_cast<int>(tris.size()), pairs);
        return flags.empty() ? built
                             : DecoratedTriangulation({built.triangles().begin(), built.triangles().end()},
                                                      {built.all_sides().begin(), built.all_sides().end()}, flags);
    }();
    for (TriangleId t = 0; t < dit.triangle_count(); ++t)
        if (dit.triangle(t).edges != triangles[t].edges) bad("slots disagree with the gluing at triangle " + std::to_string(t));
    if (j.contains("genus") && get<int>(j, "genus") != dit.genus()) bad("genus disagrees with the gluing");
    if (j.contains("punctures") && get<int>(j, "punctures") != dit.puncture_count())
        bad("puncture count disagrees with the gluing");
    return dit;
}

Json to_json(const Isomorphism& iso) {
    return {{"triangles", iso.triangles}, {"rotation", iso.rotation}, {"edges", iso.edges}, {"punctures", iso.punctures}};
}

Isomorphism isomorphism_from_json(const Json& j) {
    Isomorphism iso;
    iso.triangles = get<std::vector<TriangleId>>(j, "triangles");
    iso.rotation = j.contains("rotation") ? get<std::vector<int>>(j, "rotation") : std::vector<int>(iso.triangles.size(), 0);
    iso.edges = get<std::vector<EdgeId>>(j, "edges");
    iso.punctures = get<std::vector<PunctureId>>(j, "punctures");
    if (iso.rotation.size() != iso.triangles.size()) bad("rotation and triangles differ in length");
    return iso;
}

Json to_json(const MoveWord& word) {
    Json out = Json::array();
    for (const auto& m : word) {
        if (const auto* f = std::get_if<FlipMove>(&m))
            out.push_back({{"op", "flip"}, {"edge", f->edge}});
        else if (const auto* r = std::get_if<RotateMove>(&m))
            out.push_back({{"op", "rot"}, {"tri", r->tri}});
        else
            out.push_back({{"op", "relabel"}, {"map", to_json(std::get<RelabelMove>(m).map)}});
    }
    return out;
}

MoveWord word_from_json(const Json& j) {
    if (!j.is_array()) bad("move word must be an array");
    MoveWord word;
    for (const auto& m : j) {
        const auto op = get<std::string>(m, "op");
        if (op == "flip")
            word.push_back(FlipMove{get<EdgeId>(m, "edge")});
        else if (op == "rot")
            word.push_back(RotateMove{get<TriangleId>(m, "tri")});
        else if (op == "relabel")
            word.push_back(RelabelMove{isomorphism_from_json(get<Json>(m, "map"))});
        else
            bad("unknown op '" + op + "'");
    }
    return word;
}

Json to_json(const PennerPoint& p) {
    Json out = Json::object();
    for (std::size_t e = 0; e < p.values.size(); ++e) out[std::to_string(e)] = to_string(p.values[e]);
    return out;
}

PennerPoint penner_from_json(const Json& j) {
    if (!j.is_object()) bad("edge values must be an object");
    PennerPoint p{std::vector<Rational>(j.size())};
    std::vector<bool> seen(j.size(), false);
    for (const auto& [key, value] : j.items()) {
        const int e = index_key(key);
        if (e >= static_cast<int>(j.size()) || seen[e]) bad("edge ids must be 0..E-1");
        seen[e] = true;
        p.values[e] = rational_from(value);
    }
    return p;
}

Json to_json(const KashaevPoint& k) {
    Json out = Json::object();
    for (std::size_t t = 0; t < k.values.size(); ++t)
        out[std::to_string(t)] = Json::array({to_string(k.values[t][0]), to_string(k.values[t][1])});
    return out;
}

KashaevPoint kashaev_from_json(const Json& j) {
    if (!j.is_object()) bad("triangle values must be an object");
    KashaevPoint k{std::vector<std::array<Rational, 2>>(j.size())};
    std::vector<bool> seen(j.size(), false);
    for (const auto& [key, value] : j.items()) {
        const int t = index_key(key);
        if (t >= static_cast<int>(j.size()) || seen[t]) bad("triangle ids must be 0..F-1");
        seen[t] = true;
        if (!value.is_array() || value.size() != 2) bad("triangle values must be pairs");
        k.values[t] = {rational_from(value[0]), rational_from(value[1])};
    }
    return k;
}

Json to_json(const LogCovector& u) { return {{"labels", u.labels}, {"values", u.values}}; }

Json to_json(const LogBilinearForm& form) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < form.matrix.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < form.matrix.cols(); ++c) row.push_back(to_string(form.matrix(i, c)));
        rows.push_back(row);
    }
    return {{"labels", form.labels}, {"matrix", rows}};
}

Json to_json(const ExactnessReport& r) {
    return {{"genus", r.genus},
            {"punctures", r.punctures},
            {"dim_S", r.dim_S},
            {"dim_ker_L", r.dim_ker_L},
            {"rank_L", r.rank_L},
            {"rank_M", r.rank_M},
            {"rank_A", r.rank_A},
            {"ML_zero", r.ML_zero},
            {"MA_zero", r.MA_zero},
            {"image_equals_kernel", r.image_equals_kernel},
            {"reduced_dimension", r.reduced_dimension},
            {"expected_reduced_dimension", r.expected_reduced_dimension},
            {"passed", r.passed()}};
}

Json to_json(const HomologyCycle& cycle) {
    Json out = Json::array();
    for (const auto& s : cycle.segments) out.push_back(Json::array({s.tri, s.entry, s.exit}));
    return out;
}

}  // namespace teich::json_io

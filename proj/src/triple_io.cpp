#include "rfh/triple_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rfh/errors.hpp"

namespace rfh::floer {

using nlohmann::json;

std::string to_json(const FloerTriple& t) {
    json j;
    j["generators"] = json::array();
    for (const auto& g : t.gens) {
        json e;
        e["name"] = g.name;
        e["action"] = g.action;
        if (g.degree) e["degree"] = *g.degree;
        j["generators"].push_back(e);
    }
    j["boundary"] = json::array();
    for (auto [tgt, src] : t.boundary)
        j["boundary"].push_back({t.gens[tgt].name, t.gens[src].name});
    return j.dump(2);
}

FloerTriple from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("triple JSON: ") + e.what());
    }
    FloerTriple t;
    if (!j.contains("generators") || !j["generators"].is_array())
        throw parse_error("triple JSON: missing \"generators\" array");
    for (const auto& e : j["generators"]) {
        Generator g;
        g.name = e.at("name").get<std::string>();
        g.action = e.at("action").get<long long>();
        if (e.contains("degree")) g.degree = e["degree"].get<long long>();
        t.gens.push_back(g);
    }
    for (const auto& p : j.value("boundary", json::array())) {
        int tgt = t.find(p.at(0).get<std::string>());
        int src = t.find(p.at(1).get<std::string>());
        if (tgt < 0 || src < 0)
            throw parse_error("triple JSON: boundary pair names an unknown generator");
        t.boundary.emplace_back(tgt, src);
    }
    return t;
}

FloerTriple load_triple(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void save_triple(const FloerTriple& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << to_json(t) << "\n";
}

}  // namespace rfh::floer

#include "pizza/instance_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pizza {

using nlohmann::json;

namespace {

Q numeral(const json& j) {
    if (j.is_string()) return Q::parse(j.get<std::string>());
    if (j.is_number_integer()) return Q(static_cast<long>(j.get<long long>()));
    throw InputError("numbers must be strings (\"p/q\", integer or decimal) or integers");
}

Chain read_chain(const json& j) {
    if (!j.is_array()) throw InputError("chain must be an array of points");
    Chain c;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) throw InputError("point must be a pair [x, y]");
        c.push_back({numeral(p[0]), numeral(p[1])});
    }
    return c;
}

json write_chain(const Chain& c) {
    json a = json::array();
    for (const auto& p : c) a.push_back(json::array({p.x.str(), p.y.str()}));
    return a;
}

}  // namespace

PizzaInstance parse_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("instance is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("masses") || !doc["masses"].is_array())
        throw InputError("instance must be an object with a \"masses\" array");

    PizzaInstance inst;
    try {
        for (const auto& m : doc["masses"]) {
            MassDistribution md;
            if (!m.contains("color") || !m["color"].is_number_integer()) throw InputError("mass needs integer \"color\"");
            md.color_id = m["color"].get<int>();
            if (!m.contains("polygons") || !m["polygons"].is_array()) throw InputError("mass needs \"polygons\" array");
            for (const auto& p : m["polygons"]) {
                WeightedPolygon wp;
                wp.weight = p.contains("weight") ? numeral(p["weight"]) : Q(1);
                if (!p.contains("outer")) throw InputError("polygon needs \"outer\" chain");
                wp.outer = read_chain(p["outer"]);
                if (p.contains("holes"))
                    for (const auto& h : p["holes"]) wp.holes.push_back(read_chain(h));
                md.polygons.push_back(std::move(wp));
            }
            inst.masses.push_back(std::move(md));
        }
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    std::sort(inst.masses.begin(), inst.masses.end(),
              [](const MassDistribution& a, const MassDistribution& b) { return a.color_id < b.color_id; });
    for (std::size_t i = 1; i < inst.masses.size(); ++i)
        if (inst.masses[i].color_id == inst.masses[i - 1].color_id) throw InputError("duplicate color id");
    validate_instance(inst);

    bool unit = true;
    for (const auto& m : inst.masses)
        for (const auto& p : m.polygons)
            for (const auto& v : p.outer)
                if (v.x < Q(0) || v.y < Q(0) || v.x > Q(1) || v.y > Q(1)) unit = false;
    inst.normalized = unit;
    return inst;
}

std::string serialize_instance(const PizzaInstance& inst) {
    std::vector<const MassDistribution*> order;
    for (const auto& m : inst.masses) order.push_back(&m);
    std::stable_sort(order.begin(), order.end(),
                     [](const MassDistribution* a, const MassDistribution* b) { return a->color_id < b->color_id; });
    json masses = json::array();
    for (const auto* m : order) {
        json polys = json::array();
        for (const auto& p : m->polygons) {
            json jp;
            jp["weight"] = p.weight.str();
            jp["outer"] = write_chain(p.outer);
            json holes = json::array();
            for (const auto& h : p.holes) holes.push_back(write_chain(h));
            jp["holes"] = holes;
            polys.push_back(jp);
        }
        masses.push_back({{"color", m->color_id}, {"polygons", polys}});
    }
    json doc;
    doc["masses"] = masses;
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

}  // namespace pizza

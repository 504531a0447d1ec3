#include "pizza/ch_io.hpp"

#include "pizza/instance_io.hpp"

#include <json.hpp>

namespace pizza {

using nlohmann::json;

namespace {

Q numeral(const json& j) {
    if (j.is_string()) return Q::parse(j.get<std::string>());
    if (j.is_number_integer()) return Q(static_cast<long>(j.get<long long>()));
    throw InputError("numbers must be strings (\"p/q\", integer or decimal) or integers");
}

json doc_of(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

json qlist(const std::vector<Q>& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(q.str());
    return a;
}

std::vector<Q> read_qlist(const json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
    std::vector<Q> out;
    for (const auto& e : j) out.push_back(numeral(e));
    return out;
}

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw InputError(std::string(what) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string(what) + ": " + e.what());
    } catch (const ReductionError& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

CHInstance parse_ch(std::string_view text) {
    json doc = doc_of(text, "consensus-halving instance");
    return guarded("consensus-halving instance", [&] {
        if (!doc.is_object() || !doc.contains("agents") || !doc["agents"].is_array())
            throw InputError("consensus-halving instance must have an \"agents\" array");
        CHInstance ch;
        if (doc.contains("domain")) {
            auto d = read_qlist(doc["domain"], "domain");
            if (d.size() != 2) throw InputError("domain must be a pair");
            ch.domain_lo = d[0];
            ch.domain_hi = d[1];
        }
        for (const auto& a : doc["agents"]) {
            CHValuation v;
            v.kind = parse_valuation_kind(a.value("kind", std::string("kBlock")));
            if (a.contains("blocks"))
                for (const auto& b : a["blocks"]) {
                    if (!b.is_array() || b.size() != 3) throw InputError("block must be [a, b, density]");
                    v.blocks.push_back({numeral(b[0]), numeral(b[1]), numeral(b[2])});
                }
            if (a.contains("triangle") && !a["triangle"].is_null()) {
                auto t = read_qlist(a["triangle"], "triangle");
                if (t.size() != 2) throw InputError("triangle must be [a, b]");
                v.triangle = CHTriangle{t[0], t[1]};
            }
            ch.agents.push_back(std::move(v));
        }
        validate_ch(ch);
        return ch;
    });
}

std::string serialize_ch(const CHInstance& ch) {
    json doc;
    doc["agents"] = json::array();
    for (const auto& v : ch.agents) {
        json a;
        a["kind"] = valuation_kind_name(v.kind);
        a["blocks"] = json::array();
        for (const auto& b : v.blocks) a["blocks"].push_back(json::array({b.left.str(), b.right.str(), b.density.str()}));
        if (v.triangle) a["triangle"] = json::array({v.triangle->left.str(), v.triangle->right.str()});
        doc["agents"].push_back(a);
    }
    if (ch.domain_lo != Q(0) || ch.domain_hi != Q(1)) doc["domain"] = json::array({ch.domain_lo.str(), ch.domain_hi.str()});
    return doc.dump(2) + "\n";
}

CHSolution parse_ch_solution(std::string_view text) {
    json doc = doc_of(text, "consensus-halving solution");
    return guarded("consensus-halving solution", [&] {
        CHSolution sol;
        sol.cuts = read_qlist(doc.at("cuts"), "cuts");
        std::string label = doc.value("first_label", std::string("+"));
        if (label == "+") sol.first_label = 1;
        else if (label == "-" || label == "−") sol.first_label = -1;
        else throw InputError("first_label must be + or -");
        for (std::size_t i = 1; i < sol.cuts.size(); ++i)
            if (sol.cuts[i] < sol.cuts[i - 1]) throw InputError("cuts must be sorted");
        return sol;
    });
}

std::string serialize_ch_solution(const CHSolution& sol) {
    json doc;
    doc["cuts"] = qlist(sol.cuts);
    doc["first_label"] = sol.first_label > 0 ? "+" : "-";
    return doc.dump(2) + "\n";
}

std::string serialize_meta(const ReductionMeta& m) {
    json doc;
    doc["kind"] = kind_name(m.kind);
    doc["agents"] = m.agents;
    doc["points_of_interest"] = qlist(m.points_of_interest);
    doc["cells"] = json::array();
    for (const auto& c : m.cells)
        doc["cells"].push_back({{"index", c.index},
                                {"interval", json::array({c.x_lo.str(), c.x_hi.str()})},
                                {"square", json::array({c.X0.str(), c.Y0.str(), c.X1.str(), c.Y1.str()})}});
    doc["tiles"] = json::array();
    for (const auto& t : m.tiles)
        doc["tiles"].push_back({{"index", t.index}, {"interval", json::array({t.x_lo.str(), t.x_hi.str()})}});
    doc["transform"] = {{"shift", json::array({m.transform.shift_x.str(), m.transform.shift_y.str()})},
                        {"scale", m.transform.scale.str()}};
    doc["weight_factor"] = m.weight_factor.str();
    doc["eps_in"] = m.eps_in.str();
    doc["eps_out"] = m.eps_out.str();
    doc["d"] = m.d.str();
    doc["delta"] = m.delta;
    doc["c_max"] = m.c_max.str();
    doc["granularity"] = m.granularity;
    doc["gadget_weight"] = m.gadget_weight.str();
    doc["domain"] = json::array({m.domain_lo.str(), m.domain_hi.str()});
    doc["snapped"] = m.snapped;
    return doc.dump(2) + "\n";
}

ReductionMeta parse_meta(std::string_view text) {
    json doc = doc_of(text, "reduction meta");
    return guarded("reduction meta", [&] {
        ReductionMeta m;
        m.kind = parse_reduction_kind(doc.at("kind").get<std::string>());
        m.agents = doc.value("agents", 0);
        m.points_of_interest = read_qlist(doc.at("points_of_interest"), "points_of_interest");
        for (const auto& c : doc.value("cells", json::array())) {
            auto iv = read_qlist(c.at("interval"), "interval");
            auto sq = read_qlist(c.at("square"), "square");
            if (iv.size() != 2 || sq.size() != 4) throw InputError("malformed cell record");
            m.cells.push_back({c.at("index").get<int>(), iv[0], iv[1], sq[0], sq[1], sq[2], sq[3]});
        }
        for (const auto& t : doc.value("tiles", json::array())) {
            auto iv = read_qlist(t.at("interval"), "interval");
            if (iv.size() != 2) throw InputError("malformed tile record");
            m.tiles.push_back({t.at("index").get<int>(), iv[0], iv[1]});
        }
        const auto& tr = doc.at("transform");
        auto shift = read_qlist(tr.at("shift"), "shift");
        if (shift.size() != 2) throw InputError("transform shift must be a pair");
        m.transform.shift_x = shift[0];
        m.transform.shift_y = shift[1];
        m.transform.scale = numeral(tr.at("scale"));
        m.weight_factor = numeral(doc.at("weight_factor"));
        m.eps_in = numeral(doc.value("eps_in", json("0")));
        m.eps_out = numeral(doc.value("eps_out", json("0")));
        m.d = numeral(doc.value("d", json("0")));
        m.delta = doc.value("delta", 0);
        m.c_max = numeral(doc.value("c_max", json("0")));
        m.granularity = doc.value("granularity", std::vector<int>{});
        m.gadget_weight = numeral(doc.value("gadget_weight", json("0")));
        if (doc.contains("domain")) {
            auto d = read_qlist(doc["domain"], "domain");
            if (d.size() != 2) throw InputError("domain must be a pair");
            m.domain_lo = d[0];
            m.domain_hi = d[1];
        }
        m.snapped = doc.value("snapped", false);
        return m;
    });
}

StraightCutSet parse_lines(std::string_view text) {
    json doc = doc_of(text, "line set");
    return guarded("line set", [&] {
        const json& arr = doc.is_object() ? doc.at("lines") : doc;
        if (!arr.is_array()) throw InputError("lines must be an array of [a, b, c]");
        StraightCutSet out;
        for (const auto& l : arr) {
            auto v = read_qlist(l, "line");
            if (v.size() != 3) throw InputError("line must be [a, b, c]");
            if (v[0].is_zero() && v[1].is_zero()) throw InputError("degenerate line with a = b = 0");
            out.push_back({v[0], v[1], v[2]});
        }
        return out;
    });
}

std::string serialize_lines(const StraightCutSet& lines) {
    json doc;
    doc["lines"] = json::array();
    for (const auto& l : lines) doc["lines"].push_back(json::array({l.a.str(), l.b.str(), l.c.str()}));
    return doc.dump(2) + "\n";
}

namespace {

json path_doc(const FeasibleSolution& sol) {
    json doc;
    doc["z"] = qlist(sol.z);
    doc["x"] = qlist(sol.x);
    doc["turns"] = sol.turns;
    std::vector<Point2> pts;
    std::vector<bool> wraps;
    path_polyline(solution_to_path(sol), pts, wraps);
    doc["polyline"] = json::array();
    for (const auto& p : pts) doc["polyline"].push_back(json::array({p.x.str(), p.y.str()}));
    doc["wraps"] = wraps;
    return doc;
}

}  // namespace

std::string serialize_path(const SpherePoint& p) {
    json doc = path_doc(sphere_to_solution(p));
    doc["radius"] = p.radius().str();
    doc["coords"] = qlist(p.coords);
    return doc.dump(2) + "\n";
}

std::string serialize_path(const FeasibleSolution& sol) { return path_doc(sol).dump(2) + "\n"; }

PathFile parse_path(std::string_view text) {
    json doc = doc_of(text, "path file");
    return guarded("path file", [&] {
        PathFile pf;
        if (doc.contains("coords")) {
            auto coords = read_qlist(doc["coords"], "coords");
            if (coords.size() < 2) throw InputError("coords need at least two entries");
            pf.point = make_sphere_point(coords);
            if (doc.contains("radius") && numeral(doc["radius"]) != pf.point.radius())
                throw InputError("radius does not match the coordinate count");
            Q norm = 0;
            for (const auto& c : coords) norm += abs(c);
            if (norm != pf.point.radius()) throw InputError("coords do not lie on the L1 sphere of radius k+1");
            pf.solution = sphere_to_solution(pf.point);
            pf.has_point = true;
            return pf;
        }
        pf.solution.z = read_qlist(doc.at("z"), "z");
        pf.solution.x = read_qlist(doc.at("x"), "x");
        pf.solution.turns = static_cast<int>(pf.solution.z.size() + pf.solution.x.size()) - 2;
        if (pf.solution.turns < 0) throw InputError("path file has too few slices");
        if (static_cast<int>(pf.solution.z.size()) != horizontal_cuts(pf.solution.turns) + 1)
            throw InputError("z and x lengths do not match a turn count");
        Q thick = 0;
        for (const auto& z : pf.solution.z) thick += abs(z);
        if (thick != Q(1)) throw InputError("slice thicknesses must sum to 1");
        for (const auto& x : pf.solution.x)
            if (x < Q(0) || x > Q(1)) throw InputError("cut abscissae must lie in [0,1]");
        pf.solution.x_sign.assign(pf.solution.x.size(), 1);
        return pf;
    });
}

std::string serialize_report(const SolveReport& rep) {
    json doc;
    doc["residual"] = rep.residual.str();
    doc["residual_float"] = rep.residual.to_double();
    doc["per_color_gap"] = qlist(rep.per_color_gap);
    doc["float_residual"] = rep.float_residual;
    doc["evaluations"] = rep.evaluations;
    doc["wall_time"] = rep.wall_time;
    doc["verified_exact"] = rep.verified_exact;
    doc["seed_index"] = rep.seed_index;
    doc["turns"] = turn_count(rep.path);
    doc["y_monotone"] = is_y_monotone(rep.path);
    return doc.dump(2) + "\n";
}

}  // namespace pizza

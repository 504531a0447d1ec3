#include "pizza/etr.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pizza {

namespace {

class BuBuilder {
public:
    explicit BuBuilder(Circuit& c) : c_(c), zero_(c.constant(Q(0))), one_(c.constant(Q(1))) {}

    // Mass of the canonical right triangle {u,v >= 0, u/a + v/b <= 1} inside [0,U] x [0,V], U, V clamped.
    int corner_mass(int U, int V, const Q& a, const Q& b) {
        int t = c_.sub(c_.add(c_.scale(Q(1) / a, U), c_.scale(Q(1) / b, V)), one_);
        int m = c_.max(t, zero_);
        return c_.sub(c_.mul(U, V), c_.scale(a * b / Q(2), c_.mul(m, m)));
    }

    // Atom mass inside {x <= X, y <= Y}; X < 0 stands for x unbounded.
    int cumulative(const RightTriangleAtom& at, int X, int Y) {
        Point2 r = at.right_vertex();
        Q a = abs(at.hyp_high.x - at.hyp_low.x), b = at.hyp_high.y - at.hyp_low.y;
        bool xpos = at.orientation == Quadrant::I || at.orientation == Quadrant::IV;
        bool ypos = at.orientation == Quadrant::I || at.orientation == Quadrant::II;
        std::vector<std::pair<int, int>> us, vs;  // (coefficient sign, clamped extent)
        int full_a = c_.constant(a), full_b = c_.constant(b);
        if (X < 0) {
            us.push_back({+1, full_a});
        } else {
            int rx = c_.constant(r.x);
            int u = c_.clamp(xpos ? c_.sub(X, rx) : c_.sub(rx, X), Q(0), a);
            if (xpos) us.push_back({+1, u});
            else us = {{+1, full_a}, {-1, u}};
        }
        int ry = c_.constant(r.y);
        int v = c_.clamp(ypos ? c_.sub(Y, ry) : c_.sub(ry, Y), Q(0), b);
        if (ypos) vs.push_back({+1, v});
        else vs = {{+1, full_b}, {-1, v}};

        int acc = zero_;
        for (auto [su, U] : us)
            for (auto [sv, V] : vs) {
                int g = corner_mass(U, V, a, b);
                acc = su * sv > 0 ? c_.add(acc, g) : c_.sub(acc, g);
            }
        return acc;
    }

    int left_mass(const RightTriangleAtom& at, int y0, int y1, int cut) {
        return c_.sub(cumulative(at, cut, y1), cumulative(at, cut, y0));
    }
    int right_mass(const RightTriangleAtom& at, int y0, int y1, int cut) {
        int full = c_.sub(cumulative(at, -1, y1), cumulative(at, -1, y0));
        return c_.sub(full, left_mass(at, y0, y1, cut));
    }
    int weighted(const RightTriangleAtom& at, int mass) {
        return c_.scale(at.sign < 0 ? -at.weight : at.weight, mass);
    }

    struct Side {
        std::vector<int> base, top_left, top_right;
    };

    Side build(const CompiledInstance& ci, int k, const std::vector<int>& in) {
        const int s = horizontal_cuts(k), nx = vertical_cuts(k);
        std::vector<int> y{zero_};
        int S = zero_;
        for (int i = 0; i < s; ++i) {
            S = c_.add(S, c_.abs(in[i]));
            y.push_back(c_.min(S, one_));
        }
        auto cut_of = [&](int strip) {  // 1-based strip index
            if (strip >= 2 && strip - 1 <= nx) return c_.min(c_.abs(in[s + 1 + (strip - 2)]), one_);
            return one_;
        };
        Side out;
        for (std::size_t col = 0; col < ci.atoms.size(); ++col) {
            int base = zero_, tl = zero_, tr = zero_;
            for (const auto& at : ci.atoms[col]) {
                for (int i = 1; i <= s; ++i) {
                    int thick = c_.sub(y[i], y[i - 1]);
                    int pos = c_.min(c_.max(in[i - 1], zero_), thick);
                    int neg = c_.min(c_.max(c_.neg(in[i - 1]), zero_), thick);
                    int cut = cut_of(i);
                    int m = c_.add(left_mass(at, y[i - 1], c_.add(y[i - 1], pos), cut),
                                   right_mass(at, y[i - 1], c_.add(y[i - 1], neg), cut));
                    base = c_.add(base, weighted(at, m));
                }
                int cut = cut_of(s + 1);
                tl = c_.add(tl, weighted(at, left_mass(at, y[s], one_, cut)));
                tr = c_.add(tr, weighted(at, right_mass(at, y[s], one_, cut)));
            }
            out.base.push_back(base);
            out.top_left.push_back(tl);
            out.top_right.push_back(tr);
        }
        return out;
    }

private:
    Circuit& c_;
    int zero_, one_;
};

// ---------------------------------------------------------------------------
// Emission

class Emitter {
public:
    Emitter(const Circuit& c, const std::vector<int>& roots) : c_(c) {
        for (int id : c.reachable(roots)) {
            auto op = c.node(id).op;
            if (op == NodeOp::Max || op == NodeOp::Min) {
                gname_[id] = "g" + std::to_string(gorder_.size() + 1);
                gorder_.push_back(id);
            }
        }
    }

    const std::string& term(int id) {
        auto it = memo_.find(id);
        if (it != memo_.end()) return it->second;
        const CircuitNode& n = c_.node(id);
        std::string s;
        switch (n.op) {
            case NodeOp::Const: s = n.value.str(); break;
            case NodeOp::Var: s = "P" + std::to_string(n.var + 1); break;
            case NodeOp::Add: s = "(+ " + term(n.a) + " " + term(n.b) + ")"; break;
            case NodeOp::Sub: s = "(- " + term(n.a) + " " + term(n.b) + ")"; break;
            case NodeOp::Mul: s = "(* " + term(n.a) + " " + term(n.b) + ")"; break;
            case NodeOp::Max:
            case NodeOp::Min: s = gname_.at(id); break;
        }
        return memo_.emplace(id, std::move(s)).first->second;
    }

    std::vector<std::string> definitions(std::size_t& maxes, std::size_t& mins) {
        std::vector<std::string> out;
        maxes = mins = 0;
        for (int id : gorder_) {
            const CircuitNode& n = c_.node(id);
            const std::string& g = gname_.at(id);
            std::string y = term(n.a), z = term(n.b);
            bool is_max = n.op == NodeOp::Max;
            (is_max ? maxes : mins)++;
            const char* weak = is_max ? ">=" : "<=";
            const char* strict = is_max ? ">" : "<";
            out.push_back("(or (and (= " + g + " " + y + ") (" + weak + " " + y + " " + z + ")) (and (= " + g + " " +
                          z + ") (" + strict + " " + z + " " + y + ")))");
        }
        return out;
    }

    std::size_t g_count() const { return gorder_.size(); }

private:
    const Circuit& c_;
    std::map<int, std::string> gname_;
    std::vector<int> gorder_;
    std::map<int, std::string> memo_;
};

EtrFormula assemble(int dim, Emitter& em, const std::vector<std::string>& head, const std::vector<std::string>& tail) {
    EtrFormula f;
    for (int j = 0; j < dim; ++j) f.variables.push_back("P" + std::to_string(j + 1));
    for (std::size_t g = 0; g < em.g_count(); ++g) f.variables.push_back("g" + std::to_string(g + 1));
    auto defs = em.definitions(f.max_nodes, f.min_nodes);
    std::ostringstream out;
    out << "(exists (";
    for (std::size_t i = 0; i < f.variables.size(); ++i) out << (i ? " " : "") << f.variables[i];
    out << ")\n (and\n";
    for (const auto& h : head) out << "  " << h << "\n";
    for (const auto& d : defs) out << "  " << d << "\n";
    for (const auto& t : tail) out << "  " << t << "\n";
    out << " ))\n";
    f.text = out.str();
    return f;
}

}  // namespace

BuCircuit build_bu_circuit(const CompiledInstance& ci, int k) {
    if (k < 0) throw std::invalid_argument("turn budget must be nonnegative");
    BuCircuit bc;
    bc.turns = k;
    bc.dim = sphere_dimension(k);
    bc.r_index = horizontal_cuts(k);
    Circuit& c = bc.circuit;
    std::vector<int> pos, neg;
    for (int j = 0; j < bc.dim; ++j) {
        pos.push_back(c.variable(j));
        neg.push_back(c.neg(pos.back()));
    }
    BuBuilder b(c);
    auto p = b.build(ci, k, pos);
    auto n = b.build(ci, k, neg);
    bc.base_pos = p.base;
    bc.top_left_pos = p.top_left;
    bc.top_right_pos = p.top_right;
    bc.base_neg = n.base;
    bc.top_left_neg = n.top_left;
    bc.top_right_neg = n.top_right;
    int sum = c.constant(Q(0));
    for (int j = 0; j < bc.dim; ++j) sum = c.add(sum, c.abs(pos[j]));
    bc.sphere_sum = sum;
    return bc;
}

template <class T>
std::pair<std::vector<T>, std::vector<T>> circuit_bu_eval(const BuCircuit& bc, const std::vector<T>& p) {
    auto v = bc.circuit.evaluate(p);
    SpherePointT<T> sp{p, bc.turns};
    const bool r_nonneg = top_slice_sign(sp) > 0;
    const bool r_nonpos = !r_nonneg;
    std::vector<T> f, g;
    for (std::size_t i = 0; i < bc.base_pos.size(); ++i) {
        f.push_back(v[bc.base_pos[i]] + v[r_nonneg ? bc.top_left_pos[i] : bc.top_right_pos[i]]);
        g.push_back(v[bc.base_neg[i]] + v[r_nonpos ? bc.top_left_neg[i] : bc.top_right_neg[i]]);
    }
    return {f, g};
}

template std::pair<std::vector<Q>, std::vector<Q>> circuit_bu_eval(const BuCircuit&, const std::vector<Q>&);
template std::pair<std::vector<double>, std::vector<double>> circuit_bu_eval(const BuCircuit&,
                                                                             const std::vector<double>&);

EtrFormula export_etr(const CompiledInstance& ci, int k) {
    BuCircuit bc = build_bu_circuit(ci, k);
    std::vector<int> roots{bc.sphere_sum};
    for (auto* v : {&bc.base_pos, &bc.top_left_pos, &bc.top_right_pos, &bc.base_neg, &bc.top_left_neg,
                    &bc.top_right_neg})
        roots.insert(roots.end(), v->begin(), v->end());
    Emitter em(bc.circuit, roots);

    std::string sphere = "(= " + em.term(bc.sphere_sum) + " " + std::to_string(k + 1) + ")";
    auto equalities = [&](bool left_pos, bool left_neg) {
        std::string s = "(and";
        for (std::size_t i = 0; i < bc.base_pos.size(); ++i) {
            int fp = left_pos ? bc.top_left_pos[i] : bc.top_right_pos[i];
            int fn = left_neg ? bc.top_left_neg[i] : bc.top_right_neg[i];
            s += " (= (+ " + em.term(bc.base_pos[i]) + " " + em.term(fp) + ") (+ " + em.term(bc.base_neg[i]) + " " +
                 em.term(fn) + "))";
        }
        return s + ")";
    };
    // With R = 0 the first nonzero coordinate fixes the top slice's sign.
    const std::string R = "P" + std::to_string(bc.r_index + 1);
    auto lex = [&](const char* rel) {
        std::string s = "(or", zeros;
        for (int j = 0; j < bc.dim; ++j) {
            std::string pj = "P" + std::to_string(j + 1);
            s += " (and" + zeros + " (" + rel + " " + pj + " 0))";
            zeros += " (= " + pj + " 0)";
        }
        return s + ")";
    };
    std::string pm = equalities(true, false), mp = equalities(false, true);
    std::string antipodal = "(or (and (> " + R + " 0) " + pm + ") (and (< " + R + " 0) " + mp + ") (and (= " + R +
                            " 0) " + lex(">") + " " + pm + ") (and (= " + R + " 0) " + lex("<") + " " + mp + "))";
    return assemble(bc.dim, em, {sphere}, {antipodal});
}

EtrFormula export_equalities(const Circuit& c, int dim, const std::vector<std::pair<int, int>>& equalities) {
    std::vector<int> roots;
    for (auto [l, r] : equalities) {
        roots.push_back(l);
        roots.push_back(r);
    }
    Emitter em(c, roots);
    std::vector<std::string> tail;
    for (auto [l, r] : equalities) tail.push_back("(= " + em.term(l) + " " + em.term(r) + ")");
    return assemble(dim, em, {}, tail);
}

// ---------------------------------------------------------------------------
// Interpreter

namespace {

struct SExpr {
    std::string atom;
    std::vector<SExpr> items;
    bool list = false;
};

class Parser {
public:
    explicit Parser(const std::string& t) : t_(t) {}

    SExpr parse() {
        SExpr e = next();
        skip();
        if (i_ != t_.size()) throw std::invalid_argument("formula: trailing input");
        return e;
    }

private:
    void skip() {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
    }
    SExpr next() {
        skip();
        if (i_ >= t_.size()) throw std::invalid_argument("formula: unexpected end");
        SExpr e;
        if (t_[i_] == '(') {
            ++i_;
            e.list = true;
            for (;;) {
                skip();
                if (i_ >= t_.size()) throw std::invalid_argument("formula: unbalanced parentheses");
                if (t_[i_] == ')') {
                    ++i_;
                    return e;
                }
                e.items.push_back(next());
            }
        }
        if (t_[i_] == ')') throw std::invalid_argument("formula: unexpected ')'");
        std::size_t st = i_;
        while (i_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[i_])) && t_[i_] != '(' && t_[i_] != ')')
            ++i_;
        e.atom = t_.substr(st, i_ - st);
        return e;
    }

    const std::string& t_;
    std::size_t i_ = 0;
};

bool is_numeral(const std::string& s) {
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

class Evaluator {
public:
    std::map<std::string, Q> env;

    Q term(const SExpr& e) const {
        if (!e.list) {
            if (is_numeral(e.atom)) return Q::parse(e.atom);
            auto it = env.find(e.atom);
            if (it == env.end()) throw std::invalid_argument("formula: unbound variable " + e.atom);
            return it->second;
        }
        if (e.items.empty() || e.items[0].list) throw std::invalid_argument("formula: malformed term");
        const std::string& op = e.items[0].atom;
        std::size_t n = e.items.size();
        if (op == "-" && n == 2) return -term(e.items[1]);
        if (n < 3) throw std::invalid_argument("formula: operator " + op + " needs operands");
        Q acc = term(e.items[1]);
        for (std::size_t i = 2; i < n; ++i) {
            Q v = term(e.items[i]);
            if (op == "+") acc += v;
            else if (op == "-") acc -= v;
            else if (op == "*") acc *= v;
            else throw std::invalid_argument("formula: unknown operator " + op);
        }
        return acc;
    }

    bool holds(const SExpr& e) const {
        if (!e.list || e.items.empty() || e.items[0].list) throw std::invalid_argument("formula: malformed atom");
        const std::string& op = e.items[0].atom;
        if (op == "and") {
            for (std::size_t i = 1; i < e.items.size(); ++i)
                if (!holds(e.items[i])) return false;
            return true;
        }
        if (op == "or") {
            for (std::size_t i = 1; i < e.items.size(); ++i)
                if (holds(e.items[i])) return true;
            return false;
        }
        if (op == "not") return !holds(e.items.at(1));
        if (e.items.size() != 3) throw std::invalid_argument("formula: comparison needs two sides");
        Q l = term(e.items[1]), r = term(e.items[2]);
        if (op == "=") return l == r;
        if (op == "<") return l < r;
        if (op == "<=") return l <= r;
        if (op == ">") return l > r;
        if (op == ">=") return l >= r;
        throw std::invalid_argument("formula: unknown relation " + op);
    }
};

// Matches (or (and (= g Y) (>= Y Z)) (and (= g Z) (> Z Y))) and its min counterpart.
bool witness_shape(const SExpr& c, std::string& g, const SExpr*& y, const SExpr*& z, bool& is_max) {
    auto head = [](const SExpr& e, const char* h, std::size_t n) {
        return e.list && e.items.size() == n && !e.items[0].list && e.items[0].atom == h;
    };
    if (!head(c, "or", 3) || !head(c.items[1], "and", 3) || !head(c.items[2], "and", 3)) return false;
    const SExpr& eq1 = c.items[1].items[1];
    const SExpr& cmp = c.items[1].items[2];
    if (!head(eq1, "=", 3) || eq1.items[1].list || eq1.items[1].atom.empty() || eq1.items[1].atom[0] != 'g') return false;
    if (!cmp.list || cmp.items.size() != 3 || cmp.items[0].list) return false;
    const std::string& rel = cmp.items[0].atom;
    if (rel != ">=" && rel != "<=") return false;
    g = eq1.items[1].atom;
    y = &cmp.items[1];
    z = &cmp.items[2];
    is_max = rel == ">=";
    return true;
}

}  // namespace

EtrEvaluation etr_evaluate(const std::string& text, const std::vector<Q>& p) {
    SExpr root = Parser(text).parse();
    if (!root.list || root.items.size() != 3 || root.items[0].atom != "exists" || !root.items[1].list)
        throw std::invalid_argument("formula: expected (exists (vars) body)");
    Evaluator ev;
    std::size_t pi = 0;
    for (const auto& v : root.items[1].items) {
        if (v.list) throw std::invalid_argument("formula: malformed variable list");
        if (v.atom[0] == 'P') {
            if (pi >= p.size()) throw std::invalid_argument("formula: more P variables than supplied values");
            ev.env[v.atom] = p[pi++];
        }
    }
    if (pi != p.size()) throw std::invalid_argument("formula: supplied values do not match P variables");

    const SExpr& body = root.items[2];
    std::vector<const SExpr*> conjuncts;
    if (body.list && !body.items.empty() && !body.items[0].list && body.items[0].atom == "and")
        for (std::size_t i = 1; i < body.items.size(); ++i) conjuncts.push_back(&body.items[i]);
    else
        conjuncts.push_back(&body);

    EtrEvaluation out;
    for (const SExpr* c : conjuncts) {
        std::string g;
        const SExpr *y = nullptr, *z = nullptr;
        bool is_max = false;
        if (!witness_shape(*c, g, y, z, is_max)) continue;
        Q vy = ev.term(*y), vz = ev.term(*z);
        Q val = is_max ? max(vy, vz) : min(vy, vz);
        ev.env[g] = val;
        out.g_values.push_back(val);
        ++out.witnesses;
    }
    out.conjuncts = conjuncts.size();
    for (const SExpr* c : conjuncts)
        if (ev.holds(*c)) ++out.conjuncts_satisfied;
    out.satisfied = out.conjuncts_satisfied == out.conjuncts;
    return out;
}

}  // namespace pizza

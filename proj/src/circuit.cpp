#include "pizza/circuit.hpp"

#include <algorithm>

namespace pizza {

namespace {

std::string key_of(const CircuitNode& n) {
    std::string k(1, static_cast<char>('0' + static_cast<int>(n.op)));
    switch (n.op) {
        case NodeOp::Const: return k + n.value.str();
        case NodeOp::Var: return k + std::to_string(n.var);
        default: return k + std::to_string(n.a) + "," + std::to_string(n.b);
    }
}

bool commutative(NodeOp op) { return op == NodeOp::Add || op == NodeOp::Mul || op == NodeOp::Max || op == NodeOp::Min; }

}  // namespace

int Circuit::intern(CircuitNode n) {
    if (commutative(n.op) && n.b < n.a) std::swap(n.a, n.b);
    std::string k = key_of(n);
    auto it = index_.find(k);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    index_.emplace(std::move(k), id);
    return id;
}

int Circuit::constant(const Q& v) {
    CircuitNode n;
    n.op = NodeOp::Const;
    n.value = v;
    return intern(std::move(n));
}

int Circuit::variable(int index) {
    CircuitNode n;
    n.op = NodeOp::Var;
    n.var = index;
    return intern(std::move(n));
}

int Circuit::add(int a, int b) {
    if (is_const(a) && is_const(b)) return constant(nodes_[a].value + nodes_[b].value);
    if (is_const(a) && nodes_[a].value.is_zero()) return b;
    if (is_const(b) && nodes_[b].value.is_zero()) return a;
    return intern({NodeOp::Add, a, b, -1, Q()});
}

int Circuit::sub(int a, int b) {
    if (is_const(a) && is_const(b)) return constant(nodes_[a].value - nodes_[b].value);
    if (is_const(b) && nodes_[b].value.is_zero()) return a;
    if (a == b) return constant(Q(0));
    return intern({NodeOp::Sub, a, b, -1, Q()});
}

int Circuit::mul(int a, int b) {
    if (is_const(a) && is_const(b)) return constant(nodes_[a].value * nodes_[b].value);
    for (int pass = 0; pass < 2; ++pass) {
        int c = pass ? b : a, o = pass ? a : b;
        if (is_const(c) && nodes_[c].value.is_zero()) return c;
        if (is_const(c) && nodes_[c].value == Q(1)) return o;
    }
    return intern({NodeOp::Mul, a, b, -1, Q()});
}

int Circuit::max(int a, int b) {
    if (is_const(a) && is_const(b)) return constant(pizza::max(nodes_[a].value, nodes_[b].value));
    if (a == b) return a;
    return intern({NodeOp::Max, a, b, -1, Q()});
}

int Circuit::min(int a, int b) {
    if (is_const(a) && is_const(b)) return constant(pizza::min(nodes_[a].value, nodes_[b].value));
    if (a == b) return a;
    return intern({NodeOp::Min, a, b, -1, Q()});
}

int Circuit::neg(int a) {
    const CircuitNode& n = nodes_[a];
    if (n.op == NodeOp::Const) return constant(-n.value);
    if (n.op == NodeOp::Sub && is_const(n.a) && nodes_[n.a].value.is_zero()) return n.b;
    return sub(constant(Q(0)), a);
}

int Circuit::abs(int a) {
    int zero = constant(Q(0));
    return add(max(a, zero), max(neg(a), zero));
}

template <class T>
std::vector<T> Circuit::evaluate(const std::vector<T>& inputs) const {
    std::vector<T> v(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const CircuitNode& n = nodes_[i];
        switch (n.op) {
            case NodeOp::Const: v[i] = num::from_q<T>(n.value); break;
            case NodeOp::Var: v[i] = inputs.at(n.var); break;
            case NodeOp::Add: v[i] = v[n.a] + v[n.b]; break;
            case NodeOp::Sub: v[i] = v[n.a] - v[n.b]; break;
            case NodeOp::Mul: v[i] = v[n.a] * v[n.b]; break;
            case NodeOp::Max: v[i] = num::max(v[n.a], v[n.b]); break;
            case NodeOp::Min: v[i] = num::min(v[n.a], v[n.b]); break;
        }
    }
    return v;
}

std::vector<int> Circuit::reachable(const std::vector<int>& roots) const {
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<int> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        if (seen[id]) continue;
        seen[id] = 1;
        const CircuitNode& n = nodes_[id];
        if (n.a >= 0) stack.push_back(n.a);
        if (n.b >= 0) stack.push_back(n.b);
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (seen[i]) out.push_back(static_cast<int>(i));
    return out;
}

template std::vector<Q> Circuit::evaluate<Q>(const std::vector<Q>&) const;
template std::vector<double> Circuit::evaluate<double>(const std::vector<double>&) const;

}  // namespace pizza

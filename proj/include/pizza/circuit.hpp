#pragma once

#include "pizza/exact.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace pizza {

// Gate basis {constant, variable, +, -, x, max, min}; scaling by a constant is a product with a constant gate.
enum class NodeOp { Const, Var, Add, Sub, Mul, Max, Min };

struct CircuitNode {
    NodeOp op = NodeOp::Const;
    int a = -1, b = -1;
    int var = -1;
    Q value;
};

// Hash-consed DAG; node ids are created children-first, so id order is a topological order.
class Circuit {
public:
    int constant(const Q& v);
    int variable(int index);
    int add(int a, int b);
    int sub(int a, int b);
    int mul(int a, int b);
    int max(int a, int b);
    int min(int a, int b);

    int neg(int a);
    int scale(const Q& c, int a) { return mul(constant(c), a); }
    int abs(int a);
    int clamp(int a, const Q& lo, const Q& hi) { return min(max(a, constant(lo)), constant(hi)); }

    const CircuitNode& node(int id) const { return nodes_[id]; }
    std::size_t size() const { return nodes_.size(); }
    bool is_const(int id) const { return nodes_[id].op == NodeOp::Const; }

    template <class T>
    std::vector<T> evaluate(const std::vector<T>& inputs) const;

    // Sorted ids of all nodes reachable from the roots.
    std::vector<int> reachable(const std::vector<int>& roots) const;

private:
    int intern(CircuitNode n);
    std::vector<CircuitNode> nodes_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace pizza

#pragma once

#include "pizza/circuit.hpp"
#include "pizza/measure.hpp"

#include <string>
#include <vector>

namespace pizza {

// The Borsuk-Ulam function as a circuit over the sphere coordinates P_1..P_{k+2}.
// The top slice's sign depends discontinuously on R, so both of its possible contributions are kept.
struct BuCircuit {
    Circuit circuit;
    int turns = 0;
    int dim = 0;
    int r_index = 0;  // position of R among the inputs
    std::vector<int> base_pos, top_left_pos, top_right_pos;  // evaluated at P
    std::vector<int> base_neg, top_left_neg, top_right_neg;  // evaluated at -P
    int sphere_sum = -1;                                      // sum of |P_j|
};

BuCircuit build_bu_circuit(const CompiledInstance& ci, int k);

// f(P) and f(-P) read off the circuit.
template <class T>
std::pair<std::vector<T>, std::vector<T>> circuit_bu_eval(const BuCircuit& bc, const std::vector<T>& p);

struct EtrFormula {
    std::vector<std::string> variables;  // P1.. then g1..
    std::size_t max_nodes = 0;
    std::size_t min_nodes = 0;
    std::string text;
};

EtrFormula export_etr(const CompiledInstance& ci, int k);

// Formula "exists P, g . C and (lhs_1 = rhs_1) and ..." for an arbitrary circuit over dim inputs.
EtrFormula export_equalities(const Circuit& c, int dim, const std::vector<std::pair<int, int>>& equalities);

struct EtrEvaluation {
    bool satisfied = false;
    std::size_t conjuncts = 0;           // top-level conjuncts of the body
    std::size_t conjuncts_satisfied = 0;
    std::size_t witnesses = 0;           // g-variables completed from their defining constraints
    std::vector<Q> g_values;
};

// Parses the formula text, completes every g from its max/min constraint, then evaluates exactly.
EtrEvaluation etr_evaluate(const std::string& text, const std::vector<Q>& p);

}  // namespace pizza

#pragma once

#include "pizza/geometry.hpp"
#include "pizza/sc_path.hpp"

#include <utility>
#include <vector>

namespace pizza {

// Flattened atom used in the inner loops: hypotenuse from (hx0,hy0) to (hx1,hy1) with hy0 < hy1,
// vertical leg at x = rx, signed weight w.
template <class T>
struct AtomData {
    T hx0, hy0, hx1, hy1, rx;
    T slope;  // dx/dy along the hypotenuse
    T w;
};

struct CompiledInstance {
    PizzaInstance source;
    std::vector<int> color_ids;
    std::vector<std::vector<RightTriangleAtom>> atoms;
    std::vector<Q> totals;
    std::vector<std::vector<AtomData<Q>>> exact_atoms;
    std::vector<std::vector<AtomData<double>>> float_atoms;

    std::size_t colors() const { return totals.size(); }
    std::size_t atom_count() const;
};

enum class CutSide { Left, Right };

CompiledInstance compile(const PizzaInstance& inst);

template <class T>
AtomData<T> flatten_atom(const RightTriangleAtom& a);

Q atom_strip_mass(const RightTriangleAtom& atom, const Q& y_lo, const Q& y_hi, const Q& x_cut, CutSide side);

template <class T>
T atom_strip_mass(const AtomData<T>& atom, const T& y_lo, const T& y_hi, const T& x_cut, CutSide side);

template <class T>
std::vector<T> bu_eval(const CompiledInstance& ci, const SpherePointT<T>& p);

// Side-A mass of every color for an already decoded solution.
template <class T>
std::vector<T> side_a_mass(const CompiledInstance& ci, const FeasibleSolutionT<T>& sol);

// Per color (mass on side A, mass on side B), by clipping the triangulation of each polygon.
std::vector<std::pair<Q, Q>> region_mass_oracle(const PizzaInstance& inst, const FeasibleSolution& sol);

template <class T>
T residual(const CompiledInstance& ci, const SpherePointT<T>& p);

}  // namespace pizza

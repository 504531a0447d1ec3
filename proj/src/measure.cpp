#include "pizza/measure.hpp"

namespace pizza {

using num::abs;
using num::max;
using num::min;

std::size_t CompiledInstance::atom_count() const {
    std::size_t n = 0;
    for (const auto& a : atoms) n += a.size();
    return n;
}

template <class T>
AtomData<T> flatten_atom(const RightTriangleAtom& a) {
    AtomData<T> d;
    d.hx0 = num::from_q<T>(a.hyp_low.x);
    d.hy0 = num::from_q<T>(a.hyp_low.y);
    d.hx1 = num::from_q<T>(a.hyp_high.x);
    d.hy1 = num::from_q<T>(a.hyp_high.y);
    d.rx = num::from_q<T>(a.right_vertex().x);
    Q slope = (a.hyp_high.x - a.hyp_low.x) / (a.hyp_high.y - a.hyp_low.y);
    d.slope = num::from_q<T>(slope);
    d.w = num::from_q<T>(a.sign < 0 ? -a.weight : a.weight);
    return d;
}

CompiledInstance compile(const PizzaInstance& inst) {
    if (!inst.normalized) throw GeometryError("compile: instance must be normalized");
    CompiledInstance ci;
    ci.source = inst;
    for (const auto& m : inst.masses) {
        ci.color_ids.push_back(m.color_id);
        std::vector<RightTriangleAtom> atoms;
        for (const auto& poly : m.polygons)
            for (const auto& t : triangulate(poly))
                for (const auto& piece : split_obtuse(t))
                    for (auto& a : decompose_axis_aligned(piece)) atoms.push_back(a);
        Q total = 0;
        std::vector<AtomData<Q>> ea;
        std::vector<AtomData<double>> fa;
        for (const auto& a : atoms) {
            total += Q(a.sign) * a.weight * a.area();
            ea.push_back(flatten_atom<Q>(a));
            fa.push_back(flatten_atom<double>(a));
        }
        if (total != color_total_mass(m)) throw GeometryError("compile: atom masses do not add up to the color total");
        ci.atoms.push_back(std::move(atoms));
        ci.totals.push_back(total);
        ci.exact_atoms.push_back(std::move(ea));
        ci.float_atoms.push_back(std::move(fa));
    }
    return ci;
}

template <class T>
T atom_strip_mass(const AtomData<T>& a, const T& y_lo, const T& y_hi, const T& c, CutSide side) {
    if (y_hi < y_lo) throw std::invalid_argument("atom_strip_mass: inverted strip");
    T lo = max(y_lo, a.hy0), hi = min(y_hi, a.hy1);
    if (!(lo < hi)) return T(0);
    const bool left = side == CutSide::Left;
    auto width = [&](const T& y) {
        T h = a.hx0 + (y - a.hy0) * a.slope;
        T l = min(h, a.rx), r = max(h, a.rx);
        return left ? max(T(0), min(r, c) - l) : max(T(0), r - max(l, c));
    };
    // The cross-section width is linear in y except where the hypotenuse meets x = c.
    T area;
    T ystar = a.hy0 + (c - a.hx0) / a.slope;
    if (lo < ystar && ystar < hi) {
        T wm = width(ystar);
        area = (ystar - lo) * (width(lo) + wm) / T(2) + (hi - ystar) * (wm + width(hi)) / T(2);
    } else {
        area = (hi - lo) * (width(lo) + width(hi)) / T(2);
    }
    return a.w * area;
}

Q atom_strip_mass(const RightTriangleAtom& atom, const Q& y_lo, const Q& y_hi, const Q& x_cut, CutSide side) {
    return atom_strip_mass(flatten_atom<Q>(atom), y_lo, y_hi, x_cut, side);
}

namespace {

template <class T>
const std::vector<std::vector<AtomData<T>>>& atoms_for(const CompiledInstance& ci);
template <>
const std::vector<std::vector<AtomData<Q>>>& atoms_for<Q>(const CompiledInstance& ci) {
    return ci.exact_atoms;
}
template <>
const std::vector<std::vector<AtomData<double>>>& atoms_for<double>(const CompiledInstance& ci) {
    return ci.float_atoms;
}

}  // namespace

template <class T>
std::vector<T> side_a_mass(const CompiledInstance& ci, const FeasibleSolutionT<T>& sol) {
    const auto& all = atoms_for<T>(ci);
    std::vector<T> f(all.size(), T(0));
    for (const auto& s : strips_of(sol)) {
        if (s.sign == 0) continue;
        CutSide side = s.sign > 0 ? CutSide::Left : CutSide::Right;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (const auto& a : all[i]) f[i] += atom_strip_mass(a, s.y_lo, s.y_hi, s.cut, side);
    }
    return f;
}

template <class T>
std::vector<T> bu_eval(const CompiledInstance& ci, const SpherePointT<T>& p) {
    return side_a_mass(ci, sphere_to_solution(p));
}

template <class T>
T residual(const CompiledInstance& ci, const SpherePointT<T>& p) {
    auto f = bu_eval(ci, p);
    auto g = bu_eval(ci, antipode(p));
    T r = T(0);
    for (std::size_t i = 0; i < f.size(); ++i) r = max(r, abs(f[i] - g[i]));
    return r;
}

std::vector<std::pair<Q, Q>> region_mass_oracle(const PizzaInstance& inst, const FeasibleSolution& sol) {
    auto strips = strips_of(sol);
    std::vector<std::pair<Q, Q>> out;
    for (const auto& m : inst.masses) {
        Q ma = 0, mb = 0;
        for (const auto& poly : m.polygons) {
            for (const auto& t : triangulate(poly)) {
                std::vector<Point2> tri{t.a, t.b, t.c};
                for (const auto& s : strips) {
                    if (s.y_lo == s.y_hi) continue;
                    auto band = clip_halfplane(clip_halfplane(tri, Q(0), Q(1), s.y_hi), Q(0), Q(-1), -s.y_lo);
                    if (band.size() < 3) continue;
                    Q left = convex_area(clip_halfplane(band, Q(1), Q(0), s.cut));
                    Q right = convex_area(clip_halfplane(band, Q(-1), Q(0), -s.cut));
                    if (s.sign > 0) {
                        ma += t.weight * left;
                        mb += t.weight * right;
                    } else {
                        ma += t.weight * right;
                        mb += t.weight * left;
                    }
                }
            }
        }
        out.emplace_back(ma, mb);
    }
    return out;
}

#define PIZZA_INSTANTIATE(T)                                                                              \
    template AtomData<T> flatten_atom<T>(const RightTriangleAtom&);                                       \
    template T atom_strip_mass(const AtomData<T>&, const T&, const T&, const T&, CutSide);                \
    template std::vector<T> side_a_mass(const CompiledInstance&, const FeasibleSolutionT<T>&);           \
    template std::vector<T> bu_eval(const CompiledInstance&, const SpherePointT<T>&);                    \
    template T residual(const CompiledInstance&, const SpherePointT<T>&);

PIZZA_INSTANTIATE(Q)
PIZZA_INSTANTIATE(double)

}  // namespace pizza

#include "pizza/sc_path.hpp"

namespace pizza {

using num::abs;
using num::max;
using num::min;

template <class T>
SpherePointT<T> antipode(const SpherePointT<T>& p) {
    SpherePointT<T> out = p;
    for (auto& c : out.coords) c = -c;
    return out;
}

template <class T>
T l1_norm(const SpherePointT<T>& p) {
    T s = T(0);
    for (const auto& c : p.coords) s += abs(c);
    return s;
}

template <class T>
int top_slice_sign(const SpherePointT<T>& p) {
    int r = num::sign(p.coords.at(horizontal_cuts(p.turns)));
    if (r != 0) return r;
    for (const auto& c : p.coords)
        if (num::sign(c) != 0) return num::sign(c);
    return 1;
}

template <class T>
FeasibleSolutionT<T> sphere_to_solution(const SpherePointT<T>& p) {
    const int k = p.turns;
    const int s = horizontal_cuts(k), nx = vertical_cuts(k);
    if (static_cast<int>(p.coords.size()) != k + 2) throw std::invalid_argument("sphere point has wrong length");
    FeasibleSolutionT<T> sol;
    sol.turns = k;
    T running = T(0), used = T(0);
    for (int i = 0; i < s; ++i) {
        const T& Z = p.coords[i];
        running += abs(Z);
        T mag = min(running, T(1)) - used;
        used += mag;
        sol.z.push_back(num::sign(Z) < 0 ? -mag : mag);
    }
    T last = T(1) - used;
    sol.z.push_back(top_slice_sign(p) < 0 ? -last : last);
    for (int i = 0; i < nx; ++i) {
        const T& X = p.coords[s + 1 + i];
        sol.x.push_back(min(abs(X), T(1)));
        sol.x_sign.push_back(num::sign(X));
    }
    return sol;
}

template <class T>
std::vector<Strip<T>> strips_of(const FeasibleSolutionT<T>& sol) {
    std::vector<Strip<T>> out;
    T y = T(0);
    for (std::size_t i = 0; i < sol.z.size(); ++i) {
        Strip<T> st;
        st.index = static_cast<int>(i) + 1;
        st.y_lo = y;
        y += abs(sol.z[i]);
        st.y_hi = y;
        st.sign = num::sign(sol.z[i]);
        st.has_cut = i >= 1 && i - 1 < sol.x.size();
        st.cut = st.has_cut ? sol.x[i - 1] : T(1);
        out.push_back(st);
    }
    return out;
}

template <class T>
bool path_start(const FeasibleSolutionT<T>& sol, T& x, T& y) {
    std::vector<Strip<T>> live;
    for (const auto& s : strips_of(sol))
        if (s.sign != 0) live.push_back(s);
    if (live.size() < 2) return false;
    x = live[0].sign * live[1].sign < 0 ? T(0) : T(1);
    y = live[0].y_hi;
    return true;
}

template <class T>
std::vector<Move> turn_moves(const FeasibleSolutionT<T>& sol) {
    std::vector<Strip<T>> live;
    for (const auto& s : strips_of(sol))
        if (s.sign != 0) live.push_back(s);
    std::vector<Move> moves;
    const std::size_t r = live.size();
    // i and i' are 1-based positions in T; the comparison uses the cut of each strip.
    for (std::size_t i = 2, ip = 3; ip <= r; ++i, ++ip) {
        int zz = live[i - 1].sign * live[ip - 1].sign;
        T delta = live[ip - 1].cut - live[i - 1].cut;
        int d = num::sign(delta);
        if (zz * d > 0) moves.push_back(Move::Right);
        else if (zz * d < 0) moves.push_back(Move::Left);
        else if (zz > 0) moves.push_back(Move::Up);
        else moves.push_back(Move::Left);
    }
    return moves;
}

template <class T>
SCPathT<T> solution_to_path(const FeasibleSolutionT<T>& sol) {
    std::vector<Strip<T>> live;
    for (const auto& s : strips_of(sol))
        if (s.sign != 0) live.push_back(s);
    if (live.empty()) throw std::invalid_argument("solution has no nonzero slice");

    SCPathT<T> path;
    auto add_vertical = [&](const T& x, const T& y0, const T& y1) {
        if (!path.segments.empty()) {
            auto& last = path.segments.back();
            if (!last.horizontal && last.x1 == x && last.y1 == y0) {
                last.y1 = y1;
                return;
            }
        }
        path.segments.push_back({x, y0, x, y1, false, false, +1});
    };
    auto add_horizontal = [&](const T& xa, const T& xb, const T& y, int dir, bool wraps) {
        path.segments.push_back({xa, y, xb, y, true, wraps, dir});
    };

    for (std::size_t t = 0; t < live.size(); ++t) {
        const Strip<T>& a = live[t];
        if (a.has_cut) add_vertical(a.cut, a.y_lo, a.y_hi);
        if (t + 1 == live.size()) break;
        const Strip<T>& b = live[t + 1];
        const T y = a.y_hi;
        const T ca = a.cut, cb = b.cut;
        if (a.sign * b.sign > 0) {
            if (ca != cb) add_horizontal(ca, cb, y, num::sign(cb - ca) > 0 ? +1 : -1, false);
            continue;
        }
        // Opposite signs: the boundary runs the long way round through the seam.
        int dir = num::sign(cb - ca) > 0 ? -1 : (num::sign(cb - ca) < 0 ? +1 : -1);
        const T from_edge = dir < 0 ? T(0) : T(1);
        const T to_edge = dir < 0 ? T(1) : T(0);
        if (ca == from_edge) add_horizontal(to_edge, cb, y, dir, false);
        else if (cb == to_edge) add_horizontal(ca, from_edge, y, dir, false);
        else add_horizontal(ca, cb, y, dir, true);
    }
    return path;
}

Side point_side(const FeasibleSolution& sol, const Point2& q) {
    auto strips = strips_of(sol);
    auto side_in = [&](const Strip<Q>& s) -> Side {
        if (!s.has_cut) return s.sign > 0 ? Side::A : Side::B;
        if (q.x == s.cut) return Side::Boundary;
        bool left = q.x < s.cut;
        bool a = s.sign > 0 ? left : !left && q.x > s.cut;
        return a ? Side::A : Side::B;
    };
    const Strip<Q>* below = nullptr;
    const Strip<Q>* above = nullptr;
    for (const auto& s : strips) {
        if (s.sign == 0) continue;
        if (s.y_lo < q.y && q.y < s.y_hi) return side_in(s);
        if (s.y_hi == q.y) below = &s;
        if (s.y_lo == q.y && !above) above = &s;
    }
    // On a slice level: a side only if both neighbouring slices agree there.
    if (below && above) {
        Side sb = side_in(*below), sa = side_in(*above);
        return sb == sa ? sb : Side::Boundary;
    }
    if (below) return side_in(*below);
    if (above) return side_in(*above);
    return Side::Boundary;
}

int turn_count(const SCPath& path) {
    int turns = 0;
    for (std::size_t i = 1; i < path.segments.size(); ++i)
        if (path.segments[i].horizontal != path.segments[i - 1].horizontal) ++turns;
    return turns;
}

bool is_y_monotone(const SCPath& path) {
    for (const auto& s : path.segments)
        if (!s.horizontal && s.y1 < s.y0) return false;
    return true;
}

void path_polyline(const SCPath& path, std::vector<Point2>& pts, std::vector<bool>& wraps) {
    pts.clear();
    wraps.clear();
    for (const auto& s : path.segments) {
        Point2 a{s.x0, s.y0}, b{s.x1, s.y1};
        if (pts.empty() || !(pts.back() == a)) {
            if (!pts.empty()) wraps.push_back(false);
            pts.push_back(a);
        }
        pts.push_back(b);
        wraps.push_back(s.wraps);
    }
}

SpherePoint make_sphere_point(const std::vector<Q>& coords) {
    if (coords.size() < 2) throw std::invalid_argument("sphere point needs at least 2 coordinates");
    SpherePoint p;
    p.coords = coords;
    p.turns = turns_for_dimension(static_cast<int>(coords.size()));
    if (l1_norm(p) != p.radius()) throw std::invalid_argument("sphere point is not on the L1 sphere of radius k+1");
    return p;
}

FeasibleSolutionT<double> to_double(const FeasibleSolution& sol) {
    FeasibleSolutionT<double> d;
    d.turns = sol.turns;
    d.x_sign = sol.x_sign;
    for (const auto& v : sol.z) d.z.push_back(v.to_double());
    for (const auto& v : sol.x) d.x.push_back(v.to_double());
    return d;
}

#define PIZZA_INSTANTIATE(T)                                                              \
    template SpherePointT<T> antipode(const SpherePointT<T>&);                            \
    template T l1_norm(const SpherePointT<T>&);                                           \
    template int top_slice_sign(const SpherePointT<T>&);                                  \
    template FeasibleSolutionT<T> sphere_to_solution(const SpherePointT<T>&);            \
    template std::vector<Strip<T>> strips_of(const FeasibleSolutionT<T>&);               \
    template SCPathT<T> solution_to_path(const FeasibleSolutionT<T>&);                    \
    template std::vector<Move> turn_moves(const FeasibleSolutionT<T>&);             \
    template bool path_start(const FeasibleSolutionT<T>&, T&, T&);

PIZZA_INSTANTIATE(Q)
PIZZA_INSTANTIATE(double)

}  // namespace pizza

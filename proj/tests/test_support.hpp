#pragma once

#include "pizza/geometry.hpp"
#include "pizza/measure.hpp"
#include "pizza/reductions.hpp"
#include "pizza/sc_path.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace testkit {

using pizza::Point2;
using pizza::Q;

inline Q q(long a, long b = 1) { return Q(a, b); }
inline Q qs(const char* s) { return Q::parse(s); }

inline pizza::WeightedPolygon rect(Q x0, Q y0, Q x1, Q y1, Q w = 1) {
    pizza::WeightedPolygon p;
    p.weight = w;
    p.outer = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    return p;
}

inline pizza::WeightedPolygon poly(std::vector<Point2> pts, Q w = 1) {
    pizza::WeightedPolygon p;
    p.weight = w;
    p.outer = std::move(pts);
    return p;
}

inline pizza::PizzaInstance instance(std::vector<std::vector<pizza::WeightedPolygon>> colors) {
    pizza::PizzaInstance inst;
    int id = 0;
    for (auto& c : colors) inst.masses.push_back(pizza::MassDistribution{id++, std::move(c)});
    inst.normalized = true;
    return inst;
}

// Shoelace on plain doubles-free rationals, written independently of the library.
inline Q shoelace(const std::vector<Point2>& c) {
    Q s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& a = c[i];
        const auto& b = c[(i + 1) % c.size()];
        s += a.x * b.y - b.x * a.y;
    }
    return s / Q(2);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
    // Rational in [0,1] with denominator den.
    Q unit(long den = 64) { return Q(integer(0, den), den); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
    bool coin() { return integer(0, 1) == 1; }
    std::mt19937_64& engine() { return g_; }

private:
    std::mt19937_64 g_;
};

inline bool non_obtuse(const Point2& a, const Point2& b, const Point2& c) {
    auto d2 = [](const Point2& u, const Point2& v) { return (u.x - v.x) * (u.x - v.x) + (u.y - v.y) * (u.y - v.y); };
    Q ab = d2(a, b), bc = d2(b, c), ca = d2(c, a);
    return ab + bc >= ca && bc + ca >= ab && ca + ab >= bc;
}

// Random CCW triangle inside the unit square with rational vertices on a 1/den grid.
inline std::vector<Point2> random_triangle(Rng& r, long den = 64) {
    for (;;) {
        std::vector<Point2> t{{r.unit(den), r.unit(den)}, {r.unit(den), r.unit(den)}, {r.unit(den), r.unit(den)}};
        Q s = shoelace(t);
        if (s.is_zero()) continue;
        if (s < Q(0)) std::swap(t[1], t[2]);
        return t;
    }
}

inline pizza::PizzaInstance random_instance(Rng& r, int colors, int max_triangles, long den = 64) {
    std::vector<std::vector<pizza::WeightedPolygon>> cs;
    for (int i = 0; i < colors; ++i) {
        std::vector<pizza::WeightedPolygon> ps;
        int m = static_cast<int>(r.integer(1, max_triangles));
        for (int t = 0; t < m; ++t) ps.push_back(poly(random_triangle(r, den), Q(r.integer(1, 4))));
        cs.push_back(std::move(ps));
    }
    return instance(std::move(cs));
}

inline pizza::SpherePoint random_sphere_point(Rng& r, int k, long den = 32) {
    int dim = pizza::sphere_dimension(k);
    std::vector<Q> raw(dim);
    Q sum = 0;
    for (auto& v : raw) {
        v = Q(r.integer(0, den), den);
        if (r.integer(0, 5) == 0) v = 0;
        sum += v;
    }
    if (sum.is_zero()) {
        raw[0] = 1;
        sum = 1;
    }
    Q radius = Q(k + 1);
    for (auto& v : raw) {
        v = v * radius / sum;
        if (r.coin()) v = -v;
    }
    return pizza::make_sphere_point(raw);
}

// Independent side rule: slice thicknesses stack upward from y=0; a slice's sign says whether
// its part left of the cut belongs to side A.
inline int side_of(const pizza::FeasibleSolutionT<double>& sol, double px, double py) {
    double y = 0;
    for (std::size_t i = 0; i < sol.z.size(); ++i) {
        double t = std::abs(sol.z[i]);
        if (t == 0) continue;
        double top = y + t;
        if (py < top || i + 1 == sol.z.size()) {
            int sign = sol.z[i] > 0 ? 1 : (sol.z[i] < 0 ? -1 : 0);
            double cut = (i >= 1 && i - 1 < sol.x.size()) ? sol.x[i - 1] : 1.0;
            bool left = px < cut;
            return sign > 0 ? (left ? 1 : 0) : (left ? 0 : 1);
        }
        y = top;
    }
    return 0;
}

inline bool inside_triangle(double px, double py, const pizza::Triangle& t) {
    auto cr = [](double ax, double ay, double bx, double by, double cx, double cy) {
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    };
    double ax = t.a.x.to_double(), ay = t.a.y.to_double(), bx = t.b.x.to_double(), by = t.b.y.to_double(),
           cx = t.c.x.to_double(), cy = t.c.y.to_double();
    double d1 = cr(ax, ay, bx, by, px, py), d2 = cr(bx, by, cx, cy, px, py), d3 = cr(cx, cy, ax, ay, px, py);
    bool neg = d1 < 0 || d2 < 0 || d3 < 0, pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(neg && pos);
}

// Midpoint-rule estimate of each color's side-A mass on an n x n grid.
inline std::vector<double> grid_side_a(const pizza::PizzaInstance& inst, const pizza::FeasibleSolution& sol, int n) {
    auto fs = pizza::to_double(sol);
    std::vector<double> out;
    for (const auto& m : inst.masses) {
        std::vector<pizza::Triangle> tris;
        for (const auto& p : m.polygons)
            for (const auto& t : pizza::triangulate(p)) tris.push_back(t);
        double mass = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double px = (i + 0.5) / n, py = (j + 0.5) / n;
                if (side_of(fs, px, py) != 1) continue;
                for (const auto& t : tris)
                    if (inside_triangle(px, py, t)) mass += t.weight.to_double();
            }
        out.push_back(mass / (static_cast<double>(n) * n));
    }
    return out;
}

}  // namespace testkit

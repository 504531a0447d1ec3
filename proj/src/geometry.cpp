#include "pizza/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace pizza {

Q triangle_signed_area(const Point2& a, const Point2& b, const Point2& c) {
    return ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)) / Q(2);
}

Q chain_signed_area(const Chain& c) {
    if (c.size() < 3) throw GeometryError("chain needs at least 3 points");
    Q twice = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& p = c[i];
        const auto& q = c[(i + 1) % c.size()];
        twice += p.x * q.y - q.x * p.y;
    }
    return twice / Q(2);
}

Q polygon_net_area(const WeightedPolygon& p) {
    Q a = abs(chain_signed_area(p.outer));
    for (const auto& h : p.holes) a -= abs(chain_signed_area(h));
    return a;
}

Q color_total_mass(const MassDistribution& m) {
    Q total = 0;
    for (const auto& p : m.polygons) total += p.weight * polygon_net_area(p);
    return total;
}

int orient(const Point2& a, const Point2& b, const Point2& c) {
    return ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)).sign();
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
    return orient(a, b, p) == 0 && min(a.x, b.x) <= p.x && p.x <= max(a.x, b.x) &&
           min(a.y, b.y) <= p.y && p.y <= max(a.y, b.y);
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
        if (o1 != 0 || o2 != 0) return true;
    }
    if (o1 == 0 && on_segment(c, a, b)) return true;
    if (o2 == 0 && on_segment(d, a, b)) return true;
    if (o3 == 0 && on_segment(a, c, d)) return true;
    if (o4 == 0 && on_segment(b, c, d)) return true;
    return false;
}

bool segments_cross_properly(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

int point_in_chain(const Point2& p, const Chain& c) {
    bool inside = false;
    for (std::size_t i = 0, n = c.size(); i < n; ++i) {
        const Point2& a = c[i];
        const Point2& b = c[(i + 1) % n];
        if (on_segment(p, a, b)) return 0;
        if ((a.y > p.y) != (b.y > p.y)) {
            // x-coordinate of the edge at height p.y compared with p.x, without division.
            Q lhs = (p.x - a.x) * (b.y - a.y);
            Q rhs = (b.x - a.x) * (p.y - a.y);
            bool left = (b.y > a.y) ? (lhs < rhs) : (lhs > rhs);
            if (left) inside = !inside;
        }
    }
    return inside ? 1 : -1;
}

namespace {

void validate_chain(const Chain& c, const char* what) {
    const std::size_t n = c.size();
    if (n < 3) throw GeometryError(std::string(what) + ": chain needs at least 3 points");
    for (std::size_t i = 0; i < n; ++i)
        if (c[i] == c[(i + 1) % n]) throw GeometryError(std::string(what) + ": repeated consecutive point");
    if (chain_signed_area(c).is_zero()) throw GeometryError(std::string(what) + ": zero signed area");
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 &a = c[i], &b = c[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point2 &p = c[j], &q = c[(j + 1) % n];
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (!adjacent) {
                if (segments_intersect(a, b, p, q))
                    throw GeometryError(std::string(what) + ": self-intersecting chain");
                continue;
            }
            // Adjacent edges share one endpoint; they must not fold back over each other.
            const Point2& shared = (j == i + 1) ? b : a;
            const Point2& e1 = (j == i + 1) ? a : b;
            const Point2& e2 = (j == i + 1) ? q : p;
            if (orient(e1, shared, e2) == 0) {
                Q dot = (e1.x - shared.x) * (e2.x - shared.x) + (e1.y - shared.y) * (e2.y - shared.y);
                if (dot > Q(0)) throw GeometryError(std::string(what) + ": self-intersecting chain");
            }
        }
    }
}

bool chains_touch(const Chain& a, const Chain& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) return true;
    return false;
}

}  // namespace

void validate_polygon(const WeightedPolygon& p) {
    if (p.weight <= Q(0)) throw GeometryError("nonpositive weight");
    validate_chain(p.outer, "outer");
    if (chain_signed_area(p.outer) < Q(0)) throw GeometryError("orientation: expected solid (CCW)");
    for (std::size_t h = 0; h < p.holes.size(); ++h) {
        const Chain& hole = p.holes[h];
        validate_chain(hole, "hole");
        if (chain_signed_area(hole) > Q(0)) throw GeometryError("orientation: expected hole (CW)");
        if (chains_touch(hole, p.outer) || point_in_chain(hole[0], p.outer) != 1)
            throw GeometryError("hole not strictly inside its solid polygon");
        for (std::size_t g = 0; g < h; ++g) {
            const Chain& other = p.holes[g];
            if (chains_touch(hole, other) || point_in_chain(hole[0], other) != -1 ||
                point_in_chain(other[0], hole) != -1)
                throw GeometryError("holes overlap");
        }
    }
}

void validate_instance(const PizzaInstance& inst) {
    if (inst.masses.empty()) throw GeometryError("instance has no mass distributions");
    for (const auto& m : inst.masses) {
        if (m.polygons.empty()) throw GeometryError("color " + std::to_string(m.color_id) + " has no polygons");
        for (const auto& p : m.polygons) validate_polygon(p);
        if (color_total_mass(m) <= Q(0))
            throw GeometryError("color " + std::to_string(m.color_id) + " has zero total mass");
    }
}

std::pair<PizzaInstance, Transform> normalize_instance(const PizzaInstance& inst) {
    bool first = true;
    Q minx, maxx, miny, maxy;
    auto visit = [&](const Chain& c) {
        for (const auto& p : c) {
            if (first) {
                minx = maxx = p.x;
                miny = maxy = p.y;
                first = false;
            } else {
                minx = min(minx, p.x); maxx = max(maxx, p.x);
                miny = min(miny, p.y); maxy = max(maxy, p.y);
            }
        }
    };
    for (const auto& m : inst.masses)
        for (const auto& p : m.polygons) {
            visit(p.outer);
            for (const auto& h : p.holes) visit(h);
        }
    if (first) throw GeometryError("normalize: empty instance");
    Q side = max(maxx - minx, maxy - miny);
    if (side.is_zero()) throw GeometryError("normalize: zero total extent");

    Transform tr;
    bool inside_unit = minx >= Q(0) && miny >= Q(0) && maxx <= Q(1) && maxy <= Q(1);
    if (!inside_unit) {
        tr.shift_x = -minx;
        tr.shift_y = -miny;
        tr.scale = Q(1) / side;
    }
    PizzaInstance out = inst;
    for (auto& m : out.masses)
        for (auto& p : m.polygons) {
            for (auto& v : p.outer) v = tr.apply(v);
            for (auto& h : p.holes)
                for (auto& v : h) v = tr.apply(v);
        }
    out.normalized = true;
    return {out, tr};
}

// ---------------------------------------------------------------------------
// Triangulation: bridge holes into the outer chain, then clip ears.

namespace {

// True when segments [m,v] and [p,q] meet in at most the single point `allowed`.
bool meets_only_at(const Point2& m, const Point2& v, const Point2& p, const Point2& q, const Point2& allowed) {
    if (!segments_intersect(m, v, p, q)) return true;
    if (orient(m, v, p) == 0 && orient(m, v, q) == 0) {
        // Collinear: overlapping in more than a point is never allowed.
        int inside = 0;
        for (const Point2* e : {&p, &q})
            if (on_segment(*e, m, v) && !(*e == allowed)) ++inside;
        if (on_segment(m, p, q) && !(m == allowed)) ++inside;
        if (on_segment(v, p, q) && !(v == allowed)) ++inside;
        return inside == 0;
    }
    return p == allowed || q == allowed;
}

bool inside_region(const Point2& pt, const Chain& outer, const std::vector<Chain>& holes) {
    if (point_in_chain(pt, outer) != 1) return false;
    for (const auto& h : holes)
        if (point_in_chain(pt, h) != -1) return false;
    return true;
}

std::vector<Point2> bridge_holes(const WeightedPolygon& poly) {
    std::vector<Point2> merged = poly.outer;
    std::vector<std::size_t> order(poly.holes.size());
    std::iota(order.begin(), order.end(), 0);
    auto rightmost = [&](const Chain& h) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < h.size(); ++i)
            if (h[i].x > h[best].x || (h[i].x == h[best].x && h[i].y < h[best].y)) best = i;
        return best;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Point2& pa = poly.holes[a][rightmost(poly.holes[a])];
        const Point2& pb = poly.holes[b][rightmost(poly.holes[b])];
        if (pa.x != pb.x) return pa.x > pb.x;
        return a < b;
    });

    for (std::size_t hi : order) {
        const Chain& hole = poly.holes[hi];
        std::size_t mi = rightmost(hole);
        const Point2 m = hole[mi];

        std::vector<std::size_t> cand(merged.size());
        std::iota(cand.begin(), cand.end(), 0);
        auto d2 = [&](const Point2& v) { return (v.x - m.x) * (v.x - m.x) + (v.y - m.y) * (v.y - m.y); };
        std::stable_sort(cand.begin(), cand.end(),
                         [&](std::size_t a, std::size_t b) { return d2(merged[a]) < d2(merged[b]); });

        std::size_t chosen = merged.size();
        for (std::size_t vi : cand) {
            const Point2& v = merged[vi];
            if (v == m) continue;
            bool ok = true;
            for (std::size_t e = 0; ok && e < merged.size(); ++e)
                ok = meets_only_at(m, v, merged[e], merged[(e + 1) % merged.size()], v);
            for (const auto& h : poly.holes)
                for (std::size_t e = 0; ok && e < h.size(); ++e)
                    ok = meets_only_at(m, v, h[e], h[(e + 1) % h.size()], m);
            if (!ok) continue;
            Point2 mid{(m.x + v.x) / Q(2), (m.y + v.y) / Q(2)};
            if (!inside_region(mid, poly.outer, poly.holes)) continue;
            chosen = vi;
            break;
        }
        if (chosen == merged.size()) throw GeometryError("triangulate: no visible bridge vertex for hole");

        std::vector<Point2> next;
        next.reserve(merged.size() + hole.size() + 2);
        for (std::size_t i = 0; i <= chosen; ++i) next.push_back(merged[i]);
        for (std::size_t k = 0; k <= hole.size(); ++k) next.push_back(hole[(mi + k) % hole.size()]);
        next.push_back(merged[chosen]);
        for (std::size_t i = chosen + 1; i < merged.size(); ++i) next.push_back(merged[i]);
        merged.swap(next);
    }
    return merged;
}

bool in_closed_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
    return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
}
bool in_open_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
    return orient(a, b, p) > 0 && orient(b, c, p) > 0 && orient(c, a, p) > 0;
}

bool is_ear(const std::vector<Point2>& v, std::size_t i, bool strict) {
    const std::size_t n = v.size();
    const Point2& a = v[(i + n - 1) % n];
    const Point2& b = v[i];
    const Point2& c = v[(i + 1) % n];
    if (orient(a, b, c) <= 0) return false;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
        const Point2& p = v[j];
        if (p == a || p == b || p == c) continue;
        if (strict ? in_closed_triangle(p, a, b, c) : in_open_triangle(p, a, b, c)) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Point2& p = v[j];
        const Point2& q = v[(j + 1) % n];
        if (segments_cross_properly(a, c, p, q)) return false;
    }
    return true;
}

}  // namespace

std::vector<Triangle> triangulate(const WeightedPolygon& poly) {
    validate_chain(poly.outer, "outer");
    if (chain_signed_area(poly.outer) < Q(0)) throw GeometryError("orientation: expected solid (CCW)");
    std::vector<Point2> v = bridge_holes(poly);

    std::vector<Triangle> out;
    while (v.size() > 3) {
        const std::size_t n = v.size();
        bool progressed = false;
        for (std::size_t i = 0; i < n && !progressed; ++i) {
            const Point2& a = v[(i + n - 1) % n];
            const Point2& c = v[(i + 1) % n];
            if (orient(a, v[i], c) == 0 || a == c) {
                v.erase(v.begin() + static_cast<long>(i));
                progressed = true;
            }
        }
        for (bool strict : {true, false}) {
            for (std::size_t i = 0; i < n && !progressed; ++i) {
                if (!is_ear(v, i, strict)) continue;
                out.push_back({v[(i + n - 1) % n], v[i], v[(i + 1) % n], poly.weight});
                v.erase(v.begin() + static_cast<long>(i));
                progressed = true;
            }
        }
        if (!progressed) throw GeometryError("triangulate: no ear found (degenerate chain)");
    }
    if (v.size() == 3 && orient(v[0], v[1], v[2]) > 0) out.push_back({v[0], v[1], v[2], poly.weight});

    Q sum = 0;
    for (const auto& t : out) sum += triangle_signed_area(t.a, t.b, t.c);
    if (sum != polygon_net_area(poly)) throw GeometryError("triangulate: area not conserved");
    return out;
}

// ---------------------------------------------------------------------------

namespace {
Q dist2(const Point2& p, const Point2& q) { return (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y); }

Triangle ccw(Triangle t) {
    if (orient(t.a, t.b, t.c) < 0) std::swap(t.b, t.c);
    return t;
}
}  // namespace

bool is_obtuse(const Triangle& t) {
    Q ab = dist2(t.a, t.b), bc = dist2(t.b, t.c), ca = dist2(t.c, t.a);
    Q longest = max(ab, max(bc, ca));
    return (ab + bc + ca - longest) < longest;
}

std::vector<Triangle> split_obtuse(const Triangle& t) {
    if (!is_obtuse(t)) return {t};
    // Relabel so that AC is the longest side and B the obtuse vertex.
    Point2 A = t.a, B = t.b, C = t.c;
    Q ab = dist2(A, B), bc = dist2(B, C), ca = dist2(C, A);
    if (ab >= bc && ab >= ca) {
        std::swap(B, C);  // longest side was AB
    } else if (bc >= ab && bc >= ca) {
        std::swap(A, B);  // longest side was BC
    }
    Q ux = C.x - A.x, uy = C.y - A.y;
    Q tpar = ((B.x - A.x) * ux + (B.y - A.y) * uy) / (ux * ux + uy * uy);
    Point2 D{A.x + tpar * ux, A.y + tpar * uy};
    return {ccw({A, B, D, t.weight}), ccw({D, B, C, t.weight})};
}

Point2 RightTriangleAtom::right_vertex() const {
    if (orientation == Quadrant::I || orientation == Quadrant::II) return {hyp_high.x, hyp_low.y};
    return {hyp_low.x, hyp_high.y};
}

Q RightTriangleAtom::area() const {
    return abs((hyp_high.x - hyp_low.x) * (hyp_high.y - hyp_low.y)) / Q(2);
}

namespace {

// Atom for a right triangle with axis-parallel legs meeting at r.
RightTriangleAtom make_atom(const Point2& r, const Point2& p, const Point2& q, int sign, const Q& w) {
    Point2 lo = p, hi = q;
    if (hi.y < lo.y) std::swap(lo, hi);
    // The vertex sharing y with r carries the horizontal leg, the other the vertical leg.
    const Point2& horiz = (p.y == r.y) ? p : q;
    const Point2& vert = (p.y == r.y) ? q : p;
    int dx = (horiz.x - r.x).sign(), dy = (vert.y - r.y).sign();
    Quadrant o = dx > 0 ? (dy > 0 ? Quadrant::I : Quadrant::IV) : (dy > 0 ? Quadrant::II : Quadrant::III);
    return {lo, hi, o, sign, w};
}

bool right_vertex_of(const Point2& r, const Point2& p, const Point2& q) {
    return (p.y == r.y && q.x == r.x && p.x != r.x && q.y != r.y) ||
           (q.y == r.y && p.x == r.x && q.x != r.x && p.y != r.y);
}

}  // namespace

std::vector<RightTriangleAtom> decompose_axis_aligned(const Triangle& t) {
    if (orient(t.a, t.b, t.c) == 0) throw GeometryError("decompose: degenerate triangle");
    const Point2* v[3] = {&t.a, &t.b, &t.c};
    for (int i = 0; i < 3; ++i) {
        const Point2 &r = *v[i], &p = *v[(i + 1) % 3], &q = *v[(i + 2) % 3];
        if (right_vertex_of(r, p, q)) return {make_atom(r, p, q, +1, t.weight)};
    }
    if (is_obtuse(t)) throw GeometryError("decompose: obtuse triangle must be split first");

    Q minx = min(t.a.x, min(t.b.x, t.c.x)), maxx = max(t.a.x, max(t.b.x, t.c.x));
    Q miny = min(t.a.y, min(t.b.y, t.c.y)), maxy = max(t.a.y, max(t.b.y, t.c.y));
    for (int i = 0; i < 3; ++i) {
        const Point2& B = *v[i];
        bool cx = B.x == minx || B.x == maxx, cy = B.y == miny || B.y == maxy;
        if (!cx || !cy) continue;
        Q xf = (B.x == minx) ? maxx : minx;
        Q yf = (B.y == miny) ? maxy : miny;
        for (int swap = 0; swap < 2; ++swap) {
            const Point2& A = *v[(i + 1 + swap) % 3];  // on the far vertical side
            const Point2& C = *v[(i + 2 - swap) % 3];  // on the far horizontal side
            if (A.x != xf || C.y != yf) continue;
            Point2 X{xf, yf}, Y{xf, B.y}, Z{B.x, yf};
            std::vector<RightTriangleAtom> out;
            auto add = [&](const Point2& r, const Point2& p, const Point2& q, int s) {
                if (orient(r, p, q) == 0) return;  // zero-area atom contributes nothing
                out.push_back(make_atom(r, p, q, s, t.weight));
            };
            add(Y, B, X, +1);
            add(Z, B, X, +1);
            add(Y, A, B, -1);
            add(X, A, C, -1);
            add(Z, C, B, -1);
            return out;
        }
    }
    throw GeometryError("decompose: no corner vertex with opposite-side partners");
}

// ---------------------------------------------------------------------------

std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, const Q& a, const Q& b, const Q& c) {
    std::vector<Point2> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    auto val = [&](const Point2& p) { return a * p.x + b * p.y - c; };
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        Q vp = val(p), vq = val(q);
        bool pin = vp <= Q(0), qin = vq <= Q(0);
        if (pin) out.push_back(p);
        if (pin != qin && vp != Q(0) && vq != Q(0)) {
            Q s = vp / (vp - vq);
            out.push_back({p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)});
        }
    }
    return out;
}

Q convex_area(const std::vector<Point2>& poly) {
    if (poly.size() < 3) return Q(0);
    return abs(chain_signed_area(poly));
}

}  // namespace pizza

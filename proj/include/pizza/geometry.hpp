#pragma once

#include "pizza/exact.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pizza {

struct Point2 {
    Q x, y;
    friend bool operator==(const Point2&, const Point2&) = default;
};

using Chain = std::vector<Point2>;

struct WeightedPolygon {
    Q weight;
    Chain outer;
    std::vector<Chain> holes;
};

struct MassDistribution {
    int color_id = 0;
    std::vector<WeightedPolygon> polygons;
};

struct PizzaInstance {
    std::vector<MassDistribution> masses;
    bool normalized = false;
};

struct Triangle {
    Point2 a, b, c;
    Q weight;
};

enum class Quadrant { I, II, III, IV };

// Axis-aligned right triangle given by its hypotenuse endpoints; the right-angle
// vertex and the quadrant the triangle occupies relative to it follow from the orientation.
struct RightTriangleAtom {
    Point2 hyp_low;
    Point2 hyp_high;
    Quadrant orientation;
    int sign = 1;
    Q weight;

    Point2 right_vertex() const;
    Q area() const;
};

struct Transform {
    Q shift_x, shift_y;
    Q scale = 1;  // applied after the shift: p' = (p + shift) * scale
    Point2 apply(const Point2& p) const { return {(p.x + shift_x) * scale, (p.y + shift_y) * scale}; }
};

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shoelace signed area; positive iff counterclockwise.
Q chain_signed_area(const Chain& c);
Q triangle_signed_area(const Point2& a, const Point2& b, const Point2& c);
Q polygon_net_area(const WeightedPolygon& p);
Q color_total_mass(const MassDistribution& m);

// Structural checks used by the parser: orientation, simplicity, containment, weight.
void validate_polygon(const WeightedPolygon& p);
void validate_instance(const PizzaInstance& inst);

std::pair<PizzaInstance, Transform> normalize_instance(const PizzaInstance& inst);

std::vector<Triangle> triangulate(const WeightedPolygon& poly);
bool is_obtuse(const Triangle& t);
std::vector<Triangle> split_obtuse(const Triangle& t);
std::vector<RightTriangleAtom> decompose_axis_aligned(const Triangle& t);

// Predicates shared by several modules.
int orient(const Point2& a, const Point2& b, const Point2& c);
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);
bool segments_cross_properly(const Point2& a, const Point2& b, const Point2& c, const Point2& d);
bool on_segment(const Point2& p, const Point2& a, const Point2& b);
// 1 strictly inside, 0 on the boundary, -1 outside (any simple chain orientation).
int point_in_chain(const Point2& p, const Chain& c);

// Convex polygon clipping against the half-plane a*x + b*y <= c (exact).
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, const Q& a, const Q& b, const Q& c);
Q convex_area(const std::vector<Point2>& poly);

}  // namespace pizza

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pizza/instance_io.hpp"
#include "test_support.hpp"

using namespace pizza;
using testkit::q;
using testkit::qs;

TEST_CASE("rational parsing is exact") {
    CHECK(qs("0.25") == q(1, 4));
    CHECK(qs("1e-3") == q(1, 1000));
    CHECK(qs("-3/6") == q(-1, 2));
    CHECK(qs("2.5E1") == q(25));
    CHECK(qs("7") == q(7));
    CHECK(qs("010/3") == q(10, 3));
    CHECK(qs("0.0625") == q(1, 16));
    CHECK(q(6, 8).str() == "3/4");
    CHECK(q(-4, 2).str() == "-2");
    CHECK_THROWS(Q::parse("abc"));
    CHECK_THROWS(Q::parse("1/0"));
    CHECK(q(1, 3) + q(1, 6) == q(1, 2));
    CHECK(Q::from_double(0.375) == q(3, 8));
    Q r;
    CHECK(exact_sqrt(q(9, 16), r));
    CHECK(r == q(3, 4));
    CHECK_FALSE(exact_sqrt(q(2), r));
    CHECK(dyadic_floor(q(1, 3), 4) == q(5, 16));
    CHECK(rationalize(0.4999999999, 1000) == q(1, 2));
}

TEST_CASE("chain signed area") {
    Chain ccw{{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}};
    Chain cw(ccw.rbegin(), ccw.rend());
    CHECK(chain_signed_area(ccw) == q(1));
    CHECK(chain_signed_area(cw) == q(-1));
    CHECK(chain_signed_area({{q(0), q(0)}, {q(4), q(0)}, {q(1), q(1)}}) == q(2));
    CHECK_THROWS(chain_signed_area({{q(0), q(0)}, {q(1), q(0)}}));
}

namespace {
const char* kUnitSquare = R"({"masses":[{"color":0,"polygons":[{"weight":"1","outer":[["0","0"],["1","0"],["1","1"],["0","1"]]}]}]})";
}

TEST_CASE("instance parsing and orientation rule") {
    auto inst = parse_instance(kUnitSquare);
    REQUIRE(inst.masses.size() == 1);
    CHECK(polygon_net_area(inst.masses[0].polygons[0]) == q(1));

    const char* cw = R"({"masses":[{"color":0,"polygons":[{"weight":"1","outer":[["0","0"],["0","1"],["1","1"],["1","0"]]}]}]})";
    try {
        parse_instance(cw);
        FAIL("clockwise outer chain accepted");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("orientation") != std::string::npos);
    }

    const char* holed = R"({"masses":[{"color":0,"polygons":[{"weight":"1",
        "outer":[["0","0"],["4","0"],["4","4"],["0","4"]],
        "holes":[[["1","1"],["1","3"],["3","3"],["3","1"]]]}]}]})";
    auto h = parse_instance(holed);
    CHECK(polygon_net_area(h.masses[0].polygons[0]) == q(12));
    CHECK(testkit::shoelace(h.masses[0].polygons[0].outer) + testkit::shoelace(h.masses[0].polygons[0].holes[0]) == q(12));

    const char* ccw_hole = R"({"masses":[{"color":0,"polygons":[{"weight":"1",
        "outer":[["0","0"],["4","0"],["4","4"],["0","4"]],
        "holes":[[["1","1"],["3","1"],["3","3"],["1","3"]]]}]}]})";
    CHECK_THROWS(parse_instance(ccw_hole));
    const char* outside_hole = R"({"masses":[{"color":0,"polygons":[{"weight":"1",
        "outer":[["0","0"],["4","0"],["4","4"],["0","4"]],
        "holes":[[["5","5"],["5","6"],["6","6"],["6","5"]]]}]}]})";
    CHECK_THROWS(parse_instance(outside_hole));
    const char* bowtie = R"({"masses":[{"color":0,"polygons":[{"weight":"1","outer":[["0","0"],["1","1"],["1","0"],["0","1"]]}]}]})";
    CHECK_THROWS(parse_instance(bowtie));
    const char* zero_w = R"({"masses":[{"color":0,"polygons":[{"weight":"0","outer":[["0","0"],["1","0"],["1","1"]]}]}]})";
    CHECK_THROWS(parse_instance(zero_w));
    CHECK_THROWS_AS(parse_instance("{not json"), InputError);
    CHECK_THROWS_AS(parse_instance(R"({"masses":[{"color":0,"polygons":[{"outer":[["x","0"],["1","0"],["1","1"]]}]}]})"), InputError);
}

TEST_CASE("serialization round trip keeps exact rationals and is byte-stable") {
    const char* text = R"({"masses":[{"color":1,"polygons":[{"weight":"1/3","outer":[["0","0"],["0.5","0"],["1/2","1/2"]]}]},
        {"color":0,"polygons":[{"weight":"2","outer":[["0","0"],["4","0"],["4","4"],["0","4"]],
        "holes":[[["1","1"],["1","3"],["3","3"],["3","1"]]]}]}]})";
    auto a = parse_instance(text);
    std::string s1 = serialize_instance(a);
    auto b = parse_instance(s1);
    std::string s2 = serialize_instance(b);
    CHECK(s1 == s2);
    CHECK(s1.find("\"1/3\"") != std::string::npos);
    CHECK(s1.find("\"1/2\"") != std::string::npos);
    CHECK(b.masses[0].color_id == 0);  // colors sorted ascending
    CHECK(b.masses[1].polygons[0].weight == q(1, 3));
}

TEST_CASE("normalization") {
    auto inst = testkit::instance({{testkit::rect(q(2), q(3), q(6), q(5))}});
    inst.normalized = false;
    auto [n, tr] = normalize_instance(inst);
    CHECK(tr.shift_x == q(-2));
    CHECK(tr.shift_y == q(-3));
    CHECK(tr.scale == q(1, 4));
    CHECK(n.masses[0].polygons[0].outer[2] == Point2{q(1), q(1, 2)});
    CHECK(n.normalized);

    auto unit = testkit::instance({{testkit::rect(q(0), q(0), q(1, 2), q(1))}});
    auto [u, ut] = normalize_instance(unit);
    CHECK(ut.scale == q(1));
    CHECK(ut.shift_x == q(0));
    CHECK(u.masses[0].polygons[0].outer == unit.masses[0].polygons[0].outer);

    auto big = testkit::instance({{testkit::rect(q(0), q(0), q(10), q(10), q(3))},
                                  {testkit::rect(q(0), q(0), q(5), q(2), q(1))}});
    auto [bn, bt] = normalize_instance(big);
    CHECK(bt.scale == q(1, 10));
    CHECK(polygon_net_area(bn.masses[0].polygons[0]) == q(1));
    CHECK(bn.masses[0].polygons[0].weight == q(3));
    // mass ratios survive
    CHECK(color_total_mass(big.masses[0]) / color_total_mass(big.masses[1]) ==
          color_total_mass(bn.masses[0]) / color_total_mass(bn.masses[1]));
    // idempotent
    auto [again, at] = normalize_instance(bn);
    CHECK(at.scale == q(1));
    CHECK(serialize_instance(again) == serialize_instance(bn));
}

TEST_CASE("triangulation conserves area") {
    auto quad = testkit::poly({{q(0), q(0)}, {q(3), q(0)}, {q(4), q(2)}, {q(1), q(3)}});
    auto tris = triangulate(quad);
    CHECK(tris.size() == 2);
    Q s = 0;
    for (const auto& t : tris) s += triangle_signed_area(t.a, t.b, t.c);
    CHECK(s == testkit::shoelace(quad.outer));

    auto tri = testkit::poly({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}, q(5));
    auto one = triangulate(tri);
    REQUIRE(one.size() == 1);
    CHECK(one[0].weight == q(5));

    auto holed = testkit::rect(q(0), q(0), q(4), q(4));
    holed.holes.push_back({{q(1), q(1)}, {q(1), q(3)}, {q(3), q(3)}, {q(3), q(1)}});
    Q sum = 0;
    for (const auto& t : triangulate(holed)) {
        CHECK(triangle_signed_area(t.a, t.b, t.c) > q(0));
        sum += triangle_signed_area(t.a, t.b, t.c);
    }
    CHECK(sum == q(12));

    // non-convex outer with two holes
    auto l = testkit::poly({{q(0), q(0)}, {q(6), q(0)}, {q(6), q(2)}, {q(2), q(2)}, {q(2), q(6)}, {q(0), q(6)}});
    l.holes.push_back({{q(1, 2), q(1, 2)}, {q(1, 2), q(3, 2)}, {q(3, 2), q(3, 2)}, {q(3, 2), q(1, 2)}});
    l.holes.push_back({{q(4), q(1, 2)}, {q(4), q(1)}, {q(5), q(1)}, {q(5), q(1, 2)}});
    Q lsum = 0;
    for (const auto& t : triangulate(l)) lsum += triangle_signed_area(t.a, t.b, t.c);
    CHECK(lsum == testkit::shoelace(l.outer) + testkit::shoelace(l.holes[0]) + testkit::shoelace(l.holes[1]));
}

TEST_CASE("obtuse split") {
    Triangle right{{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, q(1)};
    CHECK_FALSE(is_obtuse(right));
    CHECK(split_obtuse(right).size() == 1);

    Triangle t{{q(0), q(0)}, {q(1), q(1)}, {q(4), q(0)}, q(1)};
    CHECK(is_obtuse(t));
    auto parts = split_obtuse(t);
    REQUIRE(parts.size() == 2);
    bool has_foot = false;
    for (const auto& p : parts)
        for (const auto& v : {p.a, p.b, p.c}) has_foot |= v == Point2{q(1), q(0)};
    CHECK(has_foot);

    // projection oracle D = A + ((B-A).(C-A)/|C-A|^2)(C-A) for the longest side AC
    Point2 A{q(0), q(0)}, B{q(1), q(2)}, C{q(5), q(1)};
    Triangle u{A, B, C, q(1)};
    REQUIRE(is_obtuse(u));
    Q tpar = ((B.x - A.x) * (C.x - A.x) + (B.y - A.y) * (C.y - A.y)) /
             ((C.x - A.x) * (C.x - A.x) + (C.y - A.y) * (C.y - A.y));
    Point2 D{A.x + tpar * (C.x - A.x), A.y + tpar * (C.y - A.y)};
    auto up = split_obtuse(u);
    REQUIRE(up.size() == 2);
    bool found = false;
    Q area = 0;
    for (const auto& p : up) {
        for (const auto& v : {p.a, p.b, p.c}) found |= v == D;
        area += abs(triangle_signed_area(p.a, p.b, p.c));
        CHECK_FALSE(is_obtuse(p));
    }
    CHECK(found);
    CHECK(area == abs(triangle_signed_area(A, B, C)));
    CHECK((B.x - D.x) * (C.x - A.x) + (B.y - D.y) * (C.y - A.y) == q(0));
}

TEST_CASE("axis-aligned decomposition") {
    Triangle right{{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, q(1)};
    auto one = decompose_axis_aligned(right);
    REQUIRE(one.size() == 1);
    CHECK(one[0].sign == 1);
    CHECK(one[0].area() == q(1, 2));

    Triangle t{{q(0), q(0)}, {q(4), q(0)}, {q(2), q(3)}, q(1)};
    auto atoms = decompose_axis_aligned(t);
    CHECK(atoms.size() <= 5);
    Q s = 0;
    for (const auto& a : atoms) s += Q(a.sign) * a.area();
    CHECK(s == q(6));

    Triangle general{{q(0), q(1, 4)}, {q(3, 4), q(0)}, {q(1), q(7, 8)}, q(3)};
    REQUIRE_FALSE(is_obtuse(general));
    auto g = decompose_axis_aligned(general);
    CHECK(g.size() == 5);
    int pos = 0, neg = 0;
    Q gs = 0;
    for (const auto& a : g) {
        (a.sign > 0 ? pos : neg)++;
        gs += Q(a.sign) * a.weight * a.area();
        CHECK(a.hyp_low.y < a.hyp_high.y);
    }
    CHECK(pos == 2);
    CHECK(neg == 3);
    CHECK(gs == q(3) * abs(testkit::shoelace({general.a, general.b, general.c})));

    Triangle obtuse{{q(0), q(0)}, {q(1), q(1)}, {q(4), q(0)}, q(1)};
    CHECK_THROWS(decompose_axis_aligned(obtuse));
}

TEST_CASE("decomposition identity on random non-obtuse triangles") {
    testkit::Rng rng(11);
    int tested = 0;
    while (tested < 300) {
        auto v = testkit::random_triangle(rng, 97);
        if (!testkit::non_obtuse(v[0], v[1], v[2])) continue;
        Q w = Q(rng.integer(1, 9), rng.integer(1, 5));
        Triangle t{v[0], v[1], v[2], w};
        Q s = 0;
        for (const auto& a : decompose_axis_aligned(t)) s += Q(a.sign) * a.weight * a.area();
        CHECK(s == w * testkit::shoelace(v));
        ++tested;
    }
}

TEST_CASE("obtuse split conservation on random triangles") {
    testkit::Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        auto v = testkit::random_triangle(rng, 50);
        Triangle t{v[0], v[1], v[2], q(1)};
        Q s = 0;
        for (const auto& p : split_obtuse(t)) {
            CHECK_FALSE(is_obtuse(p));
            s += abs(triangle_signed_area(p.a, p.b, p.c));
        }
        CHECK(s == testkit::shoelace(v));
    }
}

TEST_CASE("clipping helpers") {
    std::vector<Point2> sq{{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}};
    CHECK(convex_area(clip_halfplane(sq, q(1), q(0), q(1, 4))) == q(1, 4));
    CHECK(convex_area(clip_halfplane(sq, q(1), q(1), q(1))) == q(1, 2));
    CHECK(clip_halfplane(sq, q(1), q(0), q(-1)).empty());
    CHECK(point_in_chain({q(1, 2), q(1, 2)}, sq) == 1);
    CHECK(point_in_chain({q(1), q(1, 2)}, sq) == 0);
    CHECK(point_in_chain({q(2), q(1, 2)}, sq) == -1);
}

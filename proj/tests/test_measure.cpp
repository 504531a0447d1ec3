#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pizza/circuit.hpp"
#include "pizza/etr.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <set>

using namespace pizza;
using testkit::q;
using testkit::qs;

namespace {

PizzaInstance unit_square() { return testkit::instance({{testkit::rect(q(0), q(0), q(1), q(1))}}); }

FeasibleSolution sol_of(std::vector<Q> z, std::vector<Q> x) {
    FeasibleSolution s;
    s.turns = static_cast<int>(z.size() + x.size()) - 2;
    s.z = std::move(z);
    s.x = std::move(x);
    s.x_sign.assign(s.x.size(), 1);
    return s;
}

}  // namespace

TEST_CASE("compile totals") {
    CHECK(compile(unit_square()).totals == std::vector<Q>{q(1)});
    auto tri = testkit::instance({{testkit::poly({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}, q(2))}});
    CHECK(compile(tri).totals == std::vector<Q>{q(1)});

    auto holed = testkit::rect(q(0), q(0), q(4), q(4));
    holed.holes.push_back({{q(1), q(1)}, {q(1), q(3)}, {q(3), q(3)}, {q(3), q(1)}});
    auto raw = testkit::instance({{holed}});
    raw.normalized = false;
    CHECK_THROWS(compile(raw));
    auto ci = compile(normalize_instance(raw).first);
    CHECK(ci.totals == std::vector<Q>{q(3, 4)});

    // deterministic atom order
    auto a = compile(normalize_instance(raw).first), b = compile(normalize_instance(raw).first);
    REQUIRE(a.atoms[0].size() == b.atoms[0].size());
    for (std::size_t i = 0; i < a.atoms[0].size(); ++i) CHECK(a.atoms[0][i].hyp_low == b.atoms[0][i].hyp_low);
}

TEST_CASE("atom strip mass examples") {
    Triangle t{{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, q(1)};
    auto atoms = decompose_axis_aligned(t);
    REQUIRE(atoms.size() == 1);
    const auto& a = atoms[0];
    CHECK(atom_strip_mass(a, q(0), q(1), q(1), CutSide::Left) == q(1, 2));
    CHECK(atom_strip_mass(a, q(0), q(1, 2), q(1), CutSide::Left) == q(3, 8));
    CHECK(atom_strip_mass(a, q(0), q(1, 2), q(1, 4), CutSide::Left) == q(1, 8));
    CHECK(atom_strip_mass(a, q(0), q(1, 2), q(1, 4), CutSide::Right) == q(3, 8) - q(1, 8));
    CHECK(atom_strip_mass(a, q(1, 2), q(1, 2), q(1, 4), CutSide::Right) == q(0));
    CHECK_THROWS(atom_strip_mass(a, q(1, 2), q(1, 4), q(1, 4), CutSide::Left));

    // every orientation against a clipping computation on the same triangle
    testkit::Rng rng(31);
    for (int it = 0; it < 200; ++it) {
        auto v = testkit::random_triangle(rng, 40);
        Triangle tri{v[0], v[1], v[2], q(1)};
        if (is_obtuse(tri)) continue;
        Q ylo = rng.unit(40), yhi = rng.unit(40), c = rng.unit(40);
        if (yhi < ylo) std::swap(ylo, yhi);
        Q left = 0;  // atom masses already carry their sign
        for (const auto& at : decompose_axis_aligned(tri)) left += atom_strip_mass(at, ylo, yhi, c, CutSide::Left);
        std::vector<Point2> poly{v[0], v[1], v[2]};
        auto band = clip_halfplane(clip_halfplane(clip_halfplane(poly, q(0), q(1), yhi), q(0), q(-1), -ylo), q(1), q(0), c);
        CHECK(left == convex_area(band));
    }
}

TEST_CASE("Borsuk-Ulam function examples") {
    auto ci = compile(unit_square());
    auto f = bu_eval(ci, make_sphere_point({qs("0.5"), qs("1.5"), q(0)}));
    CHECK(f == std::vector<Q>{q(1, 2)});
    auto g = bu_eval(ci, make_sphere_point({qs("0.5"), qs("1.0"), qs("0.5")}));
    CHECK(g == std::vector<Q>{q(3, 4)});
    CHECK(residual(ci, make_sphere_point({qs("0.5"), qs("1.5"), q(0)})) == q(0));
    CHECK(residual(ci, make_sphere_point({qs("0.5"), qs("1.0"), qs("0.5")})) == q(1, 2));

    auto tri = testkit::instance({{testkit::poly({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}})}});
    auto oracle = region_mass_oracle(tri, sol_of({q(1, 2), q(1, 2)}, {q(0)}));
    REQUIRE(oracle.size() == 1);
    CHECK(oracle[0].first == q(3, 8));
    CHECK(oracle[0].second == q(1, 8));
    auto sq = region_mass_oracle(unit_square(), sol_of({q(1, 2), q(-1, 2)}, {q(1)}));
    CHECK(sq[0].first == q(1, 2));
    CHECK(sq[0].second == q(1, 2));
}

TEST_CASE("conservation, oracle equivalence, range and residual symmetry on random instances") {
    testkit::Rng rng(32);
    for (int it = 0; it < 120; ++it) {
        auto inst = testkit::random_instance(rng, static_cast<int>(rng.integer(1, 4)), 3);
        auto ci = compile(inst);
        int k = static_cast<int>(rng.integer(0, 4));
        auto p = testkit::random_sphere_point(rng, k);
        auto f = bu_eval(ci, p);
        auto g = bu_eval(ci, antipode(p));
        auto oracle = region_mass_oracle(inst, sphere_to_solution(p));
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(f[i] + g[i] == ci.totals[i]);
            CHECK(f[i] == oracle[i].first);
            CHECK(oracle[i].first + oracle[i].second == ci.totals[i]);
            CHECK(f[i] >= q(0));
            CHECK(f[i] <= ci.totals[i]);
        }
        CHECK(residual(ci, p) == residual(ci, antipode(p)));

        std::vector<double> c;
        for (const auto& v : p.coords) c.push_back(v.to_double());
        auto fd = bu_eval(ci, SpherePointT<double>{c, k});
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(fd[i] - f[i].to_double()) <= 1e-12);
    }
}

TEST_CASE("independent grid integration agrees with the exact side-A mass") {
    testkit::Rng rng(33);
    for (int it = 0; it < 6; ++it) {
        auto inst = testkit::random_instance(rng, 2, 2);
        auto ci = compile(inst);
        auto p = testkit::random_sphere_point(rng, 2);
        auto sol = sphere_to_solution(p);
        auto f = bu_eval(ci, p);
        auto est = testkit::grid_side_a(inst, sol, 600);
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(est[i] - f[i].to_double()) < 0.02 * ci.totals[i].to_double() + 1e-3);
    }
}

TEST_CASE("moving a + strip's cut outward never decreases side A") {
    testkit::Rng rng(34);
    for (int it = 0; it < 60; ++it) {
        auto inst = testkit::random_instance(rng, 3, 3);
        auto ci = compile(inst);
        auto sol = sol_of({q(1, 3), q(1, 3), q(-1, 3)}, {rng.unit(32)});
        auto f0 = side_a_mass(ci, sol);
        sol.x[0] = min(q(1), sol.x[0] + rng.unit(8));
        auto f1 = side_a_mass(ci, sol);
        for (std::size_t i = 0; i < f0.size(); ++i) CHECK(f1[i] >= f0[i]);
    }
}

TEST_CASE("side-A mass is quadratic in a cut between breakpoints") {
    testkit::Rng rng(35);
    for (int it = 0; it < 40; ++it) {
        auto inst = testkit::random_instance(rng, 2, 2);
        auto ci = compile(inst);
        auto sol = sol_of({q(1, 4), q(3, 4)}, {q(0)});
        Q ylo = q(1, 4), yhi = q(1);
        std::set<Q> br{q(0), q(1)};
        for (const auto& color : ci.atoms)
            for (const auto& a : color) {
                br.insert(a.hyp_low.x);
                br.insert(a.hyp_high.x);
                br.insert(a.right_vertex().x);
                Q slope = (a.hyp_high.x - a.hyp_low.x) / (a.hyp_high.y - a.hyp_low.y);
                for (const Q& y : {ylo, yhi})
                    if (a.hyp_low.y < y && y < a.hyp_high.y) br.insert(a.hyp_low.x + (y - a.hyp_low.y) * slope);
            }
        std::vector<Q> b(br.begin(), br.end());
        std::size_t j = rng.integer(0, b.size() - 2);
        Q lo = b[j], step = (b[j + 1] - b[j]) / q(5);
        std::vector<std::vector<Q>> vals;
        for (int m = 1; m <= 4; ++m) {
            sol.x[0] = lo + Q(m) * step;
            vals.push_back(side_a_mass(ci, sol));
        }
        for (std::size_t i = 0; i < vals[0].size(); ++i)
            CHECK(vals[3][i] - q(3) * vals[2][i] + q(3) * vals[1][i] - vals[0][i] == q(0));
    }
}

TEST_CASE("circuit hash-consing and evaluation") {
    Circuit c;
    int x = c.variable(0), y = c.variable(1);
    CHECK(c.add(x, y) == c.add(y, x));
    CHECK(c.neg(c.neg(x)) == x);
    CHECK(c.is_const(c.add(c.constant(q(1)), c.constant(q(2)))));
    int m = c.max(x, y);
    int e = c.sub(c.mul(m, c.constant(q(3))), c.abs(y));
    auto v = c.evaluate<Q>({q(1, 2), q(-2)});
    CHECK(v[m] == q(1, 2));
    CHECK(v[e] == q(3, 2) - q(2));
    auto vd = c.evaluate<double>({0.5, -2.0});
    CHECK(vd[e] == doctest::Approx(-0.5));
}

TEST_CASE("circuit Borsuk-Ulam evaluation matches the measure engine") {
    testkit::Rng rng(36);
    for (int it = 0; it < 40; ++it) {
        auto inst = testkit::random_instance(rng, static_cast<int>(rng.integer(1, 3)), 2);
        auto ci = compile(inst);
        int k = static_cast<int>(rng.integer(0, 3));
        auto bc = build_bu_circuit(ci, k);
        auto p = testkit::random_sphere_point(rng, k);
        auto [fp, fn] = circuit_bu_eval(bc, p.coords);
        CHECK(fp == bu_eval(ci, p));
        CHECK(fn == bu_eval(ci, antipode(p)));
    }
}

TEST_CASE("existential formula export") {
    Circuit c;
    int x = c.variable(0), y = c.variable(1);
    int m = c.max(x, y);
    auto f = export_equalities(c, 2, {{m, c.constant(q(1))}});
    CHECK(f.max_nodes == 1);
    CHECK(f.min_nodes == 0);
    std::size_t pairs = 0;
    for (std::size_t pos = f.text.find("(or (and (= g"); pos != std::string::npos; pos = f.text.find("(or (and (= g", pos + 1)) ++pairs;
    CHECK(pairs == 1);
    CHECK(etr_evaluate(f.text, {q(1), q(0)}).satisfied);
    CHECK_FALSE(etr_evaluate(f.text, {q(1, 2), q(0)}).satisfied);

    auto ci = compile(unit_square());
    auto etr = export_etr(ci, 1);
    CHECK(etr.variables.size() == 3 + etr.max_nodes + etr.min_nodes);
    CHECK(etr.text.find("(exists (P1 P2 P3") == 0);
    auto ok = etr_evaluate(etr.text, {qs("0.5"), qs("1.5"), q(0)});
    CHECK(ok.satisfied);
    CHECK(ok.conjuncts == ok.conjuncts_satisfied);
    auto bad = etr_evaluate(etr.text, {qs("0.5"), qs("1.0"), qs("0.5")});
    CHECK_FALSE(bad.satisfied);
    auto off_sphere = etr_evaluate(etr.text, {qs("0.5"), qs("0.5"), q(0)});
    CHECK_FALSE(off_sphere.satisfied);
    // R = 0 goes through the lexicographic branch of the sign disjunction
    auto r0 = etr_evaluate(etr.text, {q(1, 2), q(0), q(-3, 2)});
    auto fr0 = bu_eval(ci, make_sphere_point({q(1, 2), q(0), q(-3, 2)}));
    CHECK(r0.satisfied == (q(2) * fr0[0] == q(1)));
}

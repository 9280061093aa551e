#include "doctest.h"

#include "jb/diffpoly.hpp"
#include "jb/sysfile.hpp"
#include "test_util.hpp"

using namespace jb;
using namespace jbtest;

TEST_SUITE("jets") {

TEST_CASE("canonical ordering and arithmetic") {
    PDESystem sys = scalar_system();
    auto u = sys.uni;
    DiffPoly x = DiffPoly::base(u, 0);
    DiffPoly y = DiffPoly::base(u, 1);
    DiffPoly ux = parse_expression(sys, "u[1,0]");
    DiffPoly uxy = parse_expression(sys, "u[1,1]");
    DiffPoly uxx = parse_expression(sys, "u[2,0]");

    // Degree dominates; ties break by the variable ranking.
    CHECK((x * x + ux).leading().m == (x * x).leading().m);
    CHECK((uxx + uxy).leading().m == uxx.leading().m);
    CHECK((x + ux).leading().m == x.leading().m);

    DiffPoly p = (x + ux) * (x - ux);
    CHECK(p == x * x - ux * ux);
    CHECK((p - p).is_zero());
    CHECK(p.str() == "x^2 - u[1,0]^2");

    DiffPoly q = parse_expression(sys, "3/2*u[1,0] - 2*x*y + 1");
    CHECK(q.str() == "-2*x*y + 3/2*u[1,0] + 1");
    CHECK(parse_expression(sys, q.str()) == q);
}

TEST_CASE("universe mismatch is rejected") {
    PDESystem a = scalar_system();
    PDESystem b = scalar_system();
    DiffPoly pa = parse_expression(a, "u[1,0]");
    DiffPoly pb = parse_expression(b, "u[1,0]");
    CHECK_THROWS_AS(pa + pb, universe_mismatch);
    CHECK_THROWS_AS(pa * pb, universe_mismatch);
}

TEST_CASE("total derivative on a product of jets") {
    PDESystem sys = demo_system();
    DiffPoly uv = parse_expression(sys, "u*v");
    DiffPoly d = total_derivative_multi(uv, MultiIndex{1, 1});
    DiffPoly expect = parse_expression(
        sys, "u[1,1]*v + u[1,0]*v[0,1] + u[0,1]*v[1,0] + u*v[1,1]");
    CHECK(d == expect);
}

TEST_CASE("total derivatives commute, also through parameter rules") {
    PDESystem sys = demo_system();
    auto rng = make_rng(20260821);
    auto pool = jet_pool(sys, 2);
    // Include parameter jets and the chained parameter E in the pool.
    for (auto& idx : multiindices_up_to(2, 2))
        pool.push_back(sys.uni->jet_var(sys.params[0], idx));
    pool.push_back(sys.uni->jet_var(sys.params[1], MultiIndex{0, 0}));
    for (int i = 0; i < 40; ++i) {
        DiffPoly f = random_poly(sys.uni, pool, rng);
        DiffPoly dxy = total_derivative(total_derivative(f, 0), 1);
        DiffPoly dyx = total_derivative(total_derivative(f, 1), 0);
        CHECK(dxy == dyx);
    }
}

TEST_CASE("Leibniz rule") {
    PDESystem sys = demo_system();
    auto rng = make_rng(7);
    auto pool = jet_pool(sys, 2);
    pool.push_back(sys.uni->jet_var(sys.params[1], MultiIndex{0, 0}));
    for (int i = 0; i < 40; ++i) {
        DiffPoly f = random_poly(sys.uni, pool, rng);
        DiffPoly g = random_poly(sys.uni, pool, rng);
        for (size_t dir = 0; dir < 2; ++dir) {
            DiffPoly lhs = total_derivative(f * g, dir);
            DiffPoly rhs = total_derivative(f, dir) * g + f * total_derivative(g, dir);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("parameter rules drive the total derivative") {
    PDESystem sys = demo_system();
    DiffPoly E = parse_expression(sys, "E");
    CHECK(total_derivative(E, 0) == parse_expression(sys, "E*lam[1,0]"));
    DiffPoly d2 = total_derivative(total_derivative(E, 0), 1);
    CHECK(d2 == parse_expression(sys, "E*lam[1,0]*lam[0,1] + E*lam[1,1]"));
    // A jet of E in a ruled direction expands through the rule at creation.
    CHECK(parse_expression(sys, "E[1,0]") == parse_expression(sys, "E*lam[1,0]"));
}

TEST_CASE("ill-founded parameter rules are reported") {
    CHECK_THROWS_AS(parse_system("system bad\n"
                                 "base x y\n"
                                 "param P diff x -> P[1,0]\n"),
                    rule_cycle);
}

TEST_CASE("order counts unknown jets only") {
    PDESystem sys = demo_system();
    CHECK(order(parse_expression(sys, "u[1,0]*v[0,1]")) == 1);
    CHECK(order(parse_expression(sys, "lam[2,0]*u[1,0]")) == 1);
    CHECK(order(parse_expression(sys, "lam[2,0]")) == 0);
    CHECK(order(parse_expression(sys, "7")) == 0);
    CHECK_THROWS_AS(order(DiffPoly::zero(sys.uni)), undefined_order);
}

TEST_CASE("total derivative raises order by exactly one") {
    PDESystem sys = demo_system();
    auto rng = make_rng(99);
    auto pool = jet_pool(sys, 2);
    for (int i = 0; i < 40; ++i) {
        DiffPoly f = random_poly(sys.uni, pool, rng);
        if (f.is_zero())
            continue;
        bool has_jet = false;
        for (auto& t : f.terms())
            for (auto& [v, e] : t.m.f)
                if (sys.uni->var(v).kind == VarKind::Jet)
                    has_jet = true;
        if (!has_jet)
            continue;
        for (size_t dir = 0; dir < 2; ++dir) {
            DiffPoly d = total_derivative(f, dir);
            CHECK(order(d) == order(f) + 1);
        }
    }
}

TEST_CASE("inverse symbols differentiate through the reciprocal rule") {
    PDESystem sys = scalar_system();
    DiffPoly uu = parse_expression(sys, "u");
    size_t inv = sys.uni->declare_inverse(uu);
    DiffPoly t = DiffPoly::jet(sys.uni, inv, MultiIndex{0, 0});
    DiffPoly d = total_derivative(t, 0);
    DiffPoly expect = -(t * t * parse_expression(sys, "u[1,0]"));
    CHECK(d == expect);
    // d(t*u) reduces to zero only modulo t*u = 1; as a raw polynomial it is
    // u[1,0]*(t - t^2*u).
    DiffPoly prod = total_derivative(t * uu, 0);
    CHECK(prod == parse_expression(sys, "u[1,0]") * (t - t * t * uu));
}

TEST_CASE("evaluation") {
    PDESystem sys = scalar_system();
    DiffPoly p = parse_expression(sys, "x^2*u[1,0] - 3/2*y + 2");
    auto value = [&](uint32_t v) -> Q {
        const std::string& nm = sys.uni->var(v).name;
        if (nm == "x") return frac(2, 1);
        if (nm == "y") return frac(4, 3);
        return frac(1, 2); // u[1,0]
    };
    CHECK(evaluate(p, value) == frac(2, 1)); // 4*(1/2) - 2 + 2
}

} // TEST_SUITE

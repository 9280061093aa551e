#include "doctest.h"

#include "jb/linops.hpp"
#include "test_util.hpp"

using namespace jb;
using namespace jbtest;

namespace {

LinDiffOp dop(const UniversePtr& u, std::initializer_list<int> sig) {
    return LinDiffOp::monomial(DiffPoly::constant(u, 1), MultiIndex(sig));
}

LinDiffOp mul_by(const DiffPoly& p) {
    return LinDiffOp::monomial(p, MultiIndex(p.universe()->dim()));
}

VectorDiffOp row_of(const UniversePtr& u, std::vector<LinDiffOp> comps) {
    VectorDiffOp r(u, comps.size());
    r.comp = std::move(comps);
    return r;
}

// Commutative determinant of the symbol matrix, columns filtered at the given
// per-column degrees.
LinDiffOp det_symbol(const std::vector<std::vector<LinDiffOp>>& m,
                     const std::vector<int>& col_ord, const UniversePtr& u) {
    size_t q = m.size();
    std::vector<size_t> perm(q);
    for (size_t i = 0; i < q; ++i)
        perm[i] = i;
    LinDiffOp acc(u);
    do {
        int inv = 0;
        for (size_t i = 0; i < q; ++i)
            for (size_t j = i + 1; j < q; ++j)
                if (perm[i] > perm[j])
                    ++inv;
        LinDiffOp prod = symbol(m[perm[0]][0], col_ord[0]);
        for (size_t col = 1; col < q; ++col)
            prod = symbol_mul(prod, symbol(m[perm[col]][col], col_ord[col]));
        acc = (inv % 2 == 0) ? acc + prod : acc - prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

} // namespace

TEST_SUITE("linops") {

TEST_CASE("compose expands through Leibniz") {
    auto sys = scalar_system();
    auto u = sys.uni;
    DiffPoly x = DiffPoly::base(u, 0);

    LinDiffOp dx = dop(u, {1, 0});
    LinDiffOp dy = dop(u, {0, 1});

    // D_x o x = x D_x + 1
    LinDiffOp e1(u);
    e1.set(MultiIndex{1, 0}, x);
    e1.set(MultiIndex{0, 0}, DiffPoly::constant(u, 1));
    CHECK(compose(dx, mul_by(x)) == e1);

    // D_x o D_y = D_(1,1)
    CHECK(compose(dx, dy) == dop(u, {1, 1}));

    // (x D_x) o (x D_x) = x^2 D_x^2 + x D_x
    LinDiffOp xdx = LinDiffOp::monomial(x, MultiIndex{1, 0});
    LinDiffOp e2(u);
    e2.set(MultiIndex{2, 0}, x * x);
    e2.set(MultiIndex{1, 0}, x);
    CHECK(compose(xdx, xdx) == e2);
}

TEST_CASE("compose is associative and matches nested application") {
    auto sys = demo_system();
    auto u = sys.uni;
    auto pool = jet_pool(sys, 1);
    pool.push_back(u->jet_var(*u->find_symbol("lam"), MultiIndex{1, 0}));
    pool.push_back(u->jet_var(*u->find_symbol("E"), MultiIndex{0, 0}));
    auto rng = make_rng(411);
    for (int it = 0; it < 25; ++it) {
        LinDiffOp a = random_linop(u, pool, rng, 2);
        LinDiffOp b = random_linop(u, pool, rng, 2);
        LinDiffOp c = random_linop(u, pool, rng, 1);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        DiffPoly f = random_poly(u, pool, rng);
        CHECK(compose(a, b).apply(f) == a.apply(b.apply(f)));
    }
}

TEST_CASE("ndet basics") {
    auto sys = scalar_system();
    auto u = sys.uni;
    DiffPoly x = DiffPoly::base(u, 0);
    LinDiffOp dx = dop(u, {1, 0});
    LinDiffOp dy = dop(u, {0, 1});
    LinDiffOp one = LinDiffOp::identity(u);

    // ndet([[D_x, D_y],[x, 1]]) = D_x o 1 - x o D_y = D_x - x D_y
    LinDiffOp expect(u);
    expect.set(MultiIndex{1, 0}, DiffPoly::constant(u, 1));
    expect.set(MultiIndex{0, 1}, -x);
    CHECK(ndet({{dx, dy}, {mul_by(x), one}}) == expect);

    CHECK(ndet({{one, LinDiffOp(u)}, {LinDiffOp(u), one}}) == one);
    CHECK_THROWS_AS(ndet({{dx, dy}}), shape_error);
}

TEST_CASE("ndet is row-linear and row-skew but not column-skew") {
    auto sys = demo_system();
    auto u = sys.uni;
    auto pool = jet_pool(sys, 1);
    auto rng = make_rng(412);
    for (int it = 0; it < 20; ++it) {
        LinDiffOp a1 = random_linop(u, pool, rng, 1), a2 = random_linop(u, pool, rng, 1);
        LinDiffOp b1 = random_linop(u, pool, rng, 1), b2 = random_linop(u, pool, rng, 1);
        LinDiffOp c1 = random_linop(u, pool, rng, 1), c2 = random_linop(u, pool, rng, 1);
        // Equal rows kill the determinant.
        CHECK(ndet({{a1, a2}, {a1, a2}}).is_zero());
        // Additivity in the first row.
        CHECK(ndet({{a1 + b1, a2 + b2}, {c1, c2}}) ==
              ndet({{a1, a2}, {c1, c2}}) + ndet({{b1, b2}, {c1, c2}}));
        // Swapping rows flips the sign.
        CHECK(ndet({{a1, a2}, {c1, c2}}) == -ndet({{c1, c2}, {a1, a2}}));
    }

    // Column swap witness: M = [[D_x, 1],[1, x]] has ndet = x D_x, but the
    // column-swapped matrix gives 1 - x D_x, not -x D_x.
    DiffPoly x = DiffPoly::base(u, 0);
    LinDiffOp dx = dop(u, {1, 0});
    LinDiffOp one = LinDiffOp::identity(u);
    LinDiffOp m = ndet({{dx, one}, {one, mul_by(x)}});
    LinDiffOp msw = ndet({{one, dx}, {mul_by(x), one}});
    LinDiffOp xdx = LinDiffOp::monomial(x, MultiIndex{1, 0});
    CHECK(m == xdx);
    CHECK(msw == LinDiffOp::identity(u) - xdx);
    CHECK(msw != -m);
}

TEST_CASE("symbol extraction and filtration") {
    auto sys = scalar_system();
    auto u = sys.uni;
    DiffPoly x = DiffPoly::base(u, 0);
    LinDiffOp o = dop(u, {2, 0}) + dop(u, {0, 1});

    LinDiffOp top(u);
    top.set(MultiIndex{2, 0}, DiffPoly::constant(u, 1));
    CHECK(symbol(o, 2) == top);
    CHECK(symbol(o, 3).is_zero());
    CHECK_THROWS_AS(symbol(o, 1), filtration_error);

    LinDiffOp xdy = LinDiffOp::monomial(x, MultiIndex{0, 1});
    LinDiffOp e(u);
    e.set(MultiIndex{0, 1}, x);
    CHECK(symbol(xdy, 1) == e);
}

TEST_CASE("symbol of ndet is the determinant of symbols") {
    auto sys = demo_system();
    auto u = sys.uni;
    auto pool = jet_pool(sys, 1);
    auto rng = make_rng(413);
    for (int it = 0; it < 15; ++it) {
        std::vector<int> cols = {1 + (it % 2), 1};
        std::vector<std::vector<LinDiffOp>> m(2, std::vector<LinDiffOp>(2));
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j)
                m[i][j] = random_linop(u, pool, rng, cols[j]);
        int total = cols[0] + cols[1];
        CHECK(symbol(ndet(m), total) == det_symbol(m, cols, u));
    }
    for (int it = 0; it < 5; ++it) {
        std::vector<int> cols = {1, 1, 1};
        std::vector<std::vector<LinDiffOp>> m(3, std::vector<LinDiffOp>(3));
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                m[i][j] = random_linop(u, pool, rng, 1, 1);
        CHECK(symbol(ndet(m), 3) == det_symbol(m, cols, u));
    }
    // Multiplicativity of top symbols under composition.
    for (int it = 0; it < 10; ++it) {
        LinDiffOp a = random_linop(u, pool, rng, 2);
        LinDiffOp b = random_linop(u, pool, rng, 1);
        CHECK(symbol(compose(a, b), 3) == symbol_mul(symbol(a, 2), symbol(b, 1)));
    }
}

TEST_CASE("linear multi-bracket: commutator at m=1") {
    auto sys = scalar_system();
    auto u = sys.uni;
    DiffPoly x = DiffPoly::base(u, 0);
    LinDiffOp dx = dop(u, {1, 0});
    LinDiffOp xdx = LinDiffOp::monomial(x, MultiIndex{1, 0});

    VectorDiffOp a = row_of(u, {dx}), b = row_of(u, {xdx});
    VectorDiffOp br = multibracket_linear({a, b});
    // [D_x, x D_x] = D_x
    CHECK(br.comp[0] == dx);

    auto pool = jet_pool(sys, 1);
    auto rng = make_rng(414);
    for (int it = 0; it < 15; ++it) {
        LinDiffOp p = random_linop(u, pool, rng, 2);
        LinDiffOp q = random_linop(u, pool, rng, 2);
        VectorDiffOp rp = row_of(u, {p}), rq = row_of(u, {q});
        CHECK(multibracket_linear({rp, rq}).comp[0] ==
              compose(p, q) - compose(q, p));
    }
}

TEST_CASE("linear multi-bracket: m=2 constant example and shape checks") {
    auto sys = demo_system();
    auto u = sys.uni;
    LinDiffOp dx = dop(u, {1, 0});
    LinDiffOp dy = dop(u, {0, 1});
    LinDiffOp one = LinDiffOp::identity(u);
    LinDiffOp z(u);

    VectorDiffOp r1 = row_of(u, {dx, z});
    VectorDiffOp r2 = row_of(u, {z, dy});
    VectorDiffOp r3 = row_of(u, {one, one});
    CHECK(multibracket_linear({r1, r2, r3}).is_zero());

    CHECK_THROWS_AS(multibracket_linear({r1, r2}), shape_error);
    VectorDiffOp s = row_of(u, {dx});
    CHECK_THROWS_AS(multibracket_linear({s, s, s}), shape_error);
}

TEST_CASE("linear multi-bracket: skew-symmetry and row additivity") {
    auto sys = demo_system();
    auto u = sys.uni;
    auto pool = jet_pool(sys, 1);
    auto rng = make_rng(415);
    for (int it = 0; it < 10; ++it) {
        std::vector<VectorDiffOp> rows;
        for (int k = 0; k < 3; ++k)
            rows.push_back(random_row(u, pool, rng, 2, 1));
        VectorDiffOp base = multibracket_linear(rows);
        for (size_t sw = 0; sw + 1 < rows.size(); ++sw) {
            auto perm = rows;
            std::swap(perm[sw], perm[sw + 1]);
            CHECK(multibracket_linear(perm) == -base);
        }
        // Additivity in the first slot.
        VectorDiffOp extra = random_row(u, pool, rng, 2, 1);
        auto rows2 = rows;
        rows2[0] = rows[0] + extra;
        auto rows3 = rows;
        rows3[0] = extra;
        CHECK(multibracket_linear(rows2) ==
              multibracket_linear(rows) + multibracket_linear(rows3));
    }
}

TEST_CASE("linear multi-bracket: order drops below the sum of orders") {
    auto sys = demo_system();
    auto u = sys.uni;
    auto pool = jet_pool(sys, 1);
    auto rng = make_rng(416);
    int checked = 0;
    for (int it = 0; it < 30; ++it) {
        size_t m = 1 + (it % 2);
        std::vector<VectorDiffOp> rows;
        int total = 0;
        bool ok = true;
        for (size_t k = 0; k < m + 1; ++k) {
            VectorDiffOp r = random_row(u, pool, rng, m, 2);
            int o = -1;
            for (auto& c : r.comp)
                o = std::max(o, c.ord());
            if (o < 0)
                ok = false;
            total += o;
            rows.push_back(r);
        }
        if (!ok)
            continue;
        VectorDiffOp br = multibracket_linear(rows);
        int bo = -1;
        for (auto& c : br.comp)
            bo = std::max(bo, c.ord());
        CHECK(bo <= total - 1);
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("opposite bracket: m=1 coincidence and constant-coefficient vanishing") {
    auto sys = demo_system();
    auto u = sys.uni;
    auto pool = jet_pool(sys, 1);
    auto rng = make_rng(417);
    for (int it = 0; it < 15; ++it) {
        VectorDiffOp a = random_row(u, pool, rng, 1, 2);
        VectorDiffOp b = random_row(u, pool, rng, 1, 2);
        CHECK(opposite_multibracket_linear({a, b}) == multibracket_linear({a, b}));
    }
    // Constant rational coefficients commute with everything, so both brackets
    // collapse to a determinant with a repeated column: zero.
    std::vector<uint32_t> empty_pool;
    for (int it = 0; it < 10; ++it) {
        std::vector<VectorDiffOp> rows;
        for (int k = 0; k < 3; ++k)
            rows.push_back(random_row(u, empty_pool, rng, 2, 2));
        VectorDiffOp std_br = multibracket_linear(rows);
        VectorDiffOp opp_br = opposite_multibracket_linear(rows);
        CHECK(std_br == opp_br);
        CHECK(std_br.is_zero());
    }
}

TEST_CASE("Pluecker identity links the bracket and its opposite") {
    auto sys = demo_system();
    auto u = sys.uni;
    auto pool = jet_pool(sys, 1);
    auto rng = make_rng(418);

    auto check_instance = [&](const std::vector<VectorDiffOp>& rows, size_t m) {
        for (size_t i = 0; i < m; ++i) {
            VectorDiffOp lhs(u, m), rhs(u, m);
            for (size_t k = 0; k < rows.size(); ++k) {
                std::vector<VectorDiffOp> rest;
                for (size_t j = 0; j < rows.size(); ++j)
                    if (j != k)
                        rest.push_back(rows[j]);
                VectorDiffOp lterm = compose(opposite_multibracket_linear(rest).comp[i], rows[k]);
                VectorDiffOp rterm = compose(rows[k].comp[i], multibracket_linear(rest));
                // Signs (-1)^k with 1-based k.
                lhs = (k % 2 == 0) ? lhs - lterm : lhs + lterm;
                rhs = (k % 2 == 0) ? rhs - rterm : rhs + rterm;
            }
            CHECK(lhs == rhs);
        }
    };

    // m=1: three scalar operators, the Jacobi identity in disguise.
    for (int it = 0; it < 10; ++it) {
        std::vector<VectorDiffOp> rows;
        for (int k = 0; k < 3; ++k)
            rows.push_back(random_row(u, pool, rng, 1, 2));
        check_instance(rows, 1);
    }
    // m=2: four rows of length two, first order.
    for (int it = 0; it < 5; ++it) {
        std::vector<VectorDiffOp> rows;
        for (int k = 0; k < 4; ++k)
            rows.push_back(random_row(u, pool, rng, 2, 1));
        check_instance(rows, 2);
    }
}

TEST_CASE("universal linearization") {
    auto sys = demo_system();
    auto u = sys.uni;
    size_t su = sys.unknowns[0], sv = sys.unknowns[1];
    DiffPoly ux = DiffPoly::jet(u, su, MultiIndex{1, 0});
    DiffPoly uy = DiffPoly::jet(u, su, MultiIndex{0, 1});
    DiffPoly vx = DiffPoly::jet(u, sv, MultiIndex{1, 0});
    DiffPoly vy = DiffPoly::jet(u, sv, MultiIndex{0, 1});

    // Jacobian determinant u_x v_y - u_y v_x.
    DiffPoly jac = ux * vy - uy * vx;
    VectorDiffOp l = linearize(sys, jac);
    LinDiffOp eu(u), ev(u);
    eu.set(MultiIndex{1, 0}, vy);
    eu.set(MultiIndex{0, 1}, -vx);
    ev.set(MultiIndex{0, 1}, ux);
    ev.set(MultiIndex{1, 0}, -uy);
    CHECK(l.comp[0] == eu);
    CHECK(l.comp[1] == ev);

    // x u_xx + 3 v_y - u.
    DiffPoly x = DiffPoly::base(u, 0);
    DiffPoly f = x * DiffPoly::jet(u, su, MultiIndex{2, 0}) + vy * Q(3) -
                 DiffPoly::jet(u, su, MultiIndex{0, 0});
    VectorDiffOp l2 = linearize(sys, f);
    LinDiffOp e2(u), e3(u);
    e2.set(MultiIndex{2, 0}, x);
    e2.set(MultiIndex{0, 0}, DiffPoly::constant(u, -1));
    e3.set(MultiIndex{0, 1}, DiffPoly::constant(u, 3));
    CHECK(l2.comp[0] == e2);
    CHECK(l2.comp[1] == e3);

    // Parameters stay frozen: E u_x linearizes to (E D_x, 0).
    DiffPoly E = DiffPoly::jet(u, *u->find_symbol("E"), MultiIndex{0, 0});
    VectorDiffOp l3 = linearize(sys, E * ux);
    LinDiffOp e4(u);
    e4.set(MultiIndex{1, 0}, E);
    CHECK(l3.comp[0] == e4);
    CHECK(l3.comp[1].is_zero());
}

TEST_CASE("linearization of a linear operator returns the operator") {
    auto sys = scalar_system();
    auto u = sys.uni;
    std::vector<uint32_t> base_pool = {u->base_var(0), u->base_var(1)};
    auto rng = make_rng(419);
    for (int it = 0; it < 10; ++it) {
        LinDiffOp a = random_linop(u, base_pool, rng, 2);
        DiffPoly f = a.apply(DiffPoly::jet(u, sys.unknowns[0], MultiIndex{0, 0}));
        if (f.is_zero())
            continue;
        CHECK(linearize(sys, f).comp[0] == a);
    }
}

} // TEST_SUITE

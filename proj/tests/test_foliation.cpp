#include "doctest.h"

#include <random>

#include "fol/errors.hpp"
#include "fol/foliation.hpp"

using namespace fol;

namespace {
BiPoly x() { return BiPoly::var_x(); }
BiPoly y() { return BiPoly::var_y(); }
BiPoly c(long n) { return BiPoly::constant(K(n)); }

// Suzuki's example: (y^3 + y^2 - xy) dx - (2xy^2 + xy - x^2) dy
OneFormGerm suzuki() {
    BiPoly P = y() * y() * y() + y() * y() - x() * y();
    BiPoly Q = -(c(2) * x() * y() * y() + x() * y() - x() * x());
    return saturate(P, Q);
}
// Riccati example: (y^2 + xy + x^2) dx + x^2 dy
OneFormGerm riccati() {
    return saturate(y() * y() + x() * y() + x() * x(), x() * x());
}
}  // namespace

TEST_CASE("saturation cancels common factors") {
    OneFormGerm f = saturate(x() * y(), x() * x());
    CHECK(f.P.deg_total_struct() == 1);
    CHECK(f.Q.deg_total_struct() == 1);
    CHECK(multiplicity(f) == 1);

    OneFormGerm g = saturate(x(), y());
    CHECK(g.P.coeff(1, 0).rat() == 1);
    CHECK(g.Q.coeff(0, 1).rat() == 1);

    OneFormGerm s = suzuki();
    CHECK(s.P.terms().size() == 3);  // already coprime: unchanged
    CHECK(multiplicity(s) == 2);
}

TEST_CASE("multiplicity examples") {
    CHECK(multiplicity(riccati()) == 2);
    OneFormGerm dx_only = saturate(c(1), BiPoly());
    CHECK(multiplicity(dx_only) == 0);
}

TEST_CASE("multiplicity is invariant under linear coordinate changes") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> v(-3, 3);
    OneFormGerm f = suzuki();
    for (int i = 0; i < 10; ++i) {
        long a = v(rng), b = v(rng), cc = v(rng), d = v(rng);
        if (a * d - b * cc == 0) continue;
        // pull omega back through (x, y) = (a X + b Y, c X + d Y)
        BiPoly Xs = c(a) * x() + c(b) * y();
        BiPoly Ys = c(cc) * x() + c(d) * y();
        BiPoly Ps = f.P.subst(Xs, Ys), Qs = f.Q.subst(Xs, Ys);
        OneFormGerm g = saturate(Ps.scale(K(a)) + Qs.scale(K(cc)),
                                 Ps.scale(K(b)) + Qs.scale(K(d)));
        CHECK(multiplicity(g) == multiplicity(f));
    }
}

TEST_CASE("classification of the linear model") {
    // omega = x dy + y dx: eigenvalue ratio -1, reduced
    OneFormGerm f = saturate(y(), x());
    Classification cl = classify(f, DivisorLocal{}, 16, 64);
    CHECK(cl.kind == PointKind::non_degenerate);
    CHECK(cl.ratio_rational);
    CHECK(cl.ratio == -1);
    CHECK(cl.d_reduced);
}

TEST_CASE("positive rational eigenvalue ratios are not reduced") {
    // omega = 2x dy - y dx: dual eigenvalues (-2, -1), ratio 2
    OneFormGerm f = saturate(-y(), c(2) * x());
    Classification cl = classify(f, DivisorLocal{}, 16, 64);
    CHECK(cl.kind == PointKind::non_reduced);
    // radial: ratio 1
    OneFormGerm r = saturate(-y(), x());
    CHECK(classify(r, DivisorLocal{}, 16, 64).kind == PointKind::non_reduced);
    // both eigenvalues positive but irrational (w = tr^2/det - 2 = 6,
    // w^2 - 4 = 32 not a square): still reduced
    OneFormGerm g = saturate(x() + c(3) * y(), -(x() + y()));
    Classification cg = classify(g, DivisorLocal{}, 16, 64);
    CHECK(cg.kind == PointKind::non_degenerate);
    CHECK(!cg.ratio_rational);
}

TEST_CASE("saddle-node normal forms and weak index") {
    // omega = y(1 + x^k) dx + x^{k+1} dy
    for (int k = 1; k <= 4; ++k) {
        BiPoly xp = c(1);
        for (int i = 0; i < k; ++i) xp = xp * x();
        OneFormGerm f = saturate(y() + y() * xp, xp * x());
        Classification cl = classify(f, DivisorLocal{}, 16, 64);
        CHECK(cl.kind == PointKind::saddle_node);
        CHECK(cl.weak_index == k + 1);
        CHECK(cl.d_reduced);
    }
}

TEST_CASE("weak index agrees with a brute-force tangency scan") {
    // the weak separatrix of the normal form is exactly {y=0}; the index
    // is then the t-order of Q(t, 0), read off directly
    for (int k = 1; k <= 3; ++k) {
        BiPoly xp = c(1);
        for (int i = 0; i < k; ++i) xp = xp * x();
        OneFormGerm f = saturate(y() + c(3) * y() * xp, xp * x());
        int oracle = *up_order(f.Q.at_y(K(0L)));
        CHECK(weak_index_of(f, 16, 64) == oracle);
    }
}

TEST_CASE("invariant graph solver finds separatrices") {
    // omega = x dy + 2y dx (ratio -2): separatrix y = 0 along (1,0)
    OneFormGerm f = saturate(c(2) * y(), x());
    Series s = invariant_graph(f, true, K(0L), 12);
    CHECK(!s.order().has_value());  // y = 0 exactly

    // the Riccati branch y = -x is invariant
    OneFormGerm g = riccati();
    Series t = Series::t_power(1);
    Series pb = pullback(g, t.truncate(12), (-t).truncate(12));
    CHECK(!pb.order().has_value());
}

TEST_CASE("leaf graph through a regular point") {
    // omega = dx - 2y dy: leaves x = y^2 + c
    OneFormGerm f = saturate(c(1), -c(2) * y());
    Series u = leaf_graph(f, false, 10);
    CHECK(u.coeff(2).rat() == 1);
    Series t = Series::t_power(1);
    Series pb = pullback(f, u.truncate(10), t.truncate(10));
    CHECK(!pb.order().has_value());
}

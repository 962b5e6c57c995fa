#include "doctest.h"

#include <random>

#include "fol/bipoly.hpp"
#include "fol/errors.hpp"

using namespace fol;

namespace {
BiPoly x() { return BiPoly::var_x(); }
BiPoly y() { return BiPoly::var_y(); }
BiPoly c(long n) { return BiPoly::constant(K(n)); }

BiPoly random_poly(std::mt19937_64& rng, int max_deg, int terms) {
    std::uniform_int_distribution<int> e(0, max_deg), v(-4, 4);
    BiPoly p;
    for (int i = 0; i < terms; ++i) p.add_term(e(rng), e(rng), K((long)v(rng)));
    return p;
}
}  // namespace

TEST_CASE("order of a bivariate polynomial") {
    CHECK((x() * x() + x() * y() * y() * y()).order() == 2);
    // y^3 + y^2 - x*y
    BiPoly suzP = y() * y() * y() + y() * y() - x() * y();
    CHECK(suzP.order() == 2);
    CHECK(c(5).order() == 0);
    CHECK_THROWS_AS(BiPoly().order(), InputError);
}

TEST_CASE("order is additive under products") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        BiPoly p = random_poly(rng, 3, 4), q = random_poly(rng, 3, 4);
        if (p.struct_zero() || q.struct_zero()) continue;
        CHECK((p * q).order() == p.order() + q.order());
    }
}

TEST_CASE("substitution composes polynomials") {
    // P(x, x*y) for P = y^2 - x^3
    BiPoly p = y() * y() - x() * x() * x();
    BiPoly sub = p.subst(x(), x() * y());
    CHECK(sub.coeff(2, 2).rat() == 1);
    CHECK(sub.coeff(3, 0).rat() == -1);
    CHECK(sub.terms().size() == 2);
}

TEST_CASE("gcd and monomial content") {
    BiPoly g = bp_gcd(x() * y(), x() * x());
    auto [a, b] = g.monomial_content();
    CHECK(a == 1);
    CHECK(b == 0);
    CHECK(g.deg_total_struct() == 1);

    BiPoly p = (x() + y()) * (x() - y()) * y();
    BiPoly q = (x() + y()) * x();
    BiPoly h = bp_gcd(p, q);
    CHECK(h.deg_total_struct() == 1);
    CHECK(h.coeff(1, 0) == h.coeff(0, 1));
}

TEST_CASE("weierstrass division by a distinguished polynomial") {
    // N = y^2 + x*y, f = y + x: N = y*(y+x), so q = y, r = 0
    BiPoly N = y() * y() + x() * y();
    BiPoly f = y() + x();
    WDiv d = weierstrass_divide(N, f, 1, 8, 8);
    CHECK(d.r.struct_zero());
    CHECK(d.q.coeff(0, 1).rat() == 1);
    CHECK(d.q.terms().size() == 1);

    // y^3 = y*(y^2 - x^3) + x^3*y
    WDiv d2 = weierstrass_divide(y() * y() * y(), y() * y() - x() * x() * x(), 2, 8, 8);
    CHECK(d2.q.coeff(0, 1).rat() == 1);
    CHECK(d2.r.coeff(3, 1).rat() == 1);
}

TEST_CASE("slices via at_x/at_y") {
    BiPoly p = y() * y() + x() * y() + x() * x();
    UPoly py = p.at_x(K(0L));
    CHECK((int)py.size() - 1 == 2);
    CHECK(py[2].rat() == 1);
    UPoly px = p.at_y(K(1L));
    CHECK(up_eval(px, K(1L)).rat() == 3);
}

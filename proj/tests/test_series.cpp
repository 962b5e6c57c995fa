#include "doctest.h"

#include <random>

#include "fol/errors.hpp"
#include "fol/series.hpp"

using namespace fol;

namespace {
BiPoly x() { return BiPoly::var_x(); }
BiPoly y() { return BiPoly::var_y(); }
Series t(int k = 1) { return Series::t_power(k); }
}  // namespace

TEST_CASE("composition of a polynomial with parametrizations") {
    // x^2 along (t, 0) -> t^2
    Series s = compose(x() * x(), t(), Series::zero(Tower::rationals()));
    CHECK(s.order().value() == 2);
    CHECK(s.coeff(2).rat() == 1);

    // y^2 + x*y + x^2 along (t, -t) -> t^2
    Series r = compose(y() * y() + x() * y() + x() * x(), t(), -t());
    CHECK(r.order().value() == 2);
    CHECK(r.coeff(2).rat() == 1);
    CHECK(r.terms().size() == 1);

    // y - x^2 along (t, t^2) vanishes identically (here: exactly)
    Series z = compose(y() - x() * x(), t(), t(2));
    CHECK(!z.order().has_value());
}

TEST_CASE("truncation propagates conservatively") {
    Series a = t(1).truncate(5);  // t + O(t^5)
    Series b = a * a;             // t^2 + O(t^6)
    CHECK(b.known_below() == 6);
    CHECK(b.coeff(2).rat() == 1);
    CHECK_THROWS_AS(b.coeff(6), TruncationExhausted);
}

TEST_CASE("residues") {
    Series s(Tower::rationals(), 4);
    s.set(-1, K(3L));
    s.set(0, K(5L));
    s.set(1, K(1L));
    CHECK(s.residue().rat() == 3);
    CHECK(Series::t_power(-2).residue().rat() == 0);

    Series below(Tower::rationals(), -2);
    CHECK_THROWS_AS(below.residue(), TruncationExhausted);
}

TEST_CASE("residue of dlog equals the order") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> ord(1, 5), coef(-3, 3);
    for (int i = 0; i < 30; ++i) {
        int m = ord(rng);
        Series s(Tower::rationals(), m + 8);
        s.set(m, K(1L));
        for (int k = m + 1; k < m + 6; ++k) s.add_to(k, K((long)coef(rng)));
        CHECK(dlog(s).residue().rat() == m);
    }
}

TEST_CASE("dlog pullback of a smooth coordinate-like series") {
    // y(t) = t*u(t), u(0) = 2: residue of y'/y is 1
    Series yt(Tower::rationals(), 10);
    yt.set(1, K(2L));
    yt.set(2, K(5L));
    yt.set(3, K(-1L));
    CHECK(dlog(yt).residue().rat() == 1);
}

TEST_CASE("composition is a ring homomorphism up to truncation") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> e(0, 2), v(-3, 3);
    auto rnd = [&]() {
        BiPoly p;
        for (int i = 0; i < 4; ++i) p.add_term(e(rng), e(rng), K((long)v(rng)));
        return p;
    };
    Series X(Tower::rationals(), 9), Y(Tower::rationals(), 9);
    X.set(1, K(1L));
    X.set(2, K(3L));
    Y.set(1, K(-2L));
    Y.set(3, K(1L));
    for (int i = 0; i < 20; ++i) {
        BiPoly p = rnd(), q = rnd();
        Series lhs = compose(p * q, X, Y);
        Series rhs = compose(p, X, Y) * compose(q, X, Y);
        Series diff = lhs - rhs;
        CHECK(!diff.order().has_value());
        Series lhs2 = compose(p + q, X, Y);
        Series rhs2 = compose(p, X, Y) + compose(q, X, Y);
        CHECK(!(lhs2 - rhs2).order().has_value());
    }
}

TEST_CASE("series division") {
    // (t^2 + t^3)/(t - t^2) = t * (1+t)/(1-t) = t + 2t^2 + 2t^3 + ...
    Series num = (t(2) + t(3)).truncate(10);
    Series den = (t(1) - t(2)).truncate(10);
    Series q = num / den;
    CHECK(q.coeff(1).rat() == 1);
    CHECK(q.coeff(2).rat() == 2);
    CHECK(q.coeff(3).rat() == 2);
}

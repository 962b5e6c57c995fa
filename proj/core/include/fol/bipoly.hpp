#pragma once

#include <map>
#include <string>
#include <utility>

#include "fol/upoly.hpp"

namespace fol {

// Sparse bivariate polynomial over a tower. Structural zeros are never
// stored; semantically zero coefficients can occur over reducible towers
// and are resolved (or split) by the semantic queries.
class BiPoly {
public:
    using Key = std::pair<int, int>;  // (i, j) = x^i y^j

    BiPoly() : tw_(Tower::rationals()) {}
    explicit BiPoly(TowerPtr tw) : tw_(std::move(tw)) {}

    static BiPoly constant(const K& c);
    static BiPoly var_x(const TowerPtr& tw = Tower::rationals());
    static BiPoly var_y(const TowerPtr& tw = Tower::rationals());
    static BiPoly monomial(const K& c, int i, int j);

    const std::map<Key, K>& terms() const { return t_; }
    const TowerPtr& tower() const { return tw_; }
    bool struct_zero() const { return t_.empty(); }

    void add_term(int i, int j, const K& c);  // accumulating builder
    K coeff(int i, int j) const;

    BiPoly operator-() const;
    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly scale(const K& c) const;

    bool is_zero() const;  // semantic
    int order() const;     // semantic minimal total degree; InputError on zero
    int deg_total_struct() const;
    int deg_x() const;  // structural
    int deg_y() const;

    BiPoly initial_form(int d) const;  // total-degree-d homogeneous part
    BiPoly truncate_total(int d) const;  // drop terms of total degree >= d
    BiPoly dx() const;
    BiPoly dy() const;
    K eval(const K& x, const K& y) const;
    BiPoly subst(const BiPoly& X, const BiPoly& Y) const;
    UPoly at_x(const K& x0) const;  // P(x0, y) as a polynomial in y
    UPoly at_y(const K& y0) const;  // P(x, y0) as a polynomial in x

    // exact division by x^k / y^k (every term must carry the power)
    BiPoly divide_xpow(int k) const;
    BiPoly divide_ypow(int k) const;
    // largest (a, b) with x^a y^b dividing every term; zero poly -> (0, 0)
    Key monomial_content() const;

    std::string str() const;

private:
    TowerPtr tw_;
    std::map<Key, K> t_;
};

BiPoly bp_embed(const BiPoly& p, const TowerPtr& tw);
BiPoly bp_refit(const BiPoly& p, const TowerPtr& refined);
BiPoly bp_from_upoly_x(const UPoly& p);
BiPoly bp_from_upoly_y(const UPoly& p);
BiPoly bp_gcd(const BiPoly& a, const BiPoly& b);
// exact division (InputError if g does not divide p)
BiPoly bp_div_exact(const BiPoly& p, const BiPoly& g);

// Inverse of p as a power series mod t^m (p[0] invertible).
UPoly up_series_inv(const UPoly& p, int m);

// Division adapted to a y-distinguished divisor: writes n = q*f + r with
// deg_y r < d0, where d0 = ord_y f(0, y), computing q and r modulo x^ox
// and y^oy. Requires f(0, y) nonzero of y-order d0.
struct WDiv {
    BiPoly q, r;
};
WDiv weierstrass_divide(const BiPoly& n, const BiPoly& f, int d0, int ox, int oy);

}  // namespace fol

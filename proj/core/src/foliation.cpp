#include "fol/foliation.hpp"

#include <cassert>

#include "fol/errors.hpp"

namespace fol {

OneFormGerm saturate(const BiPoly& P, const BiPoly& Q) {
    bool pz = P.struct_zero() || P.is_zero();
    bool qz = Q.struct_zero() || Q.is_zero();
    if (pz && qz) throw InputError("saturate: both coefficients vanish");
    if (pz) return {BiPoly(Q.tower()), bp_div_exact(Q, Q)};  // omega = dy
    if (qz) return {bp_div_exact(P, P), BiPoly(P.tower())};  // omega = dx
    BiPoly g = bp_gcd(P, Q);
    if (g.order() == 0 && g.deg_total_struct() == 0) return {P, Q};
    return {bp_div_exact(P, g), bp_div_exact(Q, g)};
}

int multiplicity(const OneFormGerm& f) {
    bool pz = f.P.struct_zero() || f.P.is_zero();
    bool qz = f.Q.struct_zero() || f.Q.is_zero();
    if (pz && qz) throw InputError("multiplicity of the zero form");
    if (pz) return f.Q.order();
    if (qz) return f.P.order();
    return std::min(f.P.order(), f.Q.order());
}

bool axis_x_invariant(const OneFormGerm& f) { return up_is_zero(f.Q.at_x(K(0L))); }
bool axis_y_invariant(const OneFormGerm& f) { return up_is_zero(f.P.at_y(K(0L))); }

std::pair<K, K> leaf_direction(const OneFormGerm& f) {
    return {-f.Q.eval(K(0L), K(0L)), f.P.eval(K(0L), K(0L))};
}

Series pullback(const OneFormGerm& f, const Series& X, const Series& Y) {
    return compose(f.P, X, Y) * X.derivative() + compose(f.Q, X, Y) * Y.derivative();
}

// ---------------------------------------------------------------------
// invariant graphs, term by term
// ---------------------------------------------------------------------
namespace {

// residual of the candidate graph: over x, E = P(t,s) + s'Q(t,s);
// over y, E = P(u,t)u' + Q(u,t)
Series graph_residual(const OneFormGerm& f, bool over_x, const Series& s, int kb) {
    Series t = Series::t_power(1, s.tower()).truncate(kb);
    Series sp = s.truncate(kb);
    if (over_x)
        return compose(f.P, t, sp) + sp.derivative() * compose(f.Q, t, sp);
    return compose(f.P, sp, t) * sp.derivative() + compose(f.Q, sp, t);
}

Series solve_graph(const OneFormGerm& f, bool over_x, bool regular_mode,
                   std::optional<K> c1, int n) {
    TowerPtr tw = f.tower();
    K p00 = f.P.eval(K(0L), K(0L)), q00 = f.Q.eval(K(0L), K(0L));
    K p10 = f.P.dx().eval(K(0L), K(0L)), p01 = f.P.dy().eval(K(0L), K(0L));
    K q10 = f.Q.dx().eval(K(0L), K(0L)), q01 = f.Q.dy().eval(K(0L), K(0L));

    Series s(tw, Series::kExact);
    int k0 = 1;
    K c1v = embed(K(0L), tw);
    if (!regular_mode) {
        assert(c1);
        c1v = embed(*c1, tw);
        if (!c1v.struct_zero()) s.set(1, c1v);
        k0 = 2;
    }
    for (int k = k0; k < n; ++k) {
        K a;  // coefficient of c_k in the first residual slot it can reach
        int slot;
        if (regular_mode) {
            a = (over_x ? q00 : p00) * K((long)k);
            slot = k - 1;
        } else {
            if (over_x)
                a = (p01 + c1v * q01) + K((long)k) * (q10 + c1v * q01);
            else
                a = (q10 + c1v * p10) + K((long)k) * (p01 + c1v * p10);
            slot = k;
        }
        if (a.is_zero())
            throw InputError("invariant graph: resonance at order " + std::to_string(k));
        Series E = graph_residual(f, over_x, s, slot + 2);
        K e = E.coeff(slot);
        K ck = -(e / a);
        if (!ck.struct_zero()) s.set(k, ck);
        if (regular_mode && k == 1) c1v = ck;
    }
    return s.truncate(n);
}

}  // namespace

Series invariant_graph(const OneFormGerm& f, bool graph_over_x, const K& c1, int n) {
    return solve_graph(f, graph_over_x, false, c1, n);
}

Series leaf_graph(const OneFormGerm& f, bool graph_over_x, int n) {
    K unit = graph_over_x ? f.Q.eval(K(0L), K(0L)) : f.P.eval(K(0L), K(0L));
    if (unit.is_zero())
        throw InputError("leaf_graph: leaf is not a graph over this coordinate");
    return solve_graph(f, graph_over_x, true, std::nullopt, n);
}

// ---------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------
namespace {

struct LinearPart {
    K a11, a12, a21, a22;  // D(-Q d/dx + P d/dy)(0)
    K tr, det;
};

LinearPart linear_part(const OneFormGerm& f) {
    K p10 = f.P.dx().eval(K(0L), K(0L)), p01 = f.P.dy().eval(K(0L), K(0L));
    K q10 = f.Q.dx().eval(K(0L), K(0L)), q01 = f.Q.dy().eval(K(0L), K(0L));
    LinearPart lp{-q10, -q01, p10, p01, K(), K()};
    lp.tr = lp.a11 + lp.a22;
    lp.det = lp.a11 * lp.a22 - lp.a12 * lp.a21;
    return lp;
}

EigenDir eigen_dir(const LinearPart& lp, const K& lam) {
    // a row of (A - lam I) annihilates the eigenvector
    K r1a = lp.a11 - lam, r1b = lp.a12;
    if (!r1a.is_zero() || !r1b.is_zero()) return {-r1b, r1a};
    return {-(lp.a22 - lam), lp.a21};
}

}  // namespace

int weak_index_of(const OneFormGerm& f, int trunc, int trunc_cap) {
    LinearPart lp = linear_part(f);
    if (!lp.det.is_zero() || lp.tr.is_zero())
        throw InputError("weak_index: not a saddle-node");
    EigenDir weak = eigen_dir(lp, embed(K(0L), f.tower()));
    return with_truncation_retry(trunc, trunc_cap, [&](int n) {
        if (!weak.vx.is_zero()) {
            K c1 = weak.vy / weak.vx;
            Series s = invariant_graph(f, true, c1, n);
            Series t = Series::t_power(1, s.tower()).truncate(n);
            return compose(f.Q, t, s).order_checked("weak index");
        }
        Series u = invariant_graph(f, false, embed(K(0L), f.tower()), n);
        Series t = Series::t_power(1, u.tower()).truncate(n);
        return compose(f.P, u, t).order_checked("weak index");
    });
}

Classification classify(const OneFormGerm& f, const DivisorLocal& div, int trunc,
                        int trunc_cap) {
    Classification c;
    c.x_invariant = axis_x_invariant(f);
    c.y_invariant = axis_y_invariant(f);
    c.nu = multiplicity(f);

    if (c.nu == 0) {
        c.kind = c.raw_kind = PointKind::regular;
        auto [dx, dy] = leaf_direction(f);
        c.leaf_dx_zero = dx.is_zero();
        c.leaf_dy_zero = dy.is_zero();
        bool ok = true;
        if (div.on_x && !c.x_invariant && c.leaf_dx_zero) ok = false;  // tangency
        if (div.on_y && !c.y_invariant && c.leaf_dy_zero) ok = false;
        if (div.on_x && div.on_y && !c.x_invariant && !c.y_invariant)
            ok = false;  // corner with no invariant branch
        c.d_regular = ok;
        if (!ok) c.kind = PointKind::non_reduced;
        return c;
    }

    LinearPart lp = linear_part(f);
    c.trace = lp.tr;
    c.det = lp.det;
    bool lin_zero = lp.a11.is_zero() && lp.a12.is_zero() && lp.a21.is_zero() &&
                    lp.a22.is_zero();
    if (lin_zero) {
        c.kind = PointKind::non_reduced;
    } else if (!lp.det.is_zero()) {
        // the eigenvalue ratio r solves r + 1/r = tr^2/det - 2; it lies in Q+
        // iff that value is a rational w >= 2 with w^2 - 4 a rational square
        K w = lp.tr * lp.tr / lp.det - embed(K(2L), f.tower());
        auto wr = as_rational_semantic(w);
        bool q_plus = false;
        if (wr) {
            Rat s2 = (*wr) * (*wr) - 4;
            Rat root;
            if (s2 >= 0 && rat_is_square(s2, root)) {
                c.ratio_rational = true;
                c.ratio = ((*wr) + root) / 2;
                q_plus = (*wr) >= 2;
            }
        }
        c.kind = q_plus ? PointKind::non_reduced : PointKind::non_degenerate;
    } else if (!lp.tr.is_zero()) {
        c.kind = PointKind::saddle_node;
        c.weak_dir = eigen_dir(lp, embed(K(0L), f.tower()));
        c.strong_dir = eigen_dir(lp, lp.tr);
        c.weak_index = weak_index_of(f, trunc, trunc_cap);
        if (div.on_x && c.x_invariant && c.weak_dir.vx.is_zero()) {
            c.weak_in_divisor = true;
            c.weak_axis_x0 = true;
        } else if (div.on_y && c.y_invariant && c.weak_dir.vy.is_zero()) {
            c.weak_in_divisor = true;
            c.weak_axis_x0 = false;
        }
    } else {
        c.kind = PointKind::non_reduced;  // nilpotent linear part
    }

    c.raw_kind = c.kind;
    bool reduced =
        c.kind == PointKind::non_degenerate || c.kind == PointKind::saddle_node;
    bool div_ok = (!div.on_x || c.x_invariant) && (!div.on_y || c.y_invariant);
    c.d_reduced = reduced && div_ok;
    return c;
}

}  // namespace fol

#pragma once

#include <optional>

#include "fol/series.hpp"

namespace fol {

// Germ of a singular foliation at the origin of a chart, given by the
// saturated 1-form omega = P dx + Q dy. The dual vector field is
// v = -Q d/dx + P d/dy; eigenvalues at a singular point are those of Dv.
struct OneFormGerm {
    BiPoly P, Q;
    const TowerPtr& tower() const { return P.tower(); }
};

// Cancels gcd(P, Q); errors if both vanish identically.
OneFormGerm saturate(const BiPoly& P, const BiPoly& Q);

// min(ord P, ord Q): 0 at regular points.
int multiplicity(const OneFormGerm& f);

bool axis_x_invariant(const OneFormGerm& f);  // {x=0} invariant <=> x | Q
bool axis_y_invariant(const OneFormGerm& f);  // {y=0} invariant <=> y | P

enum class PointKind { regular, non_degenerate, saddle_node, non_reduced };

// Local divisor data at the point: which coordinate axes carry divisor
// branches (at most two, normal crossings).
struct DivisorLocal {
    bool on_x = false;
    bool on_y = false;
};

struct EigenDir {
    K vx, vy;  // direction vector (vx, vy)
};

struct Classification {
    PointKind kind = PointKind::regular;      // relative to the local divisor
    PointKind raw_kind = PointKind::regular;  // of the bare germ
    int nu = 0;
    K trace, det;             // of the linear part of the dual field
    bool leaf_dx_zero = false, leaf_dy_zero = false;  // leaf direction components (regular pts)
    bool ratio_rational = false;
    Rat ratio;                // one of the two reciprocal rational ratios
    // saddle-node data
    int weak_index = 0;       // k+1 >= 2
    EigenDir weak_dir, strong_dir;
    bool weak_in_divisor = false;  // weak separatrix equals an invariant divisor axis
    bool weak_axis_x0 = false;     // that axis is {x=0} (else {y=0})
    // divisor-relative status
    bool x_invariant = false, y_invariant = false;  // axis invariance (always filled)
    bool d_reduced = false;
    bool d_regular = false;
};

// Classifies the germ at the origin relative to the local divisor. The
// truncation pair drives the weak-index computation at saddle-nodes.
Classification classify(const OneFormGerm& f, const DivisorLocal& div, int trunc,
                        int trunc_cap);

// Tangency order k+1 of a saddle-node with its weak separatrix.
int weak_index_of(const OneFormGerm& f, int trunc, int trunc_cap);

// Solves the invariant graph y = s(x) (x = u(y) if graph_over_x is false)
// with prescribed tangent coefficient c1, term by term to exponent < n.
// Requires a singular point; raises InputError on resonance.
Series invariant_graph(const OneFormGerm& f, bool graph_over_x, const K& c1, int n);

// Leaf through a regular point as a graph transverse to the chosen
// coordinate (requires the corresponding form coefficient to be a unit).
Series leaf_graph(const OneFormGerm& f, bool graph_over_x, int n);

// Direction of the leaf at a regular point: (-Q(0,0), P(0,0)).
std::pair<K, K> leaf_direction(const OneFormGerm& f);

// omega pulled back along (X(t), Y(t)): P(X,Y) X' + Q(X,Y) Y'.
Series pullback(const OneFormGerm& f, const Series& X, const Series& Y);

}  // namespace fol

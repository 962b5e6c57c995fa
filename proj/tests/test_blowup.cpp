#include "doctest.h"

#include "fol/blowup.hpp"
#include "fol/errors.hpp"

using namespace fol;

namespace {
BiPoly x() { return BiPoly::var_x(); }
BiPoly y() { return BiPoly::var_y(); }
BiPoly c(long n) { return BiPoly::constant(K(n)); }

OneFormGerm suzuki() {
    BiPoly P = y() * y() * y() + y() * y() - x() * y();
    BiPoly Q = -(c(2) * x() * y() * y() + x() * y() - x() * x());
    return saturate(P, Q);
}
OneFormGerm riccati() {
    return saturate(y() * y() + x() * y() + x() * x(), x() * x());
}
}  // namespace

TEST_CASE("radial blow-up is dicritical with no singular points") {
    // omega = x dy - y dx
    OneFormGerm f = saturate(-y(), x());
    BlowupCharts ch = blow_up_charts(f);
    CHECK(ch.dicritical);
    CHECK(ch.m_p == 2);
    ReductionTree t = reduce(f);
    CHECK(t.nodes.size() == 1);
    CHECK(t.nodes[0].children.empty());
    CHECK(t.comps.size() == 1);
    CHECK(t.comps[0].dicritical);
    CHECK(t.tangency_excess(0) == 0);
    CHECK(t.is_second_type());
    CHECK(t.is_generalized_curve());
}

TEST_CASE("blow-up at a regular point is rejected") {
    OneFormGerm f = saturate(c(1), BiPoly());
    CHECK_THROWS_AS(blow_up_charts(f), InputError);
}

TEST_CASE("reduced germs stay single nodes") {
    OneFormGerm f = saturate(y(), x());
    ReductionTree t = reduce(f);
    CHECK(t.nodes.size() == 1);
    CHECK(t.blowups_used == 0);
    CHECK(t.tangency_excess(0) == 0);

    // already-reduced saddle-node: second type but not a generalized curve
    OneFormGerm sn = saturate(y() + x() * y(), x() * x());
    ReductionTree ts = reduce(sn);
    CHECK(ts.nodes.size() == 1);
    CHECK(ts.is_second_type());
    CHECK(!ts.is_generalized_curve());
}

TEST_CASE("riccati reduction: depth 1 with a tangent saddle-node") {
    ReductionTree t = reduce(riccati());
    REQUIRE(t.nodes.size() == 3);
    CHECK(!t.nodes[0].dicritical_step);
    CHECK(t.nodes[0].m_p == 2);
    REQUIRE(t.nodes[0].children.size() == 2);

    int sn = -1, hy = -1;
    for (const ChildLink& cl : t.nodes[0].children) {
        if (t.nodes[cl.node].cls.kind == PointKind::saddle_node) sn = cl.node;
        if (t.nodes[cl.node].cls.kind == PointKind::non_degenerate) hy = cl.node;
    }
    REQUIRE(sn > 0);
    REQUIRE(hy > 0);
    CHECK(t.nodes[sn].cls.weak_index == 2);
    CHECK(t.nodes[sn].cls.d_reduced);
    CHECK(t.nodes[hy].cls.ratio_rational);
    CHECK(t.nodes[hy].cls.ratio == -1);
    CHECK(t.nodes[hy].cls.d_reduced);

    CHECK(t.tangency_excess(0) == 1);
    CHECK(t.tangency_excess(sn) == 0);
    CHECK(!t.is_second_type());
    CHECK(!t.is_generalized_curve());
}

TEST_CASE("suzuki reduction: dicritical root, tangency resolved") {
    ReductionTree t = reduce(suzuki());
    CHECK(t.nodes[0].dicritical_step);
    CHECK(t.nodes[0].m_p == 3);
    REQUIRE(t.nodes[0].children.size() == 1);

    int q = t.nodes[0].children[0].node;
    CHECK(t.nodes[q].cls.raw_kind == PointKind::regular);  // tangency point
    CHECK(t.nodes[q].blown_up);

    CHECK(t.tangency_excess(0) == 0);
    CHECK(t.is_second_type());
    CHECK(t.is_generalized_curve());

    // final divisor: dicritical root component of valence 1 plus two
    // invariant components
    int dic = 0, inv = 0;
    for (const Component& cp : t.comps) (cp.dicritical ? dic : inv) += 1;
    CHECK(dic == 1);
    CHECK(inv == 2);
    CHECK(t.valence_rel(0, 0) == 1);
    CHECK(t.comps[2].rho == 2);  // component from the corner blow-up

    // exactly one non-corner singularity on an invariant component
    int frontier_sing = 0;
    for (const Node& n : t.nodes)
        if (!n.blown_up && n.cls.raw_kind == PointKind::non_degenerate &&
            !(n.comp_x && n.comp_y))
            ++frontier_sing;
    CHECK(frontier_sing == 1);
}

TEST_CASE("cusp-type dicritical tangent form") {
    // omega = d(y^2 - x^3): the curve y^2 = x^3 is invariant
    OneFormGerm f = saturate(c(-3) * x() * x(), c(2) * y());
    ReductionTree t = reduce(f);
    CHECK(t.nodes.size() > 1);
    CHECK(t.is_generalized_curve());
    CHECK(t.tangency_excess(0) == 0);
}

TEST_CASE("budget guards runaway reductions") {
    EngineOptions opts;
    opts.blowup_budget = 1;
    CHECK_THROWS_AS(reduce(suzuki(), opts), BudgetExceeded);
}

TEST_CASE("minimality: leaf germs reduce to single nodes") {
    ReductionTree t = reduce(riccati());
    for (const Node& n : t.nodes) {
        if (n.blown_up) continue;
        ReductionTree sub = reduce(n.germ);
        CHECK(sub.nodes.size() == 1);
    }
}

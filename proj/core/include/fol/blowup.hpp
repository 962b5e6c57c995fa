#pragma once

#include <set>

#include "fol/foliation.hpp"

namespace fol {

struct EngineOptions {
    int trunc_start = 0;  // 0: derive 4*(nu+1)^2 from the root germ
    int trunc_cap = 64;
    int blowup_budget = 64;
};

// Exceptional component bookkeeping, root-relative.
struct Component {
    int id = -1;
    int birth_node = -1;  // node whose blow-up created it
    bool dicritical = false;
    long rho = 1;         // 1 at the root, else sum over components through the center
    std::set<int> adj;    // adjacent components after the full reduction
    // occupied chart-1 coordinates on this component (singular points,
    // tangencies, corners); used to pick free representative points
    std::vector<K> taken_t;
    bool taken_infinity = false;  // the chart-2 origin is occupied
    TowerPtr tower;               // tower the taken coordinates live in
};

// How a child sits on the exceptional line of its parent's step.
struct ChildLink {
    int node = -1;
    int chart = 1;  // 1: (x,y) = (x, x(t+t0)); 2: (x,y) = (s*y, y) at s=0
    K t0;
};

struct Node {
    int id = 0, parent = -1;
    TowerPtr tower;
    long conj_deg = 1;  // embeddings this node represents over its parent
    OneFormGerm germ;   // chart-local, recentred, saturated
    std::optional<int> comp_x, comp_y;  // divisor components along {x=0} / {y=0}
    Classification cls;
    bool blown_up = false;
    bool dicritical_step = false;
    int m_p = 0;  // nu, or nu+1 for a dicritical step
    int new_comp = -1;
    std::vector<ChildLink> children;
};

class ReductionTree {
public:
    std::vector<Node> nodes;
    std::vector<Component> comps;
    EngineOptions opts;
    int blowups_used = 0;

    const Node& node(int id) const { return nodes[id]; }
    bool is_leaf(int id) const { return !nodes[id].blown_up; }
    bool node_in_subtree(int id, int q) const;
    bool comp_in_subtree(int comp, int q) const;
    long conj_mult(int id, int anc) const;  // product of conj_deg along the path

    // component multiplicity / valence relative to the reduction of the
    // germ at q (only components born in q's subtree exist for it)
    long rho_rel(int comp, int q) const;
    int valence_rel(int comp, int q) const;

    // r is an endpoint of the reduction of the germ at q
    bool frontier_rel(int r, int q) const;

    // tangency excess of the germ at q over its own reduction
    long tangency_excess(int q) const;
    bool is_second_type() const;
    bool is_generalized_curve() const;

    std::string dump() const;
};

struct BlowupCharts {
    bool dicritical = false;
    int m_p = 0;
    OneFormGerm chart1;  // coordinates (x, t), exceptional line {x=0}
    OneFormGerm chart2;  // coordinates (s, y), exceptional line {y=0}
};

// One quadratic transform of a saturated germ at the origin. A regular
// center is rejected unless allow_regular is set: the reduction itself
// blows up regular points when the divisor demands it (tangencies with
// dicritical components, corners without invariant branches).
BlowupCharts blow_up_charts(const OneFormGerm& f, bool allow_regular = false);

// Full reduction of singularities of a saturated germ.
ReductionTree reduce(const OneFormGerm& f, const EngineOptions& opts = {});

int default_truncation(int nu);

}  // namespace fol

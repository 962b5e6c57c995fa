#include "fol/blowup.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

#include "fol/errors.hpp"

namespace fol {

int default_truncation(int nu) { return 4 * (nu + 1) * (nu + 1); }

BlowupCharts blow_up_charts(const OneFormGerm& f, bool allow_regular) {
    TowerPtr tw = f.tower();
    int nu = multiplicity(f);
    if (nu < 1 && !allow_regular)
        throw InputError("blow-up: center not admissible (regular point)");
    BiPoly X = BiPoly::var_x(tw), Y = BiPoly::var_y(tw);

    BiPoly Pn = f.P.initial_form(nu), Qn = f.Q.initial_form(nu);
    BiPoly tangent_form = X * Pn + Y * Qn;
    bool dic = tangent_form.struct_zero() || tangent_form.is_zero();

    BlowupCharts out;
    out.dicritical = dic;
    out.m_p = nu + (dic ? 1 : 0);

    // chart 1: (x, y) = (x, x t), coordinates (x, t)
    {
        BiPoly Ps = f.P.subst(X, X * Y), Qs = f.Q.subst(X, X * Y);
        BiPoly A0 = Ps + Y * Qs;
        BiPoly B0 = X * Qs;
        int m = std::min(A0.monomial_content().first, B0.monomial_content().first);
        assert(m == out.m_p);
        out.chart1 = {A0.divide_xpow(m), B0.divide_xpow(m)};
    }
    // chart 2: (x, y) = (s y, y), coordinates (s, y)
    {
        BiPoly Ps = f.P.subst(X * Y, Y), Qs = f.Q.subst(X * Y, Y);
        BiPoly A0 = Y * Ps;
        BiPoly B0 = X * Ps + Qs;
        int m = std::min(A0.monomial_content().second, B0.monomial_content().second);
        assert(m == out.m_p);
        out.chart2 = {A0.divide_ypow(m), B0.divide_ypow(m)};
    }
    return out;
}

// ---------------------------------------------------------------------
// tree construction
// ---------------------------------------------------------------------
namespace {

struct ChildDraft {
    TowerPtr tower;
    long conj_deg = 1;
    int chart = 1;
    K t0;
    OneFormGerm germ;
    bool inherit_x = false;  // chart 2: parent's {x=0} component passes through
    bool inherit_y = false;  // chart 1 at t0=0: parent's {y=0} component
    Classification cls;
};

struct NodePlan {
    BlowupCharts charts;
    std::vector<ChildDraft> drafts;
};

// Builds and classifies one candidate child, refining the tower when a
// split happens in the adjoined levels. Splits below the parent tower are
// rethrown so the node itself gets forked.
void draft_candidate(const Node& n, const BlowupCharts& ch, const TowerPtr& tw2,
                     long deg, int chart, const K& t0, int trunc, int cap,
                     std::vector<ChildDraft>& out) {
    try {
        ChildDraft d;
        d.tower = tw2;
        d.conj_deg = deg;
        d.chart = chart;
        d.t0 = embed(t0, tw2);
        DivisorLocal div;
        if (chart == 1) {
            bool at_zero = d.t0.is_zero();
            BiPoly sh = BiPoly::var_y(tw2) + BiPoly::constant(d.t0);
            d.germ = {bp_embed(ch.chart1.P, tw2).subst(BiPoly::var_x(tw2), sh),
                      bp_embed(ch.chart1.Q, tw2).subst(BiPoly::var_x(tw2), sh)};
            d.inherit_y = at_zero && n.comp_y.has_value();
            div.on_x = true;
            div.on_y = d.inherit_y;
        } else {
            d.germ = {bp_embed(ch.chart2.P, tw2), bp_embed(ch.chart2.Q, tw2)};
            d.inherit_x = n.comp_x.has_value();
            div.on_y = true;
            div.on_x = d.inherit_x;
        }
        d.cls = classify(d.germ, div, trunc, cap);
        out.push_back(std::move(d));
    } catch (const TowerSplit& ts) {
        if (ts.level <= n.tower->height()) throw;
        for (const TowerPtr& t : split_tower(ts)) {
            long scaled = deg * t->embedding_count() / tw2->embedding_count();
            draft_candidate(n, ch, t, scaled, chart, refit(embed(t0, tw2), t), trunc,
                            cap, out);
        }
    }
}

NodePlan plan_node(const Node& n, int trunc, int cap) {
    NodePlan plan;
    plan.charts = blow_up_charts(n.germ, /*allow_regular=*/true);
    int nu = multiplicity(n.germ);
    BiPoly Pn = n.germ.P.initial_form(nu), Qn = n.germ.Q.initial_form(nu);
    BiPoly X = BiPoly::var_x(n.tower), Y = BiPoly::var_y(n.tower);
    BiPoly W = plan.charts.dicritical ? Qn.divide_xpow(1) : X * Pn + Y * Qn;

    UPoly W1 = W.at_x(embed(K(1L), n.tower));
    bool w_at_inf = W.eval(K(0L), K(1L)).is_zero();

    bool zero_enumerated = false;
    if (!up_is_zero(W1)) {
        for (const ExtensionBranch& br : enumerate_roots(n.tower, W1)) {
            bool root_zero = br.root.struct_zero();
            if (root_zero) zero_enumerated = true;
            draft_candidate(n, plan.charts, br.tower, br.degree, 1, br.root, trunc,
                            cap, plan.drafts);
        }
    }
    if (n.comp_y && !zero_enumerated)
        draft_candidate(n, plan.charts, n.tower, 1, 1, embed(K(0L), n.tower), trunc,
                        cap, plan.drafts);
    if (n.comp_x || w_at_inf)
        draft_candidate(n, plan.charts, n.tower, 1, 2, embed(K(0L), n.tower), trunc,
                        cap, plan.drafts);
    return plan;
}

}  // namespace

ReductionTree reduce(const OneFormGerm& f, const EngineOptions& opts) {
    ReductionTree tree;
    tree.opts = opts;
    int nu0 = multiplicity(f);
    int trunc = opts.trunc_start > 0 ? opts.trunc_start
                                     : std::min(default_truncation(nu0), opts.trunc_cap);
    int cap = std::max(trunc, opts.trunc_cap);

    Node root;
    root.id = 0;
    root.tower = f.tower();
    root.germ = f;
    root.cls = classify(f, DivisorLocal{}, trunc, cap);
    tree.nodes.push_back(root);

    std::deque<int> work{0};
    while (!work.empty()) {
        int id = work.front();
        work.pop_front();
        if (tree.nodes[id].cls.d_regular || tree.nodes[id].cls.d_reduced) continue;

        NodePlan plan;
        try {
            plan = plan_node(tree.nodes[id], trunc, cap);
        } catch (const TowerSplit& ts) {
            // the node's own tower is reducible here: fork it and retry
            if (tree.nodes[id].parent < 0) throw;
            const Node base = tree.nodes[id];
            DivisorLocal div{base.comp_x.has_value(), base.comp_y.has_value()};
            std::vector<ChildDraft> forks;
            auto make_fork = [&](auto&& self, const TowerPtr& t) -> void {
                try {
                    ChildDraft d;
                    d.tower = t;
                    d.conj_deg = base.conj_deg * t->embedding_count() /
                                 base.tower->embedding_count();
                    d.germ = {bp_refit(base.germ.P, t), bp_refit(base.germ.Q, t)};
                    d.cls = classify(d.germ, div, trunc, cap);
                    forks.push_back(std::move(d));
                } catch (const TowerSplit& deeper) {
                    for (const TowerPtr& t2 : split_tower(deeper)) self(self, t2);
                }
            };
            for (const TowerPtr& t : split_tower(ts)) make_fork(make_fork, t);

            int parent = base.parent;
            auto link_it =
                std::find_if(tree.nodes[parent].children.begin(),
                             tree.nodes[parent].children.end(),
                             [&](const ChildLink& cl) { return cl.node == id; });
            assert(link_it != tree.nodes[parent].children.end());
            ChildLink base_link = *link_it;
            for (size_t i = 0; i < forks.size(); ++i) {
                int nid = i == 0 ? id : (int)tree.nodes.size();
                if (i > 0) {
                    Node copy = base;
                    copy.id = nid;
                    tree.nodes.push_back(copy);
                    ChildLink cl = base_link;
                    cl.node = nid;
                    cl.t0 = refit(base_link.t0, forks[i].tower);
                    tree.nodes[parent].children.push_back(cl);
                }
                Node& m = tree.nodes[nid];
                m.tower = forks[i].tower;
                m.conj_deg = forks[i].conj_deg;
                m.germ = forks[i].germ;
                m.cls = forks[i].cls;
                work.push_back(nid);
            }
            for (ChildLink& cl : tree.nodes[parent].children)
                if (cl.node == id) cl.t0 = refit(base_link.t0, forks[0].tower);
            continue;
        }

        if (tree.blowups_used >= opts.blowup_budget)
            throw BudgetExceeded("blow-up budget of " +
                                 std::to_string(opts.blowup_budget) + " exhausted");
        ++tree.blowups_used;

        Node& n = tree.nodes[id];
        n.blown_up = true;
        n.dicritical_step = plan.charts.dicritical;
        n.m_p = plan.charts.m_p;

        Component comp;
        comp.id = (int)tree.comps.size();
        comp.birth_node = id;
        comp.dicritical = plan.charts.dicritical;
        comp.tower = n.tower;
        long rho = 0;
        if (n.comp_x) rho += tree.comps[*n.comp_x].rho;
        if (n.comp_y) rho += tree.comps[*n.comp_y].rho;
        comp.rho = id == 0 ? 1 : rho;
        if (n.comp_x && n.comp_y) {
            tree.comps[*n.comp_x].adj.erase(*n.comp_y);
            tree.comps[*n.comp_y].adj.erase(*n.comp_x);
        }
        if (n.comp_x) {
            tree.comps[*n.comp_x].adj.insert(comp.id);
            comp.adj.insert(*n.comp_x);
        }
        if (n.comp_y) {
            tree.comps[*n.comp_y].adj.insert(comp.id);
            comp.adj.insert(*n.comp_y);
        }
        n.new_comp = comp.id;
        tree.comps.push_back(comp);

        const int new_comp = comp.id;  // nodes vector may reallocate below
        for (ChildDraft& d : plan.drafts) {
            Component& cn = tree.comps[new_comp];
            if (d.chart == 1) {
                cn.tower = common_tower(cn.tower, d.tower);
                cn.taken_t.push_back(d.t0);
            } else {
                cn.taken_infinity = true;
            }
            if (d.cls.d_regular) continue;  // not D-singular
            Node child;
            child.id = (int)tree.nodes.size();
            child.parent = id;
            child.tower = d.tower;
            child.conj_deg = d.conj_deg;
            child.germ = d.germ;
            if (d.chart == 1) {
                child.comp_x = new_comp;
                if (d.inherit_y) child.comp_y = tree.nodes[id].comp_y;
            } else {
                child.comp_y = new_comp;
                if (d.inherit_x) child.comp_x = tree.nodes[id].comp_x;
            }
            child.cls = d.cls;
            int cid = child.id;
            tree.nodes.push_back(std::move(child));
            tree.nodes[id].children.push_back({cid, d.chart, d.t0});
            work.push_back(cid);
        }
    }
    return tree;
}

// ---------------------------------------------------------------------
// tree queries
// ---------------------------------------------------------------------

bool ReductionTree::node_in_subtree(int id, int q) const {
    while (id >= 0) {
        if (id == q) return true;
        id = nodes[id].parent;
    }
    return false;
}

bool ReductionTree::comp_in_subtree(int comp, int q) const {
    return node_in_subtree(comps[comp].birth_node, q);
}

long ReductionTree::conj_mult(int id, int anc) const {
    long m = 1;
    while (id >= 0 && id != anc) {
        m *= nodes[id].conj_deg;
        id = nodes[id].parent;
    }
    return m;
}

long ReductionTree::rho_rel(int comp, int q) const {
    const Component& c = comps[comp];
    if (c.birth_node == q) return 1;
    const Node& b = nodes[c.birth_node];
    long r = 0;
    if (b.comp_x && comp_in_subtree(*b.comp_x, q)) r += rho_rel(*b.comp_x, q);
    if (b.comp_y && comp_in_subtree(*b.comp_y, q)) r += rho_rel(*b.comp_y, q);
    assert(r >= 1);
    return r;
}

int ReductionTree::valence_rel(int comp, int q) const {
    // count geometric components per copy of `comp`
    int v = 0;
    int birth = comps[comp].birth_node;
    for (int a : comps[comp].adj) {
        if (!comp_in_subtree(a, q)) continue;
        int ab = comps[a].birth_node;
        v += node_in_subtree(ab, birth) ? (int)conj_mult(ab, birth) : 1;
    }
    return v;
}

bool ReductionTree::frontier_rel(int r, int q) const {
    const Node& n = nodes[r];
    PointKind rk = n.cls.raw_kind;
    if (rk == PointKind::non_reduced) return false;
    bool on_x = n.comp_x && comp_in_subtree(*n.comp_x, q);
    bool on_y = n.comp_y && comp_in_subtree(*n.comp_y, q);
    if (rk == PointKind::regular) {
        if (on_x && !n.cls.x_invariant && n.cls.leaf_dx_zero) return false;
        if (on_y && !n.cls.y_invariant && n.cls.leaf_dy_zero) return false;
        if (on_x && on_y && !n.cls.x_invariant && !n.cls.y_invariant) return false;
        return true;
    }
    return (!on_x || n.cls.x_invariant) && (!on_y || n.cls.y_invariant);
}

namespace {
std::optional<int> weak_axis_component(const Node& n) {
    if (n.cls.raw_kind != PointKind::saddle_node) return std::nullopt;
    if (n.comp_x && n.cls.x_invariant && n.cls.weak_dir.vx.is_zero()) return n.comp_x;
    if (n.comp_y && n.cls.y_invariant && n.cls.weak_dir.vy.is_zero()) return n.comp_y;
    return std::nullopt;
}
}  // namespace

long ReductionTree::tangency_excess(int q) const {
    if (frontier_rel(q, q)) return 0;
    long tau = 0;
    std::vector<int> stack{q};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        for (const ChildLink& cl : nodes[id].children) {
            int r = cl.node;
            if (!frontier_rel(r, q)) {
                stack.push_back(r);
                continue;
            }
            auto wc = weak_axis_component(nodes[r]);
            if (wc && comp_in_subtree(*wc, q))
                tau += rho_rel(*wc, q) * (nodes[r].cls.weak_index - 1) * conj_mult(r, q);
        }
    }
    return tau;
}

bool ReductionTree::is_second_type() const {
    for (const Node& n : nodes) {
        if (!frontier_rel(n.id, 0)) continue;
        if (weak_axis_component(n)) return false;
    }
    return true;
}

bool ReductionTree::is_generalized_curve() const {
    for (const Node& n : nodes)
        if (frontier_rel(n.id, 0) && n.cls.raw_kind == PointKind::saddle_node)
            return false;
    return true;
}

std::string ReductionTree::dump() const {
    std::ostringstream os;
    for (const Node& n : nodes) {
        os << "node " << n.id << " parent=" << n.parent << " nu=" << n.cls.nu
           << " kind=" << (int)n.cls.raw_kind << " conj=" << n.conj_deg;
        if (n.blown_up)
            os << " step=" << (n.dicritical_step ? "dic" : "inv") << " m=" << n.m_p
               << " comp=" << n.new_comp;
        if (n.comp_x) os << " on_x=" << *n.comp_x;
        if (n.comp_y) os << " on_y=" << *n.comp_y;
        os << "\n";
    }
    for (const Component& c : comps) {
        os << "comp " << c.id << " birth=" << c.birth_node
           << (c.dicritical ? " dicritical" : " invariant") << " rho=" << c.rho
           << " val=" << c.adj.size() << "\n";
    }
    return os.str();
}

}  // namespace fol

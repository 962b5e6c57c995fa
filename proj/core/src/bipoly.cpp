#include "fol/bipoly.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <sstream>

#include "fol/errors.hpp"

namespace fol {

BiPoly BiPoly::constant(const K& c) {
    BiPoly p(c.tower());
    p.add_term(0, 0, c);
    return p;
}
BiPoly BiPoly::var_x(const TowerPtr& tw) {
    BiPoly p(tw);
    p.add_term(1, 0, embed(K(1L), tw));
    return p;
}
BiPoly BiPoly::var_y(const TowerPtr& tw) {
    BiPoly p(tw);
    p.add_term(0, 1, embed(K(1L), tw));
    return p;
}
BiPoly BiPoly::monomial(const K& c, int i, int j) {
    BiPoly p(c.tower());
    p.add_term(i, j, c);
    return p;
}

void BiPoly::add_term(int i, int j, const K& c) {
    if (c.struct_zero()) return;
    tw_ = common_tower(tw_, c.tower());
    auto it = t_.find({i, j});
    if (it == t_.end()) {
        t_.emplace(Key{i, j}, c);
    } else {
        K s = it->second + c;
        if (s.struct_zero())
            t_.erase(it);
        else
            it->second = s;
    }
}

K BiPoly::coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? embed(K(0L), tw_) : it->second;
}

BiPoly BiPoly::operator-() const {
    BiPoly out(tw_);
    for (auto& [k, c] : t_) out.t_.emplace(k, -c);
    return out;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly out = a;
    out.tw_ = common_tower(a.tw_, b.tw_);
    for (auto& [k, c] : b.t_) out.add_term(k.first, k.second, c);
    return out;
}
BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out(common_tower(a.tw_, b.tw_));
    for (auto& [ka, ca] : a.t_)
        for (auto& [kb, cb] : b.t_)
            out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

BiPoly BiPoly::scale(const K& c) const {
    if (c.struct_zero()) return BiPoly(tw_);
    BiPoly out(common_tower(tw_, c.tower()));
    for (auto& [k, v] : t_) out.add_term(k.first, k.second, v * c);
    return out;
}

bool BiPoly::is_zero() const {
    for (auto& [k, c] : t_)
        if (!c.is_zero()) return false;
    return true;
}

int BiPoly::order() const {
    std::vector<std::pair<int, const K*>> by_deg;
    by_deg.reserve(t_.size());
    for (auto& [k, c] : t_) by_deg.push_back({k.first + k.second, &c});
    std::sort(by_deg.begin(), by_deg.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [d, c] : by_deg)
        if (!c->is_zero()) return d;
    throw InputError("order of zero polynomial undefined");
}

int BiPoly::deg_total_struct() const {
    int d = -1;
    for (auto& [k, c] : t_) d = std::max(d, k.first + k.second);
    return d;
}
int BiPoly::deg_x() const {
    int d = -1;
    for (auto& [k, c] : t_) d = std::max(d, k.first);
    return d;
}
int BiPoly::deg_y() const {
    int d = -1;
    for (auto& [k, c] : t_) d = std::max(d, k.second);
    return d;
}

BiPoly BiPoly::initial_form(int d) const {
    BiPoly out(tw_);
    for (auto& [k, c] : t_)
        if (k.first + k.second == d) out.t_.emplace(k, c);
    return out;
}

BiPoly BiPoly::truncate_total(int d) const {
    BiPoly out(tw_);
    for (auto& [k, c] : t_)
        if (k.first + k.second < d) out.t_.emplace(k, c);
    return out;
}

BiPoly BiPoly::dx() const {
    BiPoly out(tw_);
    for (auto& [k, c] : t_)
        if (k.first >= 1) out.add_term(k.first - 1, k.second, c * K((long)k.first));
    return out;
}
BiPoly BiPoly::dy() const {
    BiPoly out(tw_);
    for (auto& [k, c] : t_)
        if (k.second >= 1) out.add_term(k.first, k.second - 1, c * K((long)k.second));
    return out;
}

K BiPoly::eval(const K& x, const K& y) const {
    K acc = embed(K(0L), tw_);
    for (auto& [k, c] : t_) acc = acc + c * x.pow(k.first) * y.pow(k.second);
    return acc;
}

BiPoly BiPoly::subst(const BiPoly& X, const BiPoly& Y) const {
    TowerPtr tw = common_tower(tw_, common_tower(X.tower(), Y.tower()));
    BiPoly out(tw);
    std::map<int, BiPoly> xp, yp;
    xp[0] = BiPoly::constant(embed(K(1L), tw));
    yp[0] = xp[0];
    auto pw = [](std::map<int, BiPoly>& cache, const BiPoly& base, int e) -> const BiPoly& {
        int have = cache.rbegin()->first;
        while (have < e) {
            cache[have + 1] = cache[have] * base;
            ++have;
        }
        return cache[e];
    };
    for (auto& [k, c] : t_) {
        BiPoly term = pw(xp, X, k.first) * pw(yp, Y, k.second);
        out = out + term.scale(c);
    }
    return out;
}

UPoly BiPoly::at_x(const K& x0) const {
    UPoly out;
    for (auto& [k, c] : t_) {
        K v = c * embed(x0, common_tower(tw_, x0.tower())).pow(k.first);
        if ((int)out.size() <= k.second) out.resize(k.second + 1, embed(K(0L), tw_));
        out[k.second] = out[k.second] + v;
    }
    return out;
}

UPoly BiPoly::at_y(const K& y0) const {
    UPoly out;
    for (auto& [k, c] : t_) {
        K v = c * embed(y0, common_tower(tw_, y0.tower())).pow(k.second);
        if ((int)out.size() <= k.first) out.resize(k.first + 1, embed(K(0L), tw_));
        out[k.first] = out[k.first] + v;
    }
    return out;
}

BiPoly BiPoly::divide_xpow(int k) const {
    BiPoly out(tw_);
    for (auto& [key, c] : t_) {
        assert(key.first >= k);
        out.t_.emplace(Key{key.first - k, key.second}, c);
    }
    return out;
}
BiPoly BiPoly::divide_ypow(int k) const {
    BiPoly out(tw_);
    for (auto& [key, c] : t_) {
        assert(key.second >= k);
        out.t_.emplace(Key{key.first, key.second - k}, c);
    }
    return out;
}

BiPoly::Key BiPoly::monomial_content() const {
    if (t_.empty()) return {0, 0};
    int a = INT_MAX, b = INT_MAX;
    for (auto& [k, c] : t_) {
        a = std::min(a, k.first);
        b = std::min(b, k.second);
    }
    return {a, b};
}

std::string BiPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : t_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")";
        if (k.first) os << "*x" << (k.first > 1 ? "^" + std::to_string(k.first) : "");
        if (k.second) os << "*y" << (k.second > 1 ? "^" + std::to_string(k.second) : "");
        first = false;
    }
    return os.str();
}

BiPoly bp_embed(const BiPoly& p, const TowerPtr& tw) {
    BiPoly out(tw);
    for (auto& [k, c] : p.terms()) out.add_term(k.first, k.second, embed(c, tw));
    return out;
}

BiPoly bp_refit(const BiPoly& p, const TowerPtr& refined) {
    BiPoly out(refined);
    for (auto& [k, c] : p.terms()) out.add_term(k.first, k.second, refit(c, refined));
    return out;
}

BiPoly bp_from_upoly_x(const UPoly& p) {
    BiPoly out;
    for (size_t i = 0; i < p.size(); ++i) out.add_term((int)i, 0, p[i]);
    return out;
}
BiPoly bp_from_upoly_y(const UPoly& p) {
    BiPoly out;
    for (size_t i = 0; i < p.size(); ++i) out.add_term(0, (int)i, p[i]);
    return out;
}

// ---------------------------------------------------------------------
// gcd via primitive pseudo-remainder sequences in (K[x])[y]
// ---------------------------------------------------------------------
namespace {

using YPoly = std::vector<UPoly>;  // coefficient of y^j is a UPoly in x

YPoly to_y(const BiPoly& p) {
    YPoly out;
    for (auto& [k, c] : p.terms()) {
        if ((int)out.size() <= k.second) out.resize(k.second + 1);
        UPoly& u = out[k.second];
        if ((int)u.size() <= k.first) u.resize(k.first + 1, K(0L));
        u[k.first] = u[k.first] + c;
    }
    for (UPoly& u : out) u = up_trim(u);
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

BiPoly from_y(const YPoly& p, const TowerPtr& tw) {
    BiPoly out(tw);
    for (size_t j = 0; j < p.size(); ++j)
        for (size_t i = 0; i < p[j].size(); ++i) out.add_term((int)i, (int)j, p[j][i]);
    return out;
}

UPoly content_x(const YPoly& p) {
    UPoly g;
    for (const UPoly& c : p)
        if (!c.empty()) g = g.empty() ? up_monic(c) : up_gcd(g, c);
    return g;
}

YPoly divide_content(const YPoly& p, const UPoly& g) {
    YPoly out(p.size());
    for (size_t j = 0; j < p.size(); ++j) {
        if (p[j].empty()) continue;
        auto [q, r] = up_divmod(p[j], g);
        assert(up_is_zero(r));
        out[j] = q;
    }
    return out;
}

// pseudo-remainder of a by b in y (deg_y b >= 1)
YPoly prem_y(YPoly a, const YPoly& b) {
    int db = (int)b.size() - 1;
    const UPoly& lb = b.back();
    while ((int)a.size() - 1 >= db && !a.empty()) {
        int da = (int)a.size() - 1;
        UPoly la = a.back();
        YPoly next(a.size() - 1);
        for (int j = 0; j < (int)a.size() - 1; ++j) next[j] = up_mul(a[j], lb);
        for (int j = 0; j < db; ++j) {
            int jj = j + da - db;
            next[jj] = up_sub(next[jj], up_mul(la, b[j]));
        }
        for (UPoly& u : next) u = up_trim(u);
        while (!next.empty() && next.back().empty()) next.pop_back();
        a = std::move(next);
    }
    return a;
}

}  // namespace

BiPoly bp_gcd(const BiPoly& a, const BiPoly& b) {
    TowerPtr tw = common_tower(a.tower(), b.tower());
    if (a.struct_zero() || a.is_zero()) return bp_embed(b, tw);
    if (b.struct_zero() || b.is_zero()) return bp_embed(a, tw);
    YPoly A = to_y(bp_embed(a, tw)), B = to_y(bp_embed(b, tw));
    UPoly cg = up_gcd(content_x(A), content_x(B));
    A = divide_content(A, content_x(A));
    B = divide_content(B, content_x(B));
    if (A.size() < B.size()) std::swap(A, B);
    while ((int)B.size() - 1 >= 1) {
        YPoly r = prem_y(A, B);
        if (r.empty()) return from_y(B, tw) * bp_from_upoly_x(cg);
        r = divide_content(r, content_x(r));
        A = std::move(B);
        B = std::move(r);
    }
    if (!B.empty() && !B[0].empty()) return bp_from_upoly_x(cg);
    return from_y(A, tw) * bp_from_upoly_x(cg);
}

BiPoly bp_div_exact(const BiPoly& p, const BiPoly& g) {
    TowerPtr tw = common_tower(p.tower(), g.tower());
    if (p.struct_zero()) return BiPoly(tw);
    YPoly A = to_y(bp_embed(p, tw)), B = to_y(bp_embed(g, tw));
    while (!B.empty() && B.back().empty()) B.pop_back();
    if (B.empty()) throw InputError("bp_div_exact: division by zero");
    YPoly q(A.size() >= B.size() ? A.size() - B.size() + 1 : 0);
    while (!A.empty() && A.size() >= B.size()) {
        auto [qc, rc] = up_divmod(A.back(), B.back());
        if (!up_is_zero(rc)) throw InputError("bp_div_exact: not divisible");
        int k = (int)A.size() - (int)B.size();
        q[k] = qc;
        for (size_t j = 0; j < B.size(); ++j)
            A[k + j] = up_sub(A[k + j], up_mul(qc, B[j]));
        for (UPoly& u : A) u = up_trim(u);
        while (!A.empty() && A.back().empty()) A.pop_back();
    }
    for (const UPoly& u : A)
        if (!u.empty()) throw InputError("bp_div_exact: not divisible");
    return from_y(q, tw);
}

// ---------------------------------------------------------------------

UPoly up_series_inv(const UPoly& p, int m) {
    if (p.empty() || p[0].is_zero())
        throw InputError("series inverse: constant term is zero");
    K c0 = p[0].inv();
    UPoly out(m, embed(K(0L), p[0].tower()));
    out[0] = c0;
    for (int n = 1; n < m; ++n) {
        K acc = embed(K(0L), p[0].tower());
        for (int i = 1; i <= n && i < (int)p.size(); ++i) acc = acc + p[i] * out[n - i];
        out[n] = -(c0 * acc);
    }
    return out;
}

WDiv weierstrass_divide(const BiPoly& n, const BiPoly& f, int d0, int ox, int oy) {
    TowerPtr tw = common_tower(n.tower(), f.tower());
    UPoly f0 = up_embed(f.at_x(embed(K(0L), tw)), tw);
    if ((int)f0.size() <= d0)
        throw InputError("weierstrass_divide: bad distinguished order");
    UPoly u(f0.begin() + d0, f0.end());
    UPoly uinv = up_series_inv(u, oy);

    std::vector<UPoly> R(ox);  // residual x-slices as y-polynomials
    for (auto& [k, c] : n.terms()) {
        if (k.first >= ox) continue;
        UPoly& sl = R[k.first];
        if ((int)sl.size() <= k.second) sl.resize(k.second + 1, embed(K(0L), tw));
        sl[k.second] = sl[k.second] + embed(c, tw);
    }
    std::vector<UPoly> fsl(ox);  // f's x-slices
    for (auto& [k, c] : f.terms()) {
        if (k.first >= ox) continue;
        UPoly& sl = fsl[k.first];
        if ((int)sl.size() <= k.second) sl.resize(k.second + 1, embed(K(0L), tw));
        sl[k.second] = sl[k.second] + embed(c, tw);
    }

    BiPoly q(tw), r(tw);
    for (int i = 0; i < ox; ++i) {
        UPoly ri = R[i];
        // the part below y^d0 is final for this slice: q*f only adds >= d0 here
        for (int j = 0; j < d0 && j < (int)ri.size(); ++j)
            if (!ri[j].struct_zero()) r.add_term(i, j, ri[j]);
        UPoly hi;
        if ((int)ri.size() > d0) hi.assign(ri.begin() + d0, ri.end());
        hi = up_trim(std::move(hi));
        if (hi.empty()) continue;
        UPoly qi = up_mul(hi, uinv);
        if ((int)qi.size() > oy) qi.resize(oy);
        for (int j = 0; j < (int)qi.size(); ++j)
            if (!qi[j].struct_zero()) q.add_term(i, j, qi[j]);
        // slice i is consumed exactly; propagate into the higher slices
        for (int fi = 1; fi + i < ox; ++fi) {
            if (fsl[fi].empty()) continue;
            UPoly prod = up_mul(qi, fsl[fi]);
            UPoly& tgt = R[i + fi];
            if (tgt.size() < prod.size()) tgt.resize(prod.size(), embed(K(0L), tw));
            for (size_t j = 0; j < prod.size(); ++j) tgt[j] = tgt[j] - prod[j];
        }
    }
    return {q, r};
}

}  // namespace fol

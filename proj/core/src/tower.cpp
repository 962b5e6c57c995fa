#include "fol/tower.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "fol/errors.hpp"

namespace fol {

bool rat_is_square(const Rat& r, Rat& root) {
    if (r < 0) return false;
    Int num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = make_rat(rn, rd);
    return true;
}

const TowerPtr& Tower::rationals() {
    static const TowerPtr q = std::make_shared<Tower>(nullptr, std::vector<TVal>{});
    return q;
}

// ---------------------------------------------------------------------
// internal polynomial helpers over the coefficients of a given level
// ---------------------------------------------------------------------
namespace {

const Tower* tower_at(const Tower* t, int level) {
    // the Tower instance whose top minpoly defines `level`
    while (t->height() > level) t = t->parent().get();
    assert(t->height() == level && level >= 1);
    return t;
}

using PV = std::vector<TVal>;

void pv_strip_struct(PV& p) {
    while (!p.empty() && p.back().struct_zero()) p.pop_back();
}

}  // namespace

Tower::Tower(TowerPtr parent, std::vector<TVal> minpoly)
    : parent_(std::move(parent)), minpoly_(std::move(minpoly)) {
    height_ = parent_ ? parent_->height() + 1 : 0;
    if (parent_) {
        // deterministic embedding: smallest root of the minpoly (lexicographic
        // by real then imaginary part), via Durand-Kerner on approximations
        int d = (int)minpoly_.size() - 1;
        std::vector<std::complex<double>> c(d + 1);
        for (int i = 0; i <= d; ++i) c[i] = parent_->approx(height_ - 1, minpoly_[i]);
        std::vector<std::complex<double>> z(d);
        std::complex<double> seed(0.4, 0.9);
        std::complex<double> acc(1.0, 0.0);
        for (int i = 0; i < d; ++i) { acc *= seed; z[i] = acc; }
        for (int it = 0; it < 300; ++it) {
            for (int i = 0; i < d; ++i) {
                std::complex<double> num = c[d];
                for (int k = d - 1; k >= 0; --k) num = num * z[i] + c[k];
                std::complex<double> den(1.0, 0.0);
                for (int j = 0; j < d; ++j)
                    if (j != i) den *= (z[i] - z[j]);
                if (std::abs(den) > 1e-300) z[i] -= num / den;
            }
        }
        std::sort(z.begin(), z.end(), [](auto a, auto b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        root_approx_ = z.empty() ? std::complex<double>(0, 0) : z[0];
    }
}

TowerPtr Tower::extend(std::vector<TVal> minpoly) const {
    return std::make_shared<Tower>(shared_from_this(), std::move(minpoly));
}

long Tower::embedding_count() const {
    long n = 1;
    for (const Tower* t = this; t->parent_; t = t->parent_.get()) n *= t->top_degree();
    return n;
}

bool Tower::same_or_prefix_of(const Tower& other) const {
    const Tower* t = &other;
    while (t && t->height() > height()) t = t->parent_.get();
    return t == this;
}

TVal Tower::norm(const TVal& a) const {
    if (a.is_rat()) return a;
    PV v;
    v.reserve(a.vec.size());
    for (const TVal& e : a.vec) v.push_back(norm(e));
    pv_strip_struct(v);
    if (v.empty()) return TVal(Rat(0));
    if (v.size() == 1 && v[0].is_rat()) return v[0];
    TVal out;
    out.vec = std::move(v);
    return out;
}

TVal Tower::add(int level, const TVal& a, const TVal& b) const {
    if (a.is_rat() && b.is_rat()) return TVal(a.r + b.r);
    assert(level >= 1);
    const PV* av = a.is_rat() ? nullptr : &a.vec;
    const PV* bv = b.is_rat() ? nullptr : &b.vec;
    size_t n = std::max(av ? av->size() : 1, bv ? bv->size() : 1);
    PV out(n);
    for (size_t i = 0; i < n; ++i) {
        TVal x = av ? (i < av->size() ? (*av)[i] : TVal(Rat(0))) : (i == 0 ? a : TVal(Rat(0)));
        TVal y = bv ? (i < bv->size() ? (*bv)[i] : TVal(Rat(0))) : (i == 0 ? b : TVal(Rat(0)));
        out[i] = add(level - 1, x, y);
    }
    TVal res;
    res.vec = std::move(out);
    return norm(res);
}

TVal Tower::neg(const TVal& a) const {
    if (a.is_rat()) return TVal(-a.r);
    TVal out;
    out.vec.reserve(a.vec.size());
    for (const TVal& e : a.vec) out.vec.push_back(neg(e));
    return out;
}

TVal Tower::sub(int level, const TVal& a, const TVal& b) const { return add(level, a, neg(b)); }

TVal Tower::mul(int level, const TVal& a, const TVal& b) const {
    if (a.struct_zero() || b.struct_zero()) return TVal(Rat(0));
    if (a.is_rat() && b.is_rat()) return TVal(a.r * b.r);
    assert(level >= 1);
    // constant times vector: scale entries one level down
    if (a.is_rat() || (a.vec.size() == 1)) {
        const TVal& c = a.is_rat() ? a : a.vec[0];
        if (b.is_rat() || b.vec.size() == 1) {
            const TVal& d = b.is_rat() ? b : b.vec[0];
            TVal out;
            out.vec = {mul(level - 1, c, d)};
            return norm(out);
        }
        TVal out;
        out.vec.reserve(b.vec.size());
        for (const TVal& e : b.vec) out.vec.push_back(mul(level - 1, c, e));
        return norm(out);
    }
    if (b.is_rat() || b.vec.size() == 1) return mul(level, b, a);

    const PV& av = a.vec;
    const PV& bv = b.vec;
    PV prod(av.size() + bv.size() - 1, TVal(Rat(0)));
    for (size_t i = 0; i < av.size(); ++i) {
        if (av[i].struct_zero()) continue;
        for (size_t j = 0; j < bv.size(); ++j) {
            if (bv[j].struct_zero()) continue;
            prod[i + j] = add(level - 1, prod[i + j], mul(level - 1, av[i], bv[j]));
        }
    }
    // reduce modulo this level's minpoly (monic)
    const Tower* lt = tower_at(this, level);
    const PV& m = lt->minpoly_;
    int d = (int)m.size() - 1;
    while ((int)prod.size() > d) {
        TVal lead = prod.back();
        prod.pop_back();
        if (lead.struct_zero()) continue;
        size_t off = prod.size() - d;
        for (int i = 0; i < d; ++i)
            prod[off + i] = sub(level - 1, prod[off + i], mul(level - 1, lead, m[i]));
    }
    TVal res;
    res.vec = std::move(prod);
    return norm(res);
}

// -- Euclidean machinery on level coefficient vectors ------------------
namespace {

struct LevelOps {
    const Tower* tw;
    int level;  // coefficients of the PV live at level-1

    bool semizero(const TVal& a) const { return tw->is_zero(level - 1, a); }

    // semantic trim
    void trim(PV& p) const {
        while (!p.empty() && semizero(p.back())) p.pop_back();
    }
    PV divmod(PV a, const PV& b, PV* rem_out) const {
        PV b2 = b;
        trim(b2);
        if (b2.empty()) throw InputError("polynomial division by zero");
        TVal lead_inv = tw->inv(level - 1, b2.back());
        int db = (int)b2.size() - 1;
        trim(a);
        PV q(a.size() >= b2.size() ? a.size() - b2.size() + 1 : 0, TVal(Rat(0)));
        while ((int)a.size() - 1 >= db) {
            TVal c = tw->mul(level - 1, a.back(), lead_inv);
            int k = (int)a.size() - 1 - db;
            if (!c.struct_zero()) {
                q[k] = c;
                for (int i = 0; i <= db; ++i)
                    a[k + i] = tw->sub(level - 1, a[k + i], tw->mul(level - 1, c, b2[i]));
            }
            a.pop_back();
            // entries above the new top were cancelled exactly
            trim(a);
            if (a.empty()) break;
        }
        if (rem_out) *rem_out = a;
        return q;
    }
    PV gcd_monic(PV a, PV b) const {
        trim(a);
        trim(b);
        while (!b.empty()) {
            PV r;
            divmod(a, b, &r);
            a = std::move(b);
            b = std::move(r);
        }
        if (a.empty()) return a;
        TVal li = tw->inv(level - 1, a.back());
        for (TVal& c : a) c = tw->mul(level - 1, c, li);
        return a;
    }
};

}  // namespace

TVal Tower::inv(int level, const TVal& a) const {
    if (a.struct_zero()) throw InputError("division by zero in tower arithmetic");
    if (a.is_rat()) return TVal(Rat(1) / a.r);
    assert(level >= 1);
    if (a.vec.size() == 1) {
        TVal out;
        out.vec = {inv(level - 1, a.vec[0])};
        return norm(out);
    }
    const Tower* lt = tower_at(this, level);
    LevelOps ops{this, level};
    // extended Euclid on (minpoly, a), tracking a-cofactors only
    PV r0 = lt->minpoly_, r1 = a.vec;
    PV s0 = {}, s1 = {TVal(Rat(1))};
    ops.trim(r1);
    if (r1.empty()) throw InputError("division by zero in tower arithmetic");
    while (true) {
        PV rem;
        PV q = ops.divmod(r0, r1, &rem);
        ops.trim(rem);
        if (rem.empty()) break;
        // s2 = s0 - q*s1  (schoolbook product, reduction unnecessary: degrees stay < deg m)
        PV qs(q.size() + s1.size(), TVal(Rat(0)));
        if (!s1.empty())
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < s1.size(); ++j)
                    qs[i + j] = add(level - 1, qs[i + j], mul(level - 1, q[i], s1[j]));
        PV s2(std::max(s0.size(), qs.size()), TVal(Rat(0)));
        for (size_t i = 0; i < s2.size(); ++i) {
            TVal x = i < s0.size() ? s0[i] : TVal(Rat(0));
            TVal y = i < qs.size() ? qs[i] : TVal(Rat(0));
            s2[i] = sub(level - 1, x, y);
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if ((int)r1.size() - 1 >= 1) {
        // proper factor of the minpoly: the value is a zero divisor
        TVal li = inv(level - 1, r1.back());
        for (TVal& c : r1) c = mul(level - 1, c, li);
        throw TowerSplit{shared_from_this(), level, r1};
    }
    TVal g_inv = inv(level - 1, r1[0]);
    PV out(s1.size());
    for (size_t i = 0; i < s1.size(); ++i) out[i] = mul(level - 1, s1[i], g_inv);
    TVal res;
    res.vec = std::move(out);
    return norm(res);
}

bool Tower::is_zero(int level, const TVal& a) const {
    if (a.struct_zero()) return true;
    if (a.is_rat()) return false;
    assert(level >= 1);
    if (a.vec.size() == 1) return is_zero(level - 1, a.vec[0]);
    LevelOps ops{this, level};
    PV v = a.vec;
    ops.trim(v);
    if (v.empty()) return true;
    if (v.size() == 1) return false;  // nonzero constant
    const Tower* lt = tower_at(this, level);
    PV g = ops.gcd_monic(lt->minpoly_, v);
    if ((int)g.size() - 1 == 0) return false;
    throw TowerSplit{shared_from_this(), level, g};
}

TVal Tower::level_trace(int level, const TVal& a) const {
    assert(level >= 1);
    const Tower* lt = tower_at(this, level);
    int d = lt->top_degree();
    if (a.is_rat()) return TVal(a.r * d);
    if (a.vec.size() == 1) return mul(level - 1, TVal(Rat(d)), a.vec[0]);
    // Newton power sums of the minpoly roots: s_k = -(k c_k + sum c_i s_{k-i})
    const PV& m = lt->minpoly_;
    int need = (int)a.vec.size() - 1;
    std::vector<TVal> s(need + 1);
    s[0] = TVal(Rat(d));
    for (int k = 1; k <= need; ++k) {
        TVal ck = m[d - k];  // c_k = coeff of z^{d-k}
        TVal acc = mul(level - 1, TVal(Rat(k)), ck);
        for (int i = 1; i < k; ++i)
            acc = add(level - 1, acc, mul(level - 1, m[d - i], s[k - i]));
        s[k] = neg(acc);
    }
    TVal tr(Rat(0));
    for (size_t j = 0; j < a.vec.size(); ++j)
        tr = add(level - 1, tr, mul(level - 1, a.vec[j], s[j]));
    return tr;
}

std::complex<double> Tower::approx(int level, const TVal& a) const {
    if (a.is_rat()) return {a.r.get_d(), 0.0};
    const Tower* lt = tower_at(this, level);
    std::complex<double> z = lt->root_approx_;
    std::complex<double> acc(0.0, 0.0);
    for (auto it = a.vec.rbegin(); it != a.vec.rend(); ++it)
        acc = acc * z + approx(level - 1, *it);
    return acc;
}

std::string Tower::str(const TVal& a) const {
    if (a.is_rat()) return rat_str(a.r);
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < a.vec.size(); ++i) {
        if (i) os << ", ";
        os << str(a.vec[i]);
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------
// K
// ---------------------------------------------------------------------

std::pair<TowerPtr, int> unify(const K& a, const K& b) {
    if (a.tw_ == b.tw_) return {a.tw_, a.tw_->height()};
    if (a.tw_->same_or_prefix_of(*b.tw_)) return {b.tw_, b.tw_->height()};
    if (b.tw_->same_or_prefix_of(*a.tw_)) return {a.tw_, a.tw_->height()};
    throw InputError("tower mismatch in field arithmetic");
}

namespace {
TVal lift_tval(const TVal& v, int levels_up) {
    if (v.is_rat()) return v;
    TVal out = v;
    for (int i = 0; i < levels_up; ++i) {
        TVal w;
        w.vec = {std::move(out)};
        out = std::move(w);
    }
    return out;
}
}  // namespace

TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b) {
    if (a == b) return a;
    if (a->same_or_prefix_of(*b)) return b;
    if (b->same_or_prefix_of(*a)) return a;
    throw InputError("tower mismatch");
}

K embed(const K& v, const TowerPtr& taller) {
    if (v.tower() == taller) return v;
    if (!v.tower()->same_or_prefix_of(*taller))
        throw InputError("embed: tower is not a prefix");
    return K(taller, lift_tval(v.val(), taller->height() - v.tower()->height()));
}

bool K::is_zero() const { return tw_->is_zero(tw_->height(), v_); }

bool K::is_rational() const { return v_.is_rat(); }

Rat K::rat() const {
    if (!v_.is_rat()) throw InputError("value is not rational");
    return v_.r;
}

K K::operator-() const { return K(tw_, tw_->neg(v_)); }

K operator+(const K& a, const K& b) {
    auto [tw, h] = unify(a, b);
    return K(tw, tw->add(h, lift_tval(a.v_, h - a.tw_->height()),
                         lift_tval(b.v_, h - b.tw_->height())));
}
K operator-(const K& a, const K& b) { return a + (-b); }
K operator*(const K& a, const K& b) {
    auto [tw, h] = unify(a, b);
    return K(tw, tw->mul(h, lift_tval(a.v_, h - a.tw_->height()),
                         lift_tval(b.v_, h - b.tw_->height())));
}
K K::inv() const { return K(tw_, tw_->inv(tw_->height(), v_)); }
K operator/(const K& a, const K& b) { return a * b.inv(); }

K K::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    K acc(Rat(1));
    K base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool operator==(const K& a, const K& b) { return (a - b).is_zero(); }

std::complex<double> K::approx() const { return tw_->approx(tw_->height(), v_); }

std::string K::str() const { return tw_->str(v_); }

// ---------------------------------------------------------------------
// refinement after splits
// ---------------------------------------------------------------------

TVal refit_tval(const TVal& v, const TowerPtr& refined, int level) {
    if (v.is_rat()) return v;
    PV out;
    out.reserve(v.vec.size());
    for (const TVal& e : v.vec) out.push_back(refit_tval(e, refined, level - 1));
    // reduce modulo the refined minpoly at this level
    const Tower* lt = tower_at(refined.get(), level);
    const PV& m = lt->minpoly();
    int d = (int)m.size() - 1;
    while ((int)out.size() > d) {
        TVal lead = out.back();
        out.pop_back();
        if (lead.struct_zero()) continue;
        size_t off = out.size() - d;
        for (int i = 0; i < d; ++i)
            out[off + i] =
                refined->sub(level - 1, out[off + i], refined->mul(level - 1, lead, m[i]));
    }
    TVal res;
    res.vec = std::move(out);
    return refined->norm(res);
}

K refit(const K& v, const TowerPtr& refined) {
    if (v.tower() == refined) return v;
    if (refined->height() != v.tower()->height())
        throw InputError("refit: height mismatch");
    return K(refined, refit_tval(v.val(), refined, refined->height()));
}

std::vector<TowerPtr> split_tower(const TowerSplit& ts) {
    // rebuild the chain from ts.level with factor / cofactor minpolys
    const Tower* t = ts.tower.get();
    std::vector<const Tower*> above;
    while (t->height() > ts.level) {
        above.push_back(t);
        t = t->parent().get();
    }
    assert(t->height() == ts.level);
    TowerPtr base = t->parent();

    LevelOps ops{ts.tower.get(), ts.level};
    PV rem;
    PV cof = ops.divmod(t->minpoly(), ts.factor, &rem);
    ops.trim(rem);
    if (!rem.empty()) throw InputError("split_tower: factor does not divide minpoly");

    std::vector<TowerPtr> out;
    for (const PV& m : {ts.factor, cof}) {
        if ((int)m.size() - 1 < 1) continue;
        std::vector<TowerPtr> work{base->extend(m)};
        // re-attach the upper levels, refitting their coefficients; squarefreeness
        // can fail per-branch, in which case the recursion splits further
        for (auto it = above.rbegin(); it != above.rend(); ++it) {
            std::vector<TowerPtr> next;
            for (const TowerPtr& w : work) {
                PV mp;
                mp.reserve((*it)->minpoly().size());
                for (const TVal& c : (*it)->minpoly())
                    mp.push_back(refit_tval(c, w, w->height()));
                try {
                    next.push_back(w->extend(mp));
                } catch (const TowerSplit& deeper) {
                    auto sub = split_tower(deeper);
                    next.insert(next.end(), sub.begin(), sub.end());
                }
            }
            work = std::move(next);
        }
        out.insert(out.end(), work.begin(), work.end());
    }
    return out;
}

K trace_to_height(const K& v, int target_height) {
    K cur = v;
    while (cur.tower()->height() > target_height) {
        const TowerPtr& tw = cur.tower();
        TVal tr = tw->level_trace(tw->height(), cur.val());
        cur = K(tw->parent(), tr);
    }
    return cur;
}

}  // namespace fol

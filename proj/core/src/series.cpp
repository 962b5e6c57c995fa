#include "fol/series.hpp"

#include <algorithm>
#include <sstream>

#include "fol/errors.hpp"

namespace fol {

namespace {
int kb_clamp(long v) {
    return (int)std::min<long>(v, Series::kExact);
}
}  // namespace

Series Series::t_power(int k, const TowerPtr& tw) {
    Series s(tw);
    s.set(k, embed(K(1L), tw));
    return s;
}

Series Series::constant(const K& c) {
    Series s(c.tower());
    s.set(0, c);
    return s;
}

void Series::set(int k, const K& v) {
    if (v.struct_zero()) {
        c_.erase(k);
        return;
    }
    tw_ = common_tower(tw_, v.tower());
    c_[k] = v;
}

void Series::add_to(int k, const K& v) {
    if (v.struct_zero()) return;
    tw_ = common_tower(tw_, v.tower());
    auto it = c_.find(k);
    if (it == c_.end()) {
        c_.emplace(k, v);
    } else {
        K s = it->second + v;
        if (s.struct_zero())
            c_.erase(it);
        else
            it->second = s;
    }
}

K Series::coeff(int k) const {
    if (k >= kb_)
        throw TruncationExhausted("series coefficient at t^" + std::to_string(k) +
                                  " beyond known order " + std::to_string(kb_));
    auto it = c_.find(k);
    return it == c_.end() ? embed(K(0L), tw_) : it->second;
}

Series Series::operator-() const {
    Series out(tw_, kb_);
    out.ram_ = ram_;
    for (auto& [k, v] : c_) out.c_.emplace(k, -v);
    return out;
}

Series operator+(const Series& a, const Series& b) {
    Series out(common_tower(a.tw_, b.tw_), std::min(a.kb_, b.kb_));
    out.ram_ = std::max(a.ram_, b.ram_);
    for (auto& [k, v] : a.c_)
        if (k < out.kb_) out.add_to(k, v);
    for (auto& [k, v] : b.c_)
        if (k < out.kb_) out.add_to(k, v);
    return out;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    long oa = a.min_exp_struct(), ob = b.min_exp_struct();
    Series out(common_tower(a.tw_, b.tw_),
               kb_clamp(std::min((long)a.kb_ + ob, (long)b.kb_ + oa)));
    out.ram_ = std::max(a.ram_, b.ram_);
    for (auto& [ka, va] : a.c_)
        for (auto& [kb2, vb] : b.c_) {
            if ((long)ka + kb2 >= out.kb_) continue;
            out.add_to(ka + kb2, va * vb);
        }
    return out;
}

Series Series::scale(const K& c) const {
    Series out(common_tower(tw_, c.tower()), kb_);
    out.ram_ = ram_;
    if (c.struct_zero()) return out;
    for (auto& [k, v] : c_) out.add_to(k, v * c);
    return out;
}

Series Series::shift(int k) const {
    Series out(tw_, kb_clamp((long)kb_ + k));
    out.ram_ = ram_;
    for (auto& [e, v] : c_) out.c_.emplace(e + k, v);
    return out;
}

Series Series::derivative() const {
    Series out(tw_, kb_ >= kExact ? kExact : kb_ - 1);
    out.ram_ = ram_;
    for (auto& [e, v] : c_) {
        if (e == 0) continue;
        out.c_.emplace(e - 1, v * K((long)e));
    }
    return out;
}

Series Series::truncate(int kb) const {
    Series out(tw_, std::min(kb_, kb));
    out.ram_ = ram_;
    for (auto& [e, v] : c_)
        if (e < out.kb_) out.c_.emplace(e, v);
    return out;
}

std::optional<int> Series::order() const {
    for (auto& [e, v] : c_) {
        if (e >= kb_) break;
        if (!v.is_zero()) return e;
    }
    return std::nullopt;
}

int Series::order_checked(const char* what) const {
    auto o = order();
    if (!o)
        throw TruncationExhausted(std::string(what) +
                                  ": no visible leading term below order " +
                                  std::to_string(kb_));
    return *o;
}

Series Series::inverse(int kb_cap) const {
    int m = order_checked("series inverse");
    K um_inv = coeff(m).inv();
    if (kb_ >= kExact && c_.size() == 1) {
        Series out(tw_, kb_cap >= 0 ? kb_cap : kExact);
        out.ram_ = ram_;
        if (-m < out.kb_) out.c_.emplace(-m, um_inv);
        return out;
    }
    long derived = kb_ >= kExact ? (long)kExact : (long)kb_ - 2L * m;
    if (kb_cap >= 0) derived = std::min(derived, (long)kb_cap);
    if (derived >= kExact)
        throw InputError("series inverse of a non-monomial exact series needs a cap");
    int out_kb = kb_clamp(derived);
    Series out(tw_, out_kb);
    out.ram_ = ram_;
    std::map<int, K> v;
    for (int j = -m; j < out_kb; ++j) {
        int e = j + m;  // exponent whose product coefficient this step kills
        K acc = (e == 0) ? embed(K(1L), tw_) : embed(K(0L), tw_);
        for (auto& [i, ui] : c_) {
            if (i <= m) continue;
            if (i > e + m) break;
            auto it = v.find(e - i);
            if (it != v.end()) acc = acc - ui * it->second;
        }
        K vj = acc * um_inv;
        if (!vj.struct_zero()) v.emplace(j, vj);
    }
    for (auto& [k, val] : v) out.c_.emplace(k, val);
    return out;
}

Series operator/(const Series& a, const Series& b) {
    int cap = -1;
    if (b.known_below() >= Series::kExact && b.terms().size() > 1 &&
        a.known_below() < Series::kExact)
        cap = a.known_below();  // the quotient is no better known than a
    return a * b.inverse(cap);
}

K Series::residue() const {
    if (kb_ <= -1) throw TruncationExhausted("residue: truncation below t^-1");
    auto it = c_.find(-1);
    return it == c_.end() ? embed(K(0L), tw_) : it->second;
}

int Series::min_exp_struct() const { return c_.empty() ? kb_ : c_.begin()->first; }

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [e, v] : c_) {
        if (!first) os << " + ";
        os << "(" << v.str() << ")*t^" << e;
        first = false;
    }
    if (first) os << "0";
    os << " [+O(t^" << (kb_ >= kExact ? std::string("exact") : std::to_string(kb_)) << ")]";
    return os.str();
}

Series compose(const BiPoly& p, const Series& X, const Series& Y) {
    TowerPtr tw = common_tower(p.tower(), common_tower(X.tower(), Y.tower()));
    std::map<int, Series> xp, yp;
    xp.emplace(0, Series::constant(embed(K(1L), tw)));
    yp.emplace(0, xp.at(0));
    auto pw = [](std::map<int, Series>& cache, const Series& base, int e) -> const Series& {
        int have = cache.rbegin()->first;
        while (have < e) {
            cache.emplace(have + 1, cache.at(have) * base);
            ++have;
        }
        return cache.at(e);
    };
    Series out(tw);  // exact zero; kb narrows with each added term
    for (auto& [k, c] : p.terms()) {
        Series term = pw(xp, X, k.first) * pw(yp, Y, k.second);
        out = out + term.scale(c);
    }
    return out;
}

Series compose_upoly(const UPoly& p, const Series& X) {
    TowerPtr tw = X.tower();
    Series acc(tw);
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * X + Series::constant(embed(*it, tw));
    return acc;
}

Series dlog(const Series& s) { return s.derivative() / s; }

Series series_refit(const Series& s, const TowerPtr& refined) {
    Series out(refined, s.known_below());
    out.ram() = s.ram();
    for (auto& [k, v] : s.terms()) out.add_to(k, refit(v, refined));
    return out;
}

Series series_embed(const Series& s, const TowerPtr& taller) {
    Series out(taller, s.known_below());
    out.ram() = s.ram();
    for (auto& [k, v] : s.terms()) out.add_to(k, embed(v, taller));
    return out;
}

}  // namespace fol

#pragma once

#include <map>
#include <optional>

#include "fol/bipoly.hpp"

namespace fol {

// Truncated Laurent/Puiseux series in t with exact coefficients.
// Exponents below known_below are exact; at or above it, unknown. When the
// series stands for fractional powers of x, ram records t = x^{1/ram}.
class Series {
public:
    static constexpr int kExact = 1 << 28;

    Series() : tw_(Tower::rationals()), kb_(kExact) {}
    explicit Series(TowerPtr tw, int known_below = kExact)
        : tw_(std::move(tw)), kb_(known_below) {}

    static Series zero(const TowerPtr& tw, int known_below = kExact) {
        return Series(tw, known_below);
    }
    static Series t_power(int k, const TowerPtr& tw = Tower::rationals());
    static Series constant(const K& c);

    const TowerPtr& tower() const { return tw_; }
    int known_below() const { return kb_; }
    int& ram() { return ram_; }
    int ram() const { return ram_; }
    const std::map<int, K>& terms() const { return c_; }

    void set(int k, const K& v);
    void add_to(int k, const K& v);
    // Exact coefficient of t^k; TruncationExhausted if k is beyond kb.
    K coeff(int k) const;

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series scale(const K& c) const;
    Series shift(int k) const;  // * t^k
    Series derivative() const;
    Series truncate(int kb) const;

    // Least exponent with a (semantically) nonzero coefficient; nullopt
    // means identically zero up to the truncation.
    std::optional<int> order() const;
    // order() that refuses to answer "zero": raises TruncationExhausted.
    int order_checked(const char* what) const;

    Series inverse(int kb_cap = -1) const;
    friend Series operator/(const Series& a, const Series& b);

    // Coefficient of t^{-1}; requires known_below > -1.
    K residue() const;

    int min_exp_struct() const;  // kb if no terms
    bool struct_zero() const { return c_.empty(); }
    std::string str() const;

private:
    TowerPtr tw_;
    std::map<int, K> c_;
    int kb_;
    int ram_ = 1;
};

// p(X(t), Y(t)) with conservative truncation propagation.
Series compose(const BiPoly& p, const Series& X, const Series& Y);
Series compose_upoly(const UPoly& p, const Series& X);
// logarithmic derivative s'/s
Series dlog(const Series& s);

Series series_refit(const Series& s, const TowerPtr& refined);
Series series_embed(const Series& s, const TowerPtr& taller);

}  // namespace fol

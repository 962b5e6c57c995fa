#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "fol/rational.hpp"

namespace fol {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

// Value in (a branch of) an extension tower, interpreted at an ambient
// level. A rational is stored bare at every level; otherwise `vec` holds
// the coefficients w.r.t. the ambient level's generator, each one level
// down. Values from lower levels are wrapped in size-1 vectors so the
// ambient interpretation stays unambiguous.
struct TVal {
    Rat r;
    std::vector<TVal> vec;  // empty <=> rational
    TVal() : r(0) {}
    explicit TVal(Rat q) : r(std::move(q)) {}
    bool is_rat() const { return vec.empty(); }
    bool struct_zero() const { return vec.empty() && r == 0; }
};

// Raised when arithmetic over a reducible level must distinguish branches:
// `factor` is a proper monic divisor of that level's minimal polynomial.
// Catchers refine the tower along factor and cofactor and redo the work
// once per branch; this never produces silent wrong output.
struct TowerSplit {
    TowerPtr tower;
    int level;                 // 1-based: level of the reducible minpoly
    std::vector<TVal> factor;  // monic, coefficients one level down
};

// A tower of algebraic extensions of Q, built as a persistent chain:
// each Tower is its parent plus one monic squarefree minimal polynomial.
// Towers are immutable and shareable; prefix towers are shared by pointer.
class Tower : public std::enable_shared_from_this<Tower> {
public:
    static const TowerPtr& rationals();

    // Adjoins z with the given monic minpoly (degree >= 1, coefficients
    // interpreted at this tower's ambient level). Callers must have checked
    // squarefreeness.
    TowerPtr extend(std::vector<TVal> minpoly) const;

    const TowerPtr& parent() const { return parent_; }
    const std::vector<TVal>& minpoly() const { return minpoly_; }
    int top_degree() const { return (int)minpoly_.size() - 1; }
    int height() const { return height_; }
    std::complex<double> root_approx() const { return root_approx_; }

    // Total number of embeddings into the algebraic closure (product of
    // level degrees); counts the geometric points a value represents.
    long embedding_count() const;

    bool same_or_prefix_of(const Tower& other) const;

    // -- level arithmetic (ambient `level` in [0, height]) ------------
    TVal norm(const TVal& a) const;
    TVal add(int level, const TVal& a, const TVal& b) const;
    TVal sub(int level, const TVal& a, const TVal& b) const;
    TVal neg(const TVal& a) const;
    TVal mul(int level, const TVal& a, const TVal& b) const;
    TVal inv(int level, const TVal& a) const;  // throws TowerSplit
    bool is_zero(int level, const TVal& a) const;  // semantic; throws TowerSplit
    // Sum of a over the top_degree embeddings of `level` over level-1.
    TVal level_trace(int level, const TVal& a) const;
    std::complex<double> approx(int level, const TVal& a) const;
    std::string str(const TVal& a) const;

    Tower(TowerPtr parent, std::vector<TVal> minpoly);  // use extend()

private:
    TowerPtr parent_;
    std::vector<TVal> minpoly_;  // empty at the root (Q itself)
    std::complex<double> root_approx_{0.0, 0.0};
    int height_ = 0;
    mutable std::vector<std::vector<TVal>> power_sums_;  // lazy, per level? top only
};

// Tower element. Arithmetic is exact; predicates that depend on which
// branch of a reducible tower the value lives in throw TowerSplit.
class K {
public:
    K() : tw_(Tower::rationals()), v_(Rat(0)) {}
    K(long n) : tw_(Tower::rationals()), v_(Rat(n)) {}
    K(Rat q) : tw_(Tower::rationals()), v_(std::move(q)) {}
    K(TowerPtr tw, TVal v) : tw_(std::move(tw)), v_(tw_->norm(std::move(v))) {}

    const TowerPtr& tower() const { return tw_; }
    const TVal& val() const { return v_; }

    bool struct_zero() const { return v_.struct_zero(); }
    bool is_zero() const;        // semantic; throws TowerSplit
    bool is_rational() const;    // representation-level
    Rat rat() const;             // requires is_rational()

    K operator-() const;
    friend K operator+(const K& a, const K& b);
    friend K operator-(const K& a, const K& b);
    friend K operator*(const K& a, const K& b);
    friend K operator/(const K& a, const K& b);
    K inv() const;
    K pow(long e) const;

    friend bool operator==(const K& a, const K& b);  // semantic
    friend bool operator!=(const K& a, const K& b) { return !(a == b); }

    std::complex<double> approx() const;
    std::string str() const;

private:
    friend std::pair<TowerPtr, int> unify(const K& a, const K& b);
    TowerPtr tw_;
    TVal v_;
};

// Lifts a value into a taller tower having value's tower as a prefix.
K embed(const K& v, const TowerPtr& taller);

// The taller of two towers, one of which must be a prefix of the other.
TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b);

// Maps a value into a refinement of its tower (same height, each level's
// minpoly dividing the original's).
K refit(const K& v, const TowerPtr& refined);
TVal refit_tval(const TVal& v, const TowerPtr& refined, int level);

// Splits a tower along ts.factor: returns the branch towers (two, or more
// if re-checking upper levels cascades).
std::vector<TowerPtr> split_tower(const TowerSplit& ts);

// Sum of v over all embeddings of its tower down to height `target_height`
// (relative trace); result lives in the prefix tower of that height.
K trace_to_height(const K& v, int target_height);

}  // namespace fol

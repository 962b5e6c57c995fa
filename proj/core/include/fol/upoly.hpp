#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fol/tower.hpp"

namespace fol {

// Univariate polynomial over a tower, coefficient i belonging to t^i.
// Trailing coefficients may be structural zeros transiently; semantic
// degree queries trim with exact zero tests (and may raise TowerSplit).
using UPoly = std::vector<K>;

int up_deg_struct(const UPoly& p);
UPoly up_trim(UPoly p);            // semantic trim
bool up_is_zero(const UPoly& p);   // semantic
UPoly up_embed(UPoly p, const TowerPtr& tw);

UPoly up_add(const UPoly& a, const UPoly& b);
UPoly up_sub(const UPoly& a, const UPoly& b);
UPoly up_mul(const UPoly& a, const UPoly& b);
UPoly up_scale(const UPoly& a, const K& c);
UPoly up_shift(const UPoly& a, int k);  // * t^k
UPoly up_monic(const UPoly& a);
// Euclidean division by a (semantically trimmed) divisor with invertible lead.
std::pair<UPoly, UPoly> up_divmod(const UPoly& a, const UPoly& b);
UPoly up_gcd(const UPoly& a, const UPoly& b);  // monic
UPoly up_derivative(const UPoly& p);
UPoly up_squarefree_part(const UPoly& p);
K up_eval(const UPoly& p, const K& x);
K up_resultant(const UPoly& a, const UPoly& b);

std::string up_str(const UPoly& p, const char* var = "t");

// One branch of an extension: the (possibly refined or grown) tower, the
// root as an element of it, and how many embeddings it stands for.
struct ExtensionBranch {
    TowerPtr tower;
    K root;
    long degree;
};

// Adjoins a root of a monic squarefree polynomial, splitting off rational
// roots (and rational quadratic factorizations) eagerly. Errors on
// non-squarefree input; callers take the squarefree part first.
std::vector<ExtensionBranch> tower_extend(const TowerPtr& tw, const UPoly& minpoly);

// Engine helper: all distinct roots of p (not identically zero), i.e.
// tower_extend of the squarefree part of p.
std::vector<ExtensionBranch> enumerate_roots(const TowerPtr& tw, const UPoly& p);

// Coordinates of v over Q w.r.t. the tower's power basis (length =
// embedding_count of the tower).
std::vector<Rat> flatten_over_q(const K& v);

// Exact rational-membership test. Decides via the minimal polynomial over
// Q, so it is correct even when the value is only rational in some
// branches of a reducible tower: those cases raise TowerSplit.
std::optional<Rat> as_rational_semantic(const K& v);

// First semantically nonzero index of p, or nullopt.
std::optional<int> up_order(const UPoly& p);

}  // namespace fol

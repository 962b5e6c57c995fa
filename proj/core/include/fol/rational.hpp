#pragma once

#include <gmpxx.h>

#include <string>

namespace fol {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// "a" for integers, "a/b" otherwise.
inline std::string rat_str(const Rat& r) {
    return r.get_str();
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

// Exact square root test; root receives the value on success.
bool rat_is_square(const Rat& r, Rat& root);

}  // namespace fol

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sailkit {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(num, den) does not canonicalize; this does.
inline Rat ratq(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// floor(p/q) for a rational given in canonical form.
inline Int rat_floor(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }

inline Int rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// positive generator of the group a Z + b Z inside Q
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    Int num = gcd(a.get_num() * b.get_den(), b.get_num() * a.get_den());
    return ratq(num, a.get_den() * b.get_den());
}

inline Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

// Factorization hook: maps n > 0 to its list of (prime, exponent) pairs, or
// nullopt when the number cannot be handled. Lets callers supply factorizations
// for numbers beyond trial-division reach.
using Factorizer =
    std::function<std::optional<std::vector<std::pair<Int, unsigned>>>(const Int&)>;

std::optional<std::vector<std::pair<Int, unsigned>>> trial_division_factor(
    const Int& n, const Int& limit = Int(1) << 22);

// Squarefree part of n > 0 (the unique squarefree d with n/d a square).
std::optional<Int> squarefree_part(const Int& n, const Factorizer& f = nullptr);

std::optional<bool> is_squarefree(const Int& n, const Factorizer& f = nullptr);

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

}  // namespace sailkit

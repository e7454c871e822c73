#ifndef NASHCERT_RATIONAL_HPP
#define NASHCERT_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

namespace nashcert {

// All arithmetic in this project is exact. Rat is a GMP-backed rational,
// Int an arbitrary-precision integer.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline Int num(const Rat& r) { return numerator(r); }
inline Int den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

// floor(r) as an Int (exact, works for negative values).
inline Int rat_floor(const Rat& r) {
    Int q = num(r) / den(r);
    if (num(r) < 0 && q * den(r) != num(r)) --q;
    return q;
}

inline Int rat_ceil(const Rat& r) {
    Int q = num(r) / den(r);
    if (num(r) > 0 && q * den(r) != num(r)) ++q;
    return q;
}

// Canonical "p/q" rendering (plain "p" when q == 1).
inline std::string rat_str(const Rat& r) {
    std::string s = num(r).str();
    if (!is_integer(r)) s += "/" + den(r).str();
    return s;
}

// Exact square root when r is the square of a rational; nullopt otherwise.
inline std::optional<Rat> rat_sqrt(const Rat& r) {
    if (r < 0) return std::nullopt;
    Int n = num(r), d = den(r);
    Int sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rat(sn) / Rat(sd);
}

// r reduced into the half-open interval [0, modulus).
inline Rat rat_mod(const Rat& r, const Rat& modulus) {
    Rat q = r / modulus;
    return r - Rat(rat_floor(q)) * modulus;
}

inline long long llgcd(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long long t = a % b; a = b; b = t; }
    return a;
}

inline long long lllcm(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    return a / llgcd(a, b) * b;
}

inline long long euclid_mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace nashcert

#endif

#ifndef NASHCERT_UNIVARIATE_HPP
#define NASHCERT_UNIVARIATE_HPP

#include <utility>
#include <vector>

#include "nashcert/rational.hpp"

namespace nashcert {

// Dense univariate polynomial over Q, coefficients low degree first.
// The zero polynomial is the empty coefficient vector.
struct UniPoly {
    std::vector<Rat> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

    static UniPoly constant(const Rat& v);
    static UniPoly monomial(const Rat& coeff, int degree);

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for 0
    const Rat& leading() const { return c.back(); }

    void trim();

    Rat eval(const Rat& x) const;

    bool operator==(const UniPoly& o) const { return c == o.c; }
};

UniPoly uni_add(const UniPoly& a, const UniPoly& b);
UniPoly uni_sub(const UniPoly& a, const UniPoly& b);
UniPoly uni_mul(const UniPoly& a, const UniPoly& b);
UniPoly uni_scale(const UniPoly& a, const Rat& s);
UniPoly uni_derivative(const UniPoly& a);

// Quotient and remainder; divisor must be nonzero.
std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b);

// Monic gcd (Euclid over Q); gcd(0,0) = 0.
UniPoly uni_gcd(const UniPoly& a, const UniPoly& b);

// Monic normalization of a nonzero polynomial.
UniPoly uni_monic(const UniPoly& a);

// Yun square-free decomposition of a nonzero polynomial:
// a = unit * prod_i f_i^i with the f_i monic, square-free, pairwise coprime.
// Returns the list of (f_i, i) with f_i nonconstant, plus the leading unit.
struct SquareFreeDecomposition {
    Rat unit;
    std::vector<std::pair<UniPoly, int>> factors;
};
SquareFreeDecomposition uni_squarefree(const UniPoly& a);

// All rational roots (with multiplicity collapsed to the distinct set) and the
// monic cofactor with the corresponding linear factors divided out.
struct RationalRoots {
    std::vector<Rat> roots;   // each distinct rational root, sorted
    UniPoly cofactor;         // monic; has no rational roots
};
RationalRoots uni_rational_roots(const UniPoly& a);

std::string uni_str(const UniPoly& a, const std::string& var);

}  // namespace nashcert

#endif

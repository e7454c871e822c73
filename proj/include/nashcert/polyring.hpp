#ifndef NASHCERT_POLYRING_HPP
#define NASHCERT_POLYRING_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nashcert/rational.hpp"
#include "nashcert/univariate.hpp"

namespace nashcert {

// The ambient coordinates are fixed: x, y, z, u.
inline constexpr int kNumVars = 4;
inline constexpr int kVarX = 0, kVarY = 1, kVarZ = 2, kVarU = 3;
extern const std::array<const char*, kNumVars> kVarNames;

int var_index(char name);  // -1 when not one of x,y,z,u

// Scaled exponent vector: the actual exponent of variable v is e[v]/denom
// for the polynomial-wide denominator.
using ExpVec = std::array<long long, kNumVars>;

// Cyclic group Z_m acting diagonally on C^4 with the given weights (mod m).
struct GroupAction {
    long long m = 1;
    std::array<long long, kNumVars> weights{};

    GroupAction() = default;
    GroupAction(long long mm, std::array<long long, kNumVars> w) : m(mm), weights(w) {}

    // Representative with all weights in [0, m).
    GroupAction normalized() const;

    // Order of the action after dividing out the kernel.
    long long faithful_order() const;

    bool operator==(const GroupAction& o) const;
    std::string str() const;  // "1/m(w1,w2,w3,w4)"
};

// Sparse multivariate polynomial in x,y,z,u with exact rational coefficients
// and exponents in (1/D)Z_{>=0}. Kept canonical: no zero coefficients, D
// minimal.
class SparsePoly {
public:
    SparsePoly() : denom_(1) {}

    static SparsePoly zero() { return SparsePoly(); }
    static SparsePoly constant(const Rat& c);
    static SparsePoly variable(int v);
    static SparsePoly monomial(const Rat& coeff, const std::array<Rat, kNumVars>& exps);

    bool is_zero() const { return terms_.empty(); }
    long long denom() const { return denom_; }
    const std::map<ExpVec, Rat>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    Rat exponent(const ExpVec& key, int v) const { return Rat(key[v]) / Rat(denom_); }
    Rat coefficient(const std::array<Rat, kNumVars>& exps) const;

    // True when every exponent of variable v is an integer.
    bool integral_in(int v) const;
    bool integral() const;

    bool operator==(const SparsePoly& o) const {
        return denom_ == o.denom_ && terms_ == o.terms_;
    }
    bool operator!=(const SparsePoly& o) const { return !(*this == o); }

    std::string str() const;

    friend SparsePoly poly_add(const SparsePoly&, const SparsePoly&);
    friend SparsePoly poly_mul(const SparsePoly&, const SparsePoly&);
    friend SparsePoly poly_scale(const SparsePoly&, const Rat&);
    friend class PolyBuilder;

private:
    long long denom_;
    std::map<ExpVec, Rat> terms_;

    void canonicalize();
    SparsePoly rescaled(long long new_denom) const;
};

// Accumulates terms with rational exponents, then normalizes to one scaled
// denominator.
class PolyBuilder {
public:
    void add_term(const Rat& coeff, const std::array<Rat, kNumVars>& exps);
    SparsePoly build();

private:
    std::vector<std::pair<std::array<Rat, kNumVars>, Rat>> raw_;
};

SparsePoly poly_add(const SparsePoly& a, const SparsePoly& b);
SparsePoly poly_sub(const SparsePoly& a, const SparsePoly& b);
SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b);
SparsePoly poly_scale(const SparsePoly& a, const Rat& s);
SparsePoly poly_pow(const SparsePoly& a, int k);

// Formal partial derivative; requires integer exponents of the variable.
SparsePoly partial_derivative(const SparsePoly& p, int v);

// Substitute variable v := value (exact; enforces the fractional-exponent
// rules of poly_evaluate on that variable).
SparsePoly poly_substitute(const SparsePoly& p, int v, const Rat& value);

// Exact evaluation. Fractional exponents are only defined at coordinates 0
// (positive exponent) and 1; anything else is a semantic error.
Rat poly_evaluate(const SparsePoly& p, const std::array<Rat, kNumVars>& q);

// Common semi-invariance class of p under the action, reduced into [0, m).
// Throws a semantic error listing two witness monomials when classes mix.
Rat semiinvariant_class(const SparsePoly& p, const GroupAction& act);
bool is_semiinvariant(const SparsePoly& p, const GroupAction& act);

// A weight sigma = (1/m)(a,b,c,d) with positive entries.
struct WeightSigma {
    long long m = 1;
    std::array<long long, kNumVars> abcd{1, 1, 1, 1};

    Rat entry(int v) const { return Rat(abcd[v]) / Rat(m); }
    std::string str() const;
    bool operator==(const WeightSigma& o) const { return m == o.m && abcd == o.abcd; }
};

// Minimal sigma-weight over the monomials of p (the order of vanishing along
// the exceptional divisor of the sigma-blow-up). p must be nonzero.
Rat wt_sigma(const SparsePoly& p, const WeightSigma& sigma);
Rat wt_sigma_monomial(const ExpVec& e, long long denom, const WeightSigma& sigma);

// Pull-back of p under the chart map of chart i (1..4): the exponent of the
// chart variable in each monomial becomes that monomial's sigma-weight; the
// other exponents are unchanged. Exponents may become fractional.
SparsePoly substitute_weighted(const SparsePoly& p, int chart_index, const WeightSigma& sigma);

// Write p = chartvar^k * strict with the minimal chart-variable exponent of
// strict equal to zero. For a pull-back, k equals wt_sigma of the original.
struct ChartFactorization {
    Rat k;
    SparsePoly strict;
};
ChartFactorization factor_out_chartvar(const SparsePoly& p, int chart_index);

// --- binary forms in z,u ---------------------------------------------------

// Minimal total degree over the support of a nonzero polynomial in z,u with
// integer exponents.
long long tau0(const SparsePoly& f);

struct BinaryForm {
    SparsePoly poly;    // homogeneous in z,u
    long long degree;
};

// Degree-t homogeneous part of f (in z,u); t must equal tau0(f) for the
// leading form.
BinaryForm leading_form(const SparsePoly& f, long long t);
BinaryForm make_binary_form(const SparsePoly& p);  // validates homogeneity

// Factorization of a binary form over Q: unit * z^{z_mult} *
// prod (u - r_t z)^{m_t} * prod q_i(u/z)-certificates. Rational roots are
// exact; residual square-free factors without rational roots are carried
// as certificates.
struct BinaryFactorization {
    Rat unit;
    int z_mult = 0;
    struct Linear {
        Rat u_root;  // the factor vanishes at (z,u) = (1, u_root)
        int mult;
    };
    std::vector<Linear> linear;
    struct Residual {
        UniPoly q;  // monic, square-free, no rational roots; in the variable u/z
        int mult;
    };
    std::vector<Residual> residual;
};
BinaryFactorization factor_binary_form(const BinaryForm& F);

enum class SquareKind { not_square, rational_square, square_with_certificate };

struct SquareRootResult {
    SquareKind kind = SquareKind::not_square;
    std::optional<SparsePoly> root;          // present iff rational_square
    BinaryFactorization structure;           // always populated
};

// Decides whether F is a perfect square (over C) via square-free multiplicity
// parity, and produces the rational square root when one exists over Q.
SquareRootResult is_perfect_square(const BinaryForm& F);

// True iff every monomial of f has z,u-total degree >= k.
bool ideal_power_membership(const SparsePoly& f, long long k);

}  // namespace nashcert

#endif

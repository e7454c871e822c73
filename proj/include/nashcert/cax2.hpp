#ifndef NASHCERT_CAX2_HPP
#define NASHCERT_CAX2_HPP

#include <optional>
#include <string>
#include <vector>

#include "nashcert/blowup.hpp"

namespace nashcert {

// Syntactic classification of the standard hyperquotient normal forms.
// Variable roles are taken literally; no coordinate changes are attempted.
enum class MoriType {
    none,
    cA_m,
    cAx_2,
    cAx_4,
    cD_2_1,
    cD_2_2,
    cD_3_1,
    cD_3_2,
    cD_3_3,
    cE_2,
};

const char* mori_type_name(MoriType t);

MoriType classify_mori_type(const Hyperquotient& hq);

enum class CAx2Case { case1, case2 };
enum class Case2Sign { plus, minus };

// Validated data of x^2 + y^2 + f(z,u) in C^4 / (1/2)(0,1,1,1).
struct CAx2Form {
    SparsePoly f;                            // in z,u; f in (z,u)^4, invariant
    long long tau0_value = 0;                // even, >= 4
    CAx2Case form_case = CAx2Case::case1;    // case2 iff the leading form is a square
    std::optional<SparsePoly> square_root;   // rational p with p^2 = leading form
    BinaryFactorization leading_structure;
};

CAx2Form validate_cax2(const Hyperquotient& hq);

// The minimal-discrepancy weight by case and parity of tau0/2.
WeightSigma select_weight(const CAx2Form& form);

// Case 2 normalization: substitute on x (tau0/2 even) or y (tau0/2 odd) so
// that the square part of f cancels exactly; requires a rational square root.
Hyperquotient normalize_case2(const CAx2Form& form, Case2Sign sign,
                              std::vector<std::string>* warnings = nullptr);

// Separating function for a singular point on E: charts 1/2 use
// x^2+y^2+z^2+u^2; chart 3 uses x^2+y^2-rho^2*z^2+u^2 with rho the point's
// u-coordinate; chart 4 swaps the roles of z and u.
SparsePoly construct_h(int chart_index, const std::optional<Rat>& rho_squared);

// --- the certificate -----------------------------------------------------------

struct PointEntry {
    int chart_index = 0;
    enum class Kind { quotient_point, jacobian_point, algebraic_certificate } kind;
    std::string point;                 // rendering of the point or certificate
    long long quotient_index = 1;      // > 1 for quotient points
    SparsePoly h;
    Rat val_E_h;
    bool val_is_one = false;
    bool strict_vanishes = false;      // strict transform of h vanishes at the point
    std::optional<NonDominationConclusion> conclusion;
    bool ok = false;
};

struct ChartSummary {
    ChartModel model;
    SingularPointReport jacobian;
    QuotientPointScan quotient;
    bool vacuous = false;  // no singular points on E in this chart
};

struct NashCertificate {
    std::string input;
    MoriType type = MoriType::none;
    CAx2Case form_case = CAx2Case::case1;
    std::optional<Case2Sign> sign;
    long long tau0_value = 0;
    WeightSigma weight;
    Rat discrepancy{0};
    SparsePoly working_phi;  // the model actually blown up (normalized for Case 2)
    std::vector<ChartSummary> charts;
    std::vector<PointEntry> entries;
    std::vector<std::string> warnings;
    std::vector<std::string> obstructions;

    enum class Verdict { verified, incomplete } verdict = Verdict::incomplete;
    bool verified() const { return verdict == Verdict::verified; }
};

// Full pipeline: validate, pick the weight, normalize Case 2, build the four
// charts, collect singular points on E, construct and verify h per point.
// The verdict is "verified" only when every check passed exactly; anything
// the engine cannot decide is reported as an obstruction, never guessed.
NashCertificate certify_nash(const Hyperquotient& hq, Case2Sign sign = Case2Sign::plus);

}  // namespace nashcert

#endif

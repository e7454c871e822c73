#ifndef NASHCERT_BLOWUP_HPP
#define NASHCERT_BLOWUP_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nashcert/polyring.hpp"

namespace nashcert {

// Hypersurface germ (phi = 0) inside C^4 / (1/m)(alpha). phi must be
// semi-invariant and vanish at the origin.
struct Hyperquotient {
    SparsePoly phi;
    GroupAction action;
    Rat phi_class;

    Hyperquotient(SparsePoly phi_, GroupAction action_);
};

// Z^4 + Z*sigma = N-bar, decided exactly: sigma must lie in N-bar and some
// multiple of sigma must hit the coset of the lattice's extra generator.
bool admissible_weight(const GroupAction& act, const WeightSigma& sigma);

// One affine chart of the sigma-blow-up.
struct ChartModel {
    int index = 1;              // 1..4
    GroupAction quotient;       // cyclic quotient acting on the chart
    SparsePoly strict_phi;      // pull-back of phi with chartvar^{wt} removed
    Rat wt_phi;
    long long quotient_index;   // faithful order of the quotient action
    bool empty_chart = false;   // strict transform is a unit; X-bar misses the chart

    int exceptional_var() const { return index - 1; }
};

ChartModel chart(const Hyperquotient& hq, const WeightSigma& sigma, int chart_index);

// Order of vanishing of h along the exceptional divisor: wt_sigma(h),
// cross-checked against the factored chart exponent in all four charts.
Rat val_E(const SparsePoly& h, const WeightSigma& sigma);

// (a+b+c+d)/m - 1 - wt_sigma(phi).
Rat discrepancy_of_weight(const Hyperquotient& hq, const WeightSigma& sigma);

struct StrictTransform {
    Rat k;         // equals val_E(h)
    SparsePoly g;  // not divisible by the chart variable
};
StrictTransform strict_transform_factorization(const SparsePoly& h, const WeightSigma& sigma,
                                               int chart_index);

// --- singular points on the exceptional divisor -------------------------------

// A solution of the Jacobian system that is not fully rational: rational
// coordinates where known, one coordinate algebraic over Q (its monic minimal
// polynomial has no rational roots), and optionally a second coordinate bound
// by a binomial relation v^k + c = 0 with c rational.
struct SingularPointCertificate {
    std::array<std::optional<Rat>, kNumVars> rational;
    int primary_var = -1;
    UniPoly primary_min_poly;
    int secondary_var = -1;
    int secondary_pow = 0;
    Rat secondary_c;
    bool fully_verified = false;

    std::string description() const;
};

struct SingularPointReport {
    int chart_index = 0;
    std::vector<std::array<Rat, kNumVars>> points;       // exact rational solutions
    std::vector<SingularPointCertificate> certificates;  // algebraic solutions
    bool requires_elimination = false;
    std::vector<std::string> notes;

    bool empty() const {
        return points.empty() && certificates.empty() && !requires_elimination;
    }
};

// Restrict the strict transform to E (chart variable = 0) and solve
// {strict_phi = 0, grad = 0} by forced substitutions followed by univariate
// root extraction. Systems outside that structured pattern are reported as
// requiring elimination, never answered wrongly.
SingularPointReport singular_points_on_E(const ChartModel& chart);

// Exact check that strict_phi and all four partials vanish at q.
bool verify_jacobian_point(const ChartModel& chart, const std::array<Rat, kNumVars>& q);

// Symbolic variant for certificates: substitutes the rational coordinates and
// reduces modulo the algebraic relations.
bool verify_certificate_point(const ChartModel& chart, const SingularPointCertificate& cert);

// True when g vanishes identically at the (partial) point of the certificate.
bool poly_vanishes_on_certificate(const SparsePoly& g, const SingularPointCertificate& cert);

// --- index > 1 points (quotient singularities on the chart) -------------------

struct QuotientPointScan {
    bool origin_singular = false;  // origin lies on the strict transform and on E
    long long origin_index = 1;
    struct ExtraPoint {
        std::array<Rat, kNumVars> coords;
        long long index;
    };
    std::vector<ExtraPoint> extra_points;  // non-origin points of the non-free locus
    bool requires_elimination = false;
    std::vector<std::string> notes;
};

// Intersect the strict transform with the non-free locus of the chart
// quotient (restricted to E). Points found here carry Gorenstein index > 1.
QuotientPointScan quotient_singular_points(const ChartModel& chart);

// --- the valuation inequality --------------------------------------------------

// val_F(h) = a*a1 + c*val_E(h) + d with a,a1 integers >= 1, c > 0, d >= 0.
// Values are carried only when known; the conclusion never invents them.
struct ValuationRelation {
    Rat val_E_h;
    std::optional<Rat> a, a1, c, d;
};

struct NonDominationConclusion {
    Rat lower_bound;  // valid lower bound for val_F(h)
    bool strict;      // true: val_F(h) > lower_bound; false: >=
    std::string inequality_chain;
};

// Requires val_E_h = 1; emits "val_F(h) > val_E(h) for every divisor F
// centered at the given point" with the inequality chain recorded.
NonDominationConclusion conclude_non_domination(const ValuationRelation& rel);

}  // namespace nashcert

#endif

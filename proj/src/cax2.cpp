#include "nashcert/cax2.hpp"

#include <functional>
#include <sstream>

#include "nashcert/error.hpp"

namespace nashcert {

const char* mori_type_name(MoriType t) {
    switch (t) {
        case MoriType::none: return "none";
        case MoriType::cA_m: return "cA/m";
        case MoriType::cAx_2: return "cAx/2";
        case MoriType::cAx_4: return "cAx/4";
        case MoriType::cD_2_1: return "cD/2-1";
        case MoriType::cD_2_2: return "cD/2-2";
        case MoriType::cD_3_1: return "cD/3-1";
        case MoriType::cD_3_2: return "cD/3-2";
        case MoriType::cD_3_3: return "cD/3-3";
        case MoriType::cE_2: return "cE/2";
    }
    return "none";
}

namespace {

std::array<Rat, kNumVars> exps(long long x, long long y, long long z, long long u) {
    return {Rat(x), Rat(y), Rat(z), Rat(u)};
}

SparsePoly var_pow(int v, int k) { return poly_pow(SparsePoly::variable(v), k); }

bool support_subset(const SparsePoly& p, std::initializer_list<int> vars) {
    for (const auto& [e, c] : p.terms())
        for (int v = 0; v < kNumVars; ++v) {
            if (e[v] == 0) continue;
            bool listed = false;
            for (int w : vars)
                if (w == v) listed = true;
            if (!listed) return false;
        }
    return true;
}

SparsePoly strip(const SparsePoly& p, const std::array<Rat, kNumVars>& mono) {
    Rat c = p.coefficient(mono);
    if (c == 0) return p;
    return poly_sub(p, SparsePoly::monomial(c, mono));
}

bool match_cA_m(const Hyperquotient& hq) {
    GroupAction a = hq.action.normalized();
    if (a.m < 2) return false;
    long long m = a.m;
    if (euclid_mod(a.weights[kVarZ] - 1, m) != 0) return false;
    if (a.weights[kVarU] != 0) return false;
    if (euclid_mod(a.weights[kVarX] + a.weights[kVarY], m) != 0) return false;
    if (llgcd(a.weights[kVarX], m) != 1) return false;
    if (hq.phi.coefficient(exps(1, 1, 0, 0)) != 1) return false;
    SparsePoly f = strip(hq.phi, exps(1, 1, 0, 0));
    return support_subset(f, {kVarZ, kVarU});
}

bool match_cAx_2(const Hyperquotient& hq, SparsePoly* f_out = nullptr) {
    if (!(hq.action == GroupAction(2, {0, 1, 1, 1}))) return false;
    if (hq.phi.coefficient(exps(2, 0, 0, 0)) != 1) return false;
    if (hq.phi.coefficient(exps(0, 2, 0, 0)) != 1) return false;
    SparsePoly f = strip(strip(hq.phi, exps(2, 0, 0, 0)), exps(0, 2, 0, 0));
    if (f.is_zero() || !support_subset(f, {kVarZ, kVarU})) return false;
    if (!f.integral() || !ideal_power_membership(f, 4)) return false;
    if (f_out) *f_out = f;
    return true;
}

bool match_cAx_4(const Hyperquotient& hq) {
    if (!(hq.action == GroupAction(4, {1, 3, 1, 2}))) return false;
    if (hq.phi.coefficient(exps(2, 0, 0, 0)) != 1) return false;
    if (hq.phi.coefficient(exps(0, 2, 0, 0)) != 1) return false;
    SparsePoly f = strip(strip(hq.phi, exps(2, 0, 0, 0)), exps(0, 2, 0, 0));
    if (f.is_zero() || !support_subset(f, {kVarZ, kVarU})) return false;
    if (f.coefficient(exps(0, 0, 0, 1)) != 0) return false;  // no bare u
    return true;
}

bool match_cD_2_1(const Hyperquotient& hq) {
    if (!(hq.action == GroupAction(2, {1, 1, 0, 1}))) return false;
    const SparsePoly& p = hq.phi;
    if (p.denom() != 1 || p.term_count() != 5) return false;
    if (p.coefficient(exps(0, 0, 0, 2)) != 1) return false;
    if (p.coefficient(exps(1, 1, 1, 0)) != 1) return false;
    bool px = false, py = false, pz = false;
    for (const auto& [e, c] : p.terms()) {
        if (e == ExpVec{0, 0, 0, 2} || e == ExpVec{1, 1, 1, 0}) continue;
        if (c != 1) return false;
        if (e[kVarX] > 0 && !e[kVarY] && !e[kVarZ] && !e[kVarU])
            px = e[kVarX] >= 4 && e[kVarX] % 2 == 0;
        else if (e[kVarY] > 0 && !e[kVarX] && !e[kVarZ] && !e[kVarU])
            py = e[kVarY] >= 4 && e[kVarY] % 2 == 0;
        else if (e[kVarZ] > 0 && !e[kVarX] && !e[kVarY] && !e[kVarU])
            pz = e[kVarZ] >= 3;
        else
            return false;
    }
    return px && py && pz;
}

bool match_cD_2_2(const Hyperquotient& hq) {
    if (!(hq.action == GroupAction(2, {1, 1, 0, 1}))) return false;
    const SparsePoly& p = hq.phi;
    if (p.denom() != 1) return false;
    if (p.coefficient(exps(0, 0, 0, 2)) != 1) return false;
    if (p.coefficient(exps(0, 2, 1, 0)) != 1) return false;
    int lambda_terms = 0;
    for (const auto& [e, c] : p.terms()) {
        if (e == ExpVec{0, 0, 0, 2} || e == ExpVec{0, 2, 1, 0}) continue;
        if (e[kVarU] != 0) return false;
        if (e[kVarY] != 0) {
            // the optional lambda * y * x^{2a+1} term, a >= 1
            if (e[kVarY] != 1 || e[kVarZ] != 0 || e[kVarX] < 3 || e[kVarX] % 2 == 0)
                return false;
            if (++lambda_terms > 1) return false;
        } else {
            // g(x,z) in (x^4, x^2 z^2, z^3)
            long long i = e[kVarX], j = e[kVarZ];
            if (!(i >= 4 || (i >= 2 && j >= 2) || j >= 3)) return false;
        }
    }
    return true;
}

bool match_cD_3_1(const Hyperquotient& hq) {
    if (!(hq.action == GroupAction(3, {1, 2, 2, 0}))) return false;
    SparsePoly want = poly_add(poly_add(var_pow(kVarX, 3), var_pow(kVarU, 2)),
                               poly_add(poly_mul(var_pow(kVarY, 2), var_pow(kVarZ, 1)),
                                        poly_mul(var_pow(kVarY, 1), var_pow(kVarZ, 2))));
    return hq.phi == want;
}

bool match_cD_3_2(const Hyperquotient& hq) {
    if (!(hq.action == GroupAction(3, {1, 2, 2, 0}))) return false;
    const SparsePoly& p = hq.phi;
    if (p.denom() != 1) return false;
    if (p.coefficient(exps(3, 0, 0, 0)) != 1) return false;
    if (p.coefficient(exps(0, 0, 0, 2)) != 1) return false;
    if (p.coefficient(exps(0, 1, 2, 0)) != 1) return false;
    for (const auto& [e, c] : p.terms()) {
        if (e == ExpVec{3, 0, 0, 0} || e == ExpVec{0, 0, 0, 2} || e == ExpVec{0, 1, 2, 0})
            continue;
        if (e[kVarZ] != 0 || e[kVarU] != 0) return false;
        long long i = e[kVarX], j = e[kVarY];
        bool alpha = i == 1 && j >= 4 && j % 3 == 1;  // x*y^4*alpha(y^3)
        bool beta = i == 0 && j >= 6 && j % 3 == 0;   // y^6*beta(y^3)
        if (!alpha && !beta) return false;
    }
    return true;
}

bool match_cD_3_3(const Hyperquotient& hq) {
    if (!(hq.action == GroupAction(3, {1, 2, 2, 0}))) return false;
    const SparsePoly& p = hq.phi;
    if (p.denom() != 1) return false;
    if (p.coefficient(exps(3, 0, 0, 0)) != 1) return false;
    if (p.coefficient(exps(0, 0, 0, 2)) != 1) return false;
    if (p.coefficient(exps(0, 3, 0, 0)) != 1) return false;
    for (const auto& [e, c] : p.terms()) {
        if (e == ExpVec{3, 0, 0, 0} || e == ExpVec{0, 0, 0, 2} || e == ExpVec{0, 3, 0, 0})
            continue;
        if (e[kVarU] != 0) return false;
        long long i = e[kVarX], j = e[kVarY], k = e[kVarZ];
        bool t1 = i == 1 && j == 1 && k >= 3 && k % 3 == 0;  // x*y*z^3*alpha(z^3)
        bool t2 = i == 1 && j == 0 && k >= 4 && k % 3 == 1;  // x*z^4*beta(z^3)
        bool t3 = i == 0 && j == 1 && k >= 5 && k % 3 == 2;  // y*z^5*gamma(z^3)
        bool t4 = i == 0 && j == 0 && k >= 6 && k % 3 == 0;  // z^6*delta(z^3)
        if (!t1 && !t2 && !t3 && !t4) return false;
    }
    return true;
}

bool match_cE_2(const Hyperquotient& hq) {
    if (!(hq.action == GroupAction(2, {0, 1, 1, 1}))) return false;
    const SparsePoly& p = hq.phi;
    if (p.denom() != 1) return false;
    if (p.coefficient(exps(3, 0, 0, 0)) != 1) return false;
    if (p.coefficient(exps(0, 0, 0, 2)) != 1) return false;
    SparsePoly w = strip(strip(p, exps(3, 0, 0, 0)), exps(0, 0, 0, 2));
    if (w.is_zero() || !support_subset(w, {kVarY, kVarZ})) return false;
    long long min_deg = -1;
    for (const auto& [e, c] : w.terms()) {
        long long d = e[kVarY] + e[kVarZ];
        if (min_deg < 0 || d < min_deg) min_deg = d;
    }
    return min_deg == 4;
}

}  // namespace

MoriType classify_mori_type(const Hyperquotient& hq) {
    if (!hq.phi.integral()) return MoriType::none;
    if (match_cA_m(hq)) return MoriType::cA_m;
    if (match_cAx_2(hq)) return MoriType::cAx_2;
    if (match_cAx_4(hq)) return MoriType::cAx_4;
    if (match_cD_2_1(hq)) return MoriType::cD_2_1;
    if (match_cD_2_2(hq)) return MoriType::cD_2_2;
    if (match_cD_3_1(hq)) return MoriType::cD_3_1;
    if (match_cD_3_2(hq)) return MoriType::cD_3_2;
    if (match_cD_3_3(hq)) return MoriType::cD_3_3;
    if (match_cE_2(hq)) return MoriType::cE_2;
    return MoriType::none;
}

CAx2Form validate_cax2(const Hyperquotient& hq) {
    GroupAction expected(2, {0, 1, 1, 1});
    if (!(hq.action == expected))
        throw NashError(ErrorKind::semantic,
                        "wrong action: expected 1/2(0,1,1,1), got " + hq.action.str());
    Rat cx = hq.phi.coefficient(exps(2, 0, 0, 0));
    if (cx != 1)
        throw NashError(ErrorKind::semantic, "x^2 coefficient is " + rat_str(cx) +
                                                 "; normalization to 1 is not attempted");
    Rat cy = hq.phi.coefficient(exps(0, 2, 0, 0));
    if (cy != 1)
        throw NashError(ErrorKind::semantic, "y^2 coefficient is " + rat_str(cy) +
                                                 "; normalization to 1 is not attempted");
    SparsePoly f = strip(strip(hq.phi, exps(2, 0, 0, 0)), exps(0, 2, 0, 0));
    if (f.is_zero())
        throw NashError(ErrorKind::semantic, "f(z,u) must be nonzero");
    if (!support_subset(f, {kVarZ, kVarU}))
        throw NashError(ErrorKind::semantic,
                        "the equation is not of the shape x^2 + y^2 + f(z,u)");
    if (!f.integral() || !ideal_power_membership(f, 4))
        throw NashError(ErrorKind::semantic, "f = " + f.str() + " is not in (z,u)^4");

    CAx2Form form;
    form.f = f;
    form.tau0_value = tau0(f);
    if (form.tau0_value % 2 != 0)
        throw NashError(ErrorKind::semantic,
                        "tau0 = " + std::to_string(form.tau0_value) +
                            " is odd; f is not invariant under 1/2(0,1,1,1)");
    SquareRootResult sq = is_perfect_square(leading_form(f, form.tau0_value));
    form.leading_structure = sq.structure;
    if (sq.kind == SquareKind::not_square) {
        form.form_case = CAx2Case::case1;
    } else {
        form.form_case = CAx2Case::case2;
        form.square_root = sq.root;  // absent for square-with-certificate
    }
    return form;
}

WeightSigma select_weight(const CAx2Form& form) {
    long long half = form.tau0_value / 2;
    WeightSigma s;
    s.m = 2;
    if (form.form_case == CAx2Case::case1)
        s.abcd = half % 2 == 0 ? std::array<long long, 4>{half, half + 1, 1, 1}
                               : std::array<long long, 4>{half + 1, half, 1, 1};
    else
        s.abcd = half % 2 == 0 ? std::array<long long, 4>{half + 2, half + 1, 1, 1}
                               : std::array<long long, 4>{half + 1, half + 2, 1, 1};
    return s;
}

Hyperquotient normalize_case2(const CAx2Form& form, Case2Sign sign,
                              std::vector<std::string>* warnings) {
    if (form.form_case != CAx2Case::case2)
        throw NashError(ErrorKind::semantic, "normalize_case2 requires a Case 2 form");
    if (!form.square_root)
        throw NashError(ErrorKind::incomplete,
                        "unsupported instance: the leading form is a square only up to an "
                        "irrational scalar; the substitution needs a rational square root");
    const SparsePoly& p = *form.square_root;
    Rat eps = sign == Case2Sign::plus ? Rat(2) : Rat(-2);
    SparsePoly rem = poly_sub(form.f, poly_mul(p, p));
    long long half = form.tau0_value / 2;
    SparsePoly phi;
    if (half % 2 == 0) {
        // substitute on x: x^2 + 2*eps*x*p + y^2 + (f - p^2)
        phi = poly_add(var_pow(kVarX, 2),
                       poly_scale(poly_mul(SparsePoly::variable(kVarX), p), eps));
        phi = poly_add(phi, var_pow(kVarY, 2));
    } else {
        // tau0/2 odd: p has odd degree, so the substitution must act on y to
        // keep the equation semi-invariant; the weight table swaps a and b
        // accordingly.
        phi = poly_add(var_pow(kVarX, 2), var_pow(kVarY, 2));
        phi = poly_add(phi, poly_scale(poly_mul(SparsePoly::variable(kVarY), p), eps));
    }
    phi = poly_add(phi, rem);
    Hyperquotient out(phi, GroupAction(2, {0, 1, 1, 1}));
    Rat w = wt_sigma(phi, select_weight(form));
    if (w != Rat(form.tau0_value / 2 + 1) && warnings)
        warnings->push_back("wt_sigma of the normalized equation is " + rat_str(w) +
                            ", expected tau0/2 + 1 = " +
                            std::to_string(form.tau0_value / 2 + 1) +
                            "; the instance has unexpectedly low-order terms");
    return out;
}

SparsePoly construct_h(int chart_index, const std::optional<Rat>& rho_squared) {
    SparsePoly h = poly_add(var_pow(kVarX, 2), var_pow(kVarY, 2));
    switch (chart_index) {
        case 1:
        case 2:
            h = poly_add(h, poly_add(var_pow(kVarZ, 2), var_pow(kVarU, 2)));
            return h;
        case 3:
            if (!rho_squared)
                throw NashError(ErrorKind::semantic,
                                "chart 3 separating function needs the parameter value");
            h = poly_add(h, poly_scale(var_pow(kVarZ, 2), -*rho_squared));
            h = poly_add(h, var_pow(kVarU, 2));
            return h;
        case 4:
            if (!rho_squared)
                throw NashError(ErrorKind::semantic,
                                "chart 4 separating function needs the parameter value");
            h = poly_add(h, var_pow(kVarZ, 2));
            h = poly_add(h, poly_scale(var_pow(kVarU, 2), -*rho_squared));
            return h;
    }
    throw NashError(ErrorKind::semantic, "chart index must be 1..4");
}

// --- the pipeline ----------------------------------------------------------------

namespace {

std::string render_point(const std::array<Rat, kNumVars>& q) {
    std::string s = "(";
    for (int v = 0; v < kNumVars; ++v) s += (v ? "," : "") + rat_str(q[v]);
    return s + ")";
}

// Parameter of the separating function: the u-coordinate on chart 3, the
// z-coordinate on chart 4, irrelevant on charts 1 and 2.
int param_var(int chart_index) {
    if (chart_index == 3) return kVarU;
    if (chart_index == 4) return kVarZ;
    return -1;
}

struct EntryChecker {
    NashCertificate& cert;
    const WeightSigma& sigma;

    void fail(const std::string& why) { cert.obstructions.push_back(why); }

    void add(int chart_index, PointEntry::Kind kind, const std::string& point_desc,
             long long qindex, const std::optional<Rat>& rho_squared,
             const std::function<bool(const SparsePoly&)>& vanishes_at_point) {
        PointEntry entry;
        entry.chart_index = chart_index;
        entry.kind = kind;
        entry.point = point_desc;
        entry.quotient_index = qindex;
        entry.h = construct_h(chart_index, rho_squared);
        entry.val_E_h = val_E(entry.h, sigma);
        entry.val_is_one = entry.val_E_h == 1;
        StrictTransform st = strict_transform_factorization(entry.h, sigma, chart_index);
        entry.strict_vanishes = vanishes_at_point(st.g);
        if (entry.val_is_one)
            entry.conclusion = conclude_non_domination(ValuationRelation{entry.val_E_h});
        entry.ok = entry.val_is_one && entry.strict_vanishes;
        if (!entry.ok) {
            std::string why = "chart " + std::to_string(chart_index) + ", point " +
                              point_desc + ": ";
            if (!entry.val_is_one)
                why += "val_E(h) = " + rat_str(entry.val_E_h) + " != 1";
            else
                why += "strict transform of h does not vanish at the point";
            fail(why);
        }
        cert.entries.push_back(std::move(entry));
    }
};

}  // namespace

NashCertificate certify_nash(const Hyperquotient& hq, Case2Sign sign) {
    NashCertificate cert;
    cert.input = hq.phi.str();
    cert.type = classify_mori_type(hq);

    CAx2Form form = validate_cax2(hq);
    cert.form_case = form.form_case;
    cert.tau0_value = form.tau0_value;
    WeightSigma sigma = select_weight(form);
    cert.weight = sigma;

    Hyperquotient working = hq;
    if (form.form_case == CAx2Case::case2) {
        cert.sign = sign;
        working = normalize_case2(form, sign, &cert.warnings);
    }
    cert.working_phi = working.phi;

    if (!admissible_weight(working.action, sigma))
        throw NashError(ErrorKind::internal, "selected weight is not admissible");
    cert.discrepancy = discrepancy_of_weight(working, sigma);
    if (cert.discrepancy != Rat(1, 2))
        cert.obstructions.push_back("discrepancy of the selected weight is " +
                                    rat_str(cert.discrepancy) + ", expected 1/2");

    EntryChecker checker{cert, sigma};
    for (int i = 1; i <= 4; ++i) {
        ChartSummary cs;
        cs.model = chart(working, sigma, i);
        cs.jacobian.chart_index = i;
        cs.quotient.origin_index = cs.model.quotient_index;
        if (cs.model.empty_chart) {
            cs.vacuous = true;
            cs.jacobian.notes.push_back("strict transform is a unit; the chart misses X-bar");
            cert.charts.push_back(std::move(cs));
            continue;
        }
        cs.jacobian = singular_points_on_E(cs.model);
        cs.quotient = quotient_singular_points(cs.model);
        if (cs.jacobian.requires_elimination)
            checker.fail("chart " + std::to_string(i) +
                         ": Jacobian system requires elimination");
        if (cs.quotient.requires_elimination)
            checker.fail("chart " + std::to_string(i) +
                         ": quotient-point scan requires elimination");
        cs.vacuous = cs.jacobian.points.empty() && cs.jacobian.certificates.empty() &&
                     !cs.quotient.origin_singular && cs.quotient.extra_points.empty() &&
                     !cs.jacobian.requires_elimination && !cs.quotient.requires_elimination;

        const int pv = param_var(i);

        if (cs.quotient.origin_singular) {
            std::array<Rat, kNumVars> origin{Rat(0), Rat(0), Rat(0), Rat(0)};
            std::optional<Rat> rho2;
            if (pv >= 0) rho2 = Rat(0);
            checker.add(i, PointEntry::Kind::quotient_point,
                        render_point(origin) + " [index " +
                            std::to_string(cs.quotient.origin_index) + "]",
                        cs.quotient.origin_index, rho2, [&](const SparsePoly& g) {
                            return poly_evaluate(g, origin) == 0;
                        });
        }
        for (const auto& xp : cs.quotient.extra_points) {
            std::optional<Rat> rho2;
            if (pv >= 0) rho2 = xp.coords[pv] * xp.coords[pv];
            checker.add(i, PointEntry::Kind::quotient_point,
                        render_point(xp.coords) + " [index " + std::to_string(xp.index) + "]",
                        xp.index, rho2, [&](const SparsePoly& g) {
                            return poly_evaluate(g, xp.coords) == 0;
                        });
        }
        for (const auto& q : cs.jacobian.points) {
            if (!verify_jacobian_point(cs.model, q))
                throw NashError(ErrorKind::internal,
                                "reported singular point fails the Jacobian check");
            std::optional<Rat> rho2;
            if (pv >= 0) rho2 = q[pv] * q[pv];
            checker.add(i, PointEntry::Kind::jacobian_point, render_point(q), 1, rho2,
                        [&](const SparsePoly& g) { return poly_evaluate(g, q) == 0; });
        }
        for (const auto& c : cs.jacobian.certificates) {
            if (!c.fully_verified) {
                checker.fail("chart " + std::to_string(i) + ": certificate " +
                             c.description() + " could not be verified symbolically");
                continue;
            }
            std::optional<Rat> rho2;
            if (pv >= 0) {
                if (c.rational[pv]) {
                    rho2 = *c.rational[pv] * *c.rational[pv];
                } else if (c.primary_var == pv) {
                    // rho^2 is the reduction of v^2 modulo the minimal
                    // polynomial; usable only when it is a constant.
                    UniPoly v2 = UniPoly::monomial(Rat(1), 2);
                    UniPoly red = uni_divmod(v2, c.primary_min_poly).second;
                    if (red.degree() <= 0) {
                        rho2 = red.is_zero() ? Rat(0) : red.c[0];
                    } else {
                        checker.fail("chart " + std::to_string(i) +
                                     ": incomplete - algebraic point " + c.description() +
                                     " has no rational value for rho^2");
                        continue;
                    }
                } else {
                    checker.fail("chart " + std::to_string(i) +
                                 ": incomplete - algebraic point " + c.description());
                    continue;
                }
            }
            checker.add(i, PointEntry::Kind::algebraic_certificate, c.description(), 1, rho2,
                        [&](const SparsePoly& g) {
                            return poly_vanishes_on_certificate(g, c);
                        });
        }
        cert.charts.push_back(std::move(cs));
    }

    cert.verdict = cert.obstructions.empty() ? NashCertificate::Verdict::verified
                                             : NashCertificate::Verdict::incomplete;
    return cert;
}

}  // namespace nashcert

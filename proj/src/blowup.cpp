#include "nashcert/blowup.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nashcert/error.hpp"

namespace nashcert {

Hyperquotient::Hyperquotient(SparsePoly phi_, GroupAction action_)
    : phi(std::move(phi_)), action(action_.normalized()) {
    if (phi.is_zero())
        throw NashError(ErrorKind::semantic, "defining polynomial must be nonzero");
    phi_class = semiinvariant_class(phi, action);  // raises on mixed classes
    if (poly_evaluate(phi, {Rat(0), Rat(0), Rat(0), Rat(0)}) != 0)
        throw NashError(ErrorKind::semantic, "defining polynomial must vanish at the origin");
}

bool admissible_weight(const GroupAction& act, const WeightSigma& sigma) {
    GroupAction a = act.normalized();
    if (sigma.m != a.m)
        throw NashError(ErrorKind::semantic, "weight and action have different moduli");
    for (long long v : sigma.abcd)
        if (v <= 0) throw NashError(ErrorKind::semantic, "weight entries must be positive");
    long long m = a.m;
    // sigma in N-bar: sigma == k*e mod Z^4 for some k.
    auto multiple_hits = [m](const std::array<long long, kNumVars>& gen,
                             const std::array<long long, kNumVars>& target) {
        for (long long k = 0; k < m; ++k) {
            bool ok = true;
            for (int v = 0; v < kNumVars; ++v)
                if (euclid_mod(k * gen[v], m) != euclid_mod(target[v], m)) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        return false;
    };
    return multiple_hits(a.weights, sigma.abcd) && multiple_hits(sigma.abcd, a.weights);
}

ChartModel chart(const Hyperquotient& hq, const WeightSigma& sigma, int chart_index) {
    if (chart_index < 1 || chart_index > kNumVars)
        throw NashError(ErrorKind::semantic, "chart index must be 1..4");
    if (!admissible_weight(hq.action, sigma))
        throw NashError(ErrorKind::semantic, "weight " + sigma.str() +
                                                 " is not admissible for " + hq.action.str());
    ChartModel ch;
    ch.index = chart_index;
    ch.wt_phi = wt_sigma(hq.phi, sigma);
    ChartFactorization f = factor_out_chartvar(substitute_weighted(hq.phi, chart_index, sigma),
                                               chart_index);
    if (f.k != ch.wt_phi)
        throw NashError(ErrorKind::internal, "chart factorization exponent != wt_sigma(phi)");
    ch.strict_phi = f.strict;
    ch.empty_chart = ch.strict_phi.term_count() == 1 &&
                     ch.strict_phi.terms().begin()->first == ExpVec{0, 0, 0, 0};

    // Quotient table: chart i is C^4 / (1/abcd_i)(-a,..,m,..,-d) with m in
    // position i.
    GroupAction q;
    q.m = sigma.abcd[chart_index - 1];
    for (int v = 0; v < kNumVars; ++v) q.weights[v] = -sigma.abcd[v];
    q.weights[chart_index - 1] = sigma.m;
    ch.quotient = q.normalized();
    ch.quotient_index = ch.quotient.faithful_order();
    return ch;
}

Rat val_E(const SparsePoly& h, const WeightSigma& sigma) {
    if (h.is_zero()) throw NashError(ErrorKind::semantic, "val_E of the zero function");
    Rat w = wt_sigma(h, sigma);
    for (int i = 1; i <= kNumVars; ++i) {
        ChartFactorization f = factor_out_chartvar(substitute_weighted(h, i, sigma), i);
        if (f.k != w)
            throw NashError(ErrorKind::internal, "chart factorization disagrees with wt_sigma");
    }
    return w;
}

Rat discrepancy_of_weight(const Hyperquotient& hq, const WeightSigma& sigma) {
    if (!admissible_weight(hq.action, sigma))
        throw NashError(ErrorKind::semantic, "weight " + sigma.str() +
                                                 " is not admissible for " + hq.action.str());
    Rat sum(0);
    for (long long v : sigma.abcd) sum += Rat(v);
    return sum / Rat(sigma.m) - 1 - wt_sigma(hq.phi, sigma);
}

StrictTransform strict_transform_factorization(const SparsePoly& h, const WeightSigma& sigma,
                                               int chart_index) {
    ChartFactorization f =
        factor_out_chartvar(substitute_weighted(h, chart_index, sigma), chart_index);
    return {f.k, f.strict};
}

// --- Jacobian solver ----------------------------------------------------------

namespace {

std::vector<SparsePoly> equations_on_E(const ChartModel& ch) {
    std::vector<SparsePoly> eqs;
    eqs.push_back(ch.strict_phi);
    for (int v = 0; v < kNumVars; ++v) eqs.push_back(partial_derivative(ch.strict_phi, v));
    for (auto& e : eqs) e = poly_substitute(e, ch.exceptional_var(), Rat(0));
    return eqs;
}

bool uses_var(const SparsePoly& p, int v) {
    for (const auto& [e, c] : p.terms())
        if (e[v] != 0) return true;
    return false;
}

bool is_constant(const SparsePoly& p) {
    for (int v = 0; v < kNumVars; ++v)
        if (uses_var(p, v)) return false;
    return true;
}

// v such that p = c * v^k; -1 otherwise (including constants).
int pure_power_var(const SparsePoly& p) {
    if (p.term_count() != 1) return -1;
    const ExpVec& e = p.terms().begin()->first;
    int var = -1;
    for (int v = 0; v < kNumVars; ++v) {
        if (e[v] == 0) continue;
        if (var >= 0) return -1;
        var = v;
    }
    return var;
}

UniPoly to_univariate(const SparsePoly& p, int v) {
    std::vector<Rat> c;
    for (const auto& [e, coeff] : p.terms()) {
        long long d = e[v] / p.denom();
        if (static_cast<size_t>(d) >= c.size()) c.resize(d + 1, Rat(0));
        c[d] = coeff;
    }
    return UniPoly(c);
}

std::string point_str(const std::array<Rat, kNumVars>& q) {
    std::string s = "(";
    for (int v = 0; v < kNumVars; ++v) s += (v ? "," : "") + rat_str(q[v]);
    return s + ")";
}

}  // namespace

std::string SingularPointCertificate::description() const {
    std::ostringstream os;
    os << "(";
    for (int v = 0; v < kNumVars; ++v) {
        if (v) os << ",";
        if (rational[v])
            os << rat_str(*rational[v]);
        else if (v == primary_var)
            os << kVarNames[v];
        else if (v == secondary_var)
            os << kVarNames[v];
        else
            os << "?";
    }
    os << ") with ";
    if (primary_var >= 0)
        os << uni_str(primary_min_poly, kVarNames[primary_var]) << " = 0";
    if (secondary_var >= 0) {
        os << ", " << kVarNames[secondary_var] << "^" << secondary_pow;
        if (secondary_c >= 0)
            os << " + " << rat_str(secondary_c);
        else
            os << " - " << rat_str(-secondary_c);
        os << " = 0";
    }
    return os.str();
}

SingularPointReport singular_points_on_E(const ChartModel& ch) {
    if (!ch.strict_phi.integral())
        throw NashError(ErrorKind::semantic,
                        "Jacobian analysis requires integer exponents in the chart");
    SingularPointReport rep;
    rep.chart_index = ch.index;

    std::vector<SparsePoly> eqs = equations_on_E(ch);
    std::array<std::optional<Rat>, kNumVars> assigned;
    assigned[ch.exceptional_var()] = Rat(0);

    // Forced substitutions: an equation c*v^k = 0 pins v = 0.
    for (;;) {
        bool progressed = false;
        for (const SparsePoly& e : eqs) {
            if (e.is_zero()) continue;
            if (is_constant(e)) {
                rep.notes.push_back("system is inconsistent after forced substitutions; "
                                    "no singular points on E in this chart");
                return rep;
            }
        }
        for (SparsePoly& e : eqs) {
            int v = pure_power_var(e);
            if (v >= 0 && !assigned[v]) {
                assigned[v] = Rat(0);
                for (SparsePoly& f : eqs) f = poly_substitute(f, v, Rat(0));
                progressed = true;
                break;
            }
        }
        if (!progressed) break;
    }

    // Euler rule: the system consists of G and its partials, and substituting
    // forced zeros commutes with the remaining derivatives. If the restricted
    // G is a nonzero constant c plus a homogeneous part F of positive degree,
    // then at any common zero all partials of F vanish, Euler's identity
    // forces F = 0, and G = c != 0: the system has no solutions.
    if (!eqs[0].is_zero() && !is_constant(eqs[0])) {
        Rat c = poly_evaluate(eqs[0], {Rat(0), Rat(0), Rat(0), Rat(0)});
        if (c != 0) {
            bool homogeneous = true;
            long long deg = -1;
            for (const auto& [e, coeff] : eqs[0].terms()) {
                long long d = e[0] + e[1] + e[2] + e[3];
                if (d == 0) continue;
                if (deg < 0) deg = d;
                if (d != deg) {
                    homogeneous = false;
                    break;
                }
            }
            if (homogeneous) {
                rep.notes.push_back(
                    "no singular points on E in this chart: the restricted equation is a "
                    "nonzero constant plus a homogeneous form whose gradient is in the "
                    "system (Euler's identity)");
                return rep;
            }
        }
    }

    std::vector<SparsePoly> live_eqs;
    for (const SparsePoly& e : eqs)
        if (!e.is_zero()) live_eqs.push_back(e);

    std::vector<int> live_vars;
    for (int v = 0; v < kNumVars; ++v) {
        if (assigned[v]) continue;
        for (const SparsePoly& e : live_eqs)
            if (uses_var(e, v)) {
                live_vars.push_back(v);
                break;
            }
    }
    std::vector<int> free_vars;  // unassigned and absent from every equation
    for (int v = 0; v < kNumVars; ++v)
        if (!assigned[v] && std::find(live_vars.begin(), live_vars.end(), v) == live_vars.end())
            free_vars.push_back(v);

    auto emit_rational = [&](const std::array<std::optional<Rat>, kNumVars>& vals) {
        std::array<Rat, kNumVars> q;
        for (int v = 0; v < kNumVars; ++v) q[v] = vals[v] ? *vals[v] : Rat(0);
        if (!verify_jacobian_point(ch, q))
            throw NashError(ErrorKind::internal,
                            "solver produced a point that fails the Jacobian check");
        rep.points.push_back(q);
    };

    if (live_eqs.empty()) {
        if (!free_vars.empty()) {
            rep.requires_elimination = true;
            rep.notes.push_back("singular locus on E is positive-dimensional");
            return rep;
        }
        emit_rational(assigned);
        return rep;
    }
    if (!free_vars.empty()) {
        rep.requires_elimination = true;
        rep.notes.push_back("requires elimination: unconstrained variable in the system");
        return rep;
    }

    if (live_vars.size() == 1) {
        int v = live_vars[0];
        UniPoly g;
        for (const SparsePoly& e : live_eqs) g = uni_gcd(g, to_univariate(e, v));
        if (g.degree() <= 0) {
            rep.notes.push_back("univariate system has no common root");
            return rep;
        }
        RationalRoots rr = uni_rational_roots(g);
        for (const Rat& r : rr.roots) {
            auto vals = assigned;
            vals[v] = r;
            emit_rational(vals);
        }
        if (rr.cofactor.degree() >= 1) {
            SingularPointCertificate cert;
            cert.rational = assigned;
            cert.primary_var = v;
            cert.primary_min_poly = rr.cofactor;
            cert.fully_verified = verify_certificate_point(ch, cert);
            rep.certificates.push_back(std::move(cert));
        }
        return rep;
    }

    if (live_vars.size() == 2) {
        // Structured pattern: all equations univariate in v1 except a single
        // one of the shape c2*v2^k + B(v1).
        for (int swap = 0; swap < 2; ++swap) {
            int v1 = live_vars[swap], v2 = live_vars[1 - swap];
            const SparsePoly* star = nullptr;
            bool ok = true;
            for (const SparsePoly& e : live_eqs) {
                if (!uses_var(e, v2)) continue;
                if (star) {
                    ok = false;
                    break;
                }
                star = &e;
            }
            if (!ok || !star) continue;
            // Split e* into c2*v2^k + B(v1).
            long long k = -1;
            Rat c2(0);
            SparsePoly B = SparsePoly::zero();
            bool shape = true;
            for (const auto& [e, coeff] : star->terms()) {
                long long e2 = e[v2] / star->denom();
                if (e2 == 0) {
                    std::array<Rat, kNumVars> mono{};
                    for (int w = 0; w < kNumVars; ++w) mono[w] = star->exponent(e, w);
                    B = poly_add(B, SparsePoly::monomial(coeff, mono));
                } else if (e[v1] == 0) {
                    if (k >= 0 && e2 != k) {
                        shape = false;
                        break;
                    }
                    k = e2;
                    c2 = coeff;
                } else {
                    shape = false;
                    break;
                }
            }
            if (!shape || k < 0 || c2 == 0) continue;
            if (live_eqs.size() < 2) {
                rep.requires_elimination = true;
                rep.notes.push_back("requires elimination: underdetermined system on E");
                return rep;
            }

            UniPoly g;
            for (const SparsePoly& e : live_eqs) {
                if (&e == star) continue;
                g = uni_gcd(g, to_univariate(e, v1));
            }
            if (g.degree() <= 0) {
                rep.notes.push_back("univariate part has no common root");
                return rep;
            }
            UniPoly Bu = to_univariate(B, v1);
            RationalRoots rr = uni_rational_roots(g);
            for (const Rat& r : rr.roots) {
                Rat rhs = -Bu.eval(r) / c2;  // v2^k = rhs
                std::vector<Rat> mono(k + 1, Rat(0));
                mono[0] = -rhs;
                mono[k] = 1;
                RationalRoots rr2 = uni_rational_roots(UniPoly(mono));
                for (const Rat& r2 : rr2.roots) {
                    auto vals = assigned;
                    vals[v1] = r;
                    vals[v2] = r2;
                    emit_rational(vals);
                }
                if (rr2.cofactor.degree() >= 1) {
                    SingularPointCertificate cert;
                    cert.rational = assigned;
                    cert.rational[v1] = r;
                    cert.primary_var = v2;
                    cert.primary_min_poly = rr2.cofactor;
                    cert.fully_verified = verify_certificate_point(ch, cert);
                    rep.certificates.push_back(std::move(cert));
                }
            }
            if (rr.cofactor.degree() >= 1) {
                const UniPoly& q = rr.cofactor;
                UniPoly Bred = uni_divmod(Bu, q).second;
                if (Bred.degree() >= 1) {
                    rep.requires_elimination = true;
                    rep.notes.push_back(
                        "requires elimination: coupled equation stays non-constant on the "
                        "algebraic factor " + uni_str(q, kVarNames[v1]));
                    return rep;
                }
                Rat rhs = Bred.is_zero() ? Rat(0) : Rat(-Bred.c[0] / c2);
                SingularPointCertificate cert;
                cert.rational = assigned;
                cert.primary_var = v1;
                cert.primary_min_poly = q;
                if (rhs == 0) {
                    cert.rational[v2] = Rat(0);
                } else {
                    cert.secondary_var = v2;
                    cert.secondary_pow = static_cast<int>(k);
                    cert.secondary_c = -rhs;  // relation v2^k + c = 0
                }
                cert.fully_verified = verify_certificate_point(ch, cert);
                rep.certificates.push_back(std::move(cert));
            }
            return rep;
        }
    }

    rep.requires_elimination = true;
    std::string sys = "requires elimination: residual system {";
    for (size_t i = 0; i < live_eqs.size(); ++i)
        sys += (i ? "; " : "") + live_eqs[i].str();
    rep.notes.push_back(sys + "}");
    return rep;
}

bool verify_jacobian_point(const ChartModel& ch, const std::array<Rat, kNumVars>& q) {
    if (q[ch.exceptional_var()] != 0)
        throw NashError(ErrorKind::semantic, "point " + point_str(q) +
                                                 " does not lie on the exceptional divisor");
    if (poly_evaluate(ch.strict_phi, q) != 0) return false;
    for (int v = 0; v < kNumVars; ++v)
        if (poly_evaluate(partial_derivative(ch.strict_phi, v), q) != 0) return false;
    return true;
}

bool poly_vanishes_on_certificate(const SparsePoly& g, const SingularPointCertificate& cert) {
    if (cert.primary_var < 0) return false;
    SparsePoly e = g;
    for (int v = 0; v < kNumVars; ++v)
        if (cert.rational[v]) e = poly_substitute(e, v, *cert.rational[v]);
    if (e.is_zero()) return true;
    if (!e.integral()) return false;
    // Remaining support must be the algebraic coordinates.
    for (int v = 0; v < kNumVars; ++v)
        if (v != cert.primary_var && v != cert.secondary_var && uses_var(e, v)) return false;
    // Reduce secondary powers via v^k = -c, collect per residual power a
    // univariate polynomial in the primary variable, reduce mod q.
    std::map<long long, UniPoly> buckets;
    for (const auto& [ev, coeff] : e.terms()) {
        long long ep = ev[cert.primary_var] / e.denom();
        long long es = cert.secondary_var >= 0 ? ev[cert.secondary_var] / e.denom() : 0;
        Rat factor = coeff;
        long long res = 0;
        if (cert.secondary_var >= 0 && cert.secondary_pow > 0) {
            long long quo = es / cert.secondary_pow;
            res = es % cert.secondary_pow;
            for (long long i = 0; i < quo; ++i) factor *= -cert.secondary_c;
        }
        UniPoly& b = buckets[res];
        b = uni_add(b, UniPoly::monomial(factor, static_cast<int>(ep)));
    }
    for (const auto& [res, poly] : buckets)
        if (!uni_divmod(poly, cert.primary_min_poly).second.is_zero()) return false;
    return true;
}

bool verify_certificate_point(const ChartModel& ch, const SingularPointCertificate& cert) {
    if (cert.primary_var < 0) return false;
    for (const SparsePoly& e : equations_on_E(ch))
        if (!poly_vanishes_on_certificate(e, cert)) return false;
    return true;
}

// --- quotient (index > 1) points ------------------------------------------------

QuotientPointScan quotient_singular_points(const ChartModel& ch) {
    QuotientPointScan out;
    GroupAction a = ch.quotient.normalized();
    out.origin_index = ch.quotient_index;
    Rat origin_value = poly_evaluate(ch.strict_phi, {Rat(0), Rat(0), Rat(0), Rat(0)});
    out.origin_singular = ch.quotient_index > 1 && origin_value == 0;
    if (ch.quotient_index <= 1) return out;

    const long long m = a.m;
    const int ev = ch.exceptional_var();
    std::set<std::array<bool, kNumVars>> seen;
    std::set<std::array<std::string, kNumVars>> emitted;
    for (long long k = 1; k < m; ++k) {
        std::array<bool, kNumVars> fixed{};
        bool trivial = true;
        for (int v = 0; v < kNumVars; ++v) {
            fixed[v] = euclid_mod(k * a.weights[v], m) == 0;
            if (!fixed[v]) trivial = false;
        }
        if (trivial || !seen.insert(fixed).second) continue;

        std::vector<int> span;
        for (int v = 0; v < kNumVars; ++v)
            if (fixed[v] && v != ev) span.push_back(v);
        if (span.empty()) continue;  // subspace meets E only at the origin

        SparsePoly f = ch.strict_phi;
        for (int v = 0; v < kNumVars; ++v)
            if (!fixed[v] || v == ev) f = poly_substitute(f, v, Rat(0));
        if (f.is_zero()) {
            out.requires_elimination = true;
            out.notes.push_back("non-free locus of the chart quotient lies inside the "
                                "strict transform (positive-dimensional)");
            continue;
        }
        if (is_constant(f)) continue;  // subspace misses the strict transform

        std::vector<int> live;
        for (int v : span)
            if (uses_var(f, v)) live.push_back(v);
        if (live.size() > 1) {
            out.requires_elimination = true;
            out.notes.push_back("quotient-point scan needs elimination on a fixed "
                                "subspace of dimension > 1");
            continue;
        }
        if (live.size() < span.size()) {
            // A fixed coordinate is absent from the restricted equation.
            out.requires_elimination = true;
            out.notes.push_back("quotient-point locus is positive-dimensional on the chart");
            continue;
        }
        int v = live[0];
        RationalRoots rr = uni_rational_roots(to_univariate(f, v));
        for (const Rat& r : rr.roots) {
            if (r == 0) continue;  // origin is reported separately
            std::array<Rat, kNumVars> q{Rat(0), Rat(0), Rat(0), Rat(0)};
            q[v] = r;
            long long stab = llgcd(m, a.weights[v]);
            if (stab <= 1) continue;
            std::array<std::string, kNumVars> key;
            for (int w = 0; w < kNumVars; ++w) key[w] = rat_str(q[w]);
            if (emitted.insert(key).second) out.extra_points.push_back({q, stab});
        }
        if (rr.cofactor.degree() >= 1)
            out.notes.push_back("algebraic quotient points on factor " +
                                uni_str(rr.cofactor, kVarNames[v]) + " (not rational)");
    }
    return out;
}

// --- valuation inequality -------------------------------------------------------

NonDominationConclusion conclude_non_domination(const ValuationRelation& rel) {
    if (rel.val_E_h != 1)
        throw NashError(ErrorKind::semantic,
                        "non-domination conclusion requires val_E(h) = 1, got " +
                            rat_str(rel.val_E_h));
    auto check_int_ge1 = [](const std::optional<Rat>& v, const char* name) {
        if (v && (!is_integer(*v) || *v < 1))
            throw NashError(ErrorKind::semantic,
                            std::string(name) + " must be an integer >= 1");
    };
    check_int_ge1(rel.a, "a");
    check_int_ge1(rel.a1, "a1");
    if (rel.c && *rel.c <= 0)
        throw NashError(ErrorKind::semantic, "c must be positive");
    if (rel.d && *rel.d < 0)
        throw NashError(ErrorKind::semantic, "d must be non-negative");

    Rat aa1 = (rel.a ? *rel.a : Rat(1)) * (rel.a1 ? *rel.a1 : Rat(1));
    Rat dmin = rel.d ? *rel.d : Rat(0);
    NonDominationConclusion out;
    std::ostringstream os;
    if (rel.c) {
        out.lower_bound = aa1 + *rel.c + dmin;
        out.strict = false;
        os << "val_F(h) = a*a1 + c*val_E(h) + d >= " << rat_str(aa1) << " + " << rat_str(*rel.c)
           << "*1 + " << rat_str(dmin) << " = " << rat_str(out.lower_bound)
           << " > 1 = val_E(h)";
    } else {
        out.lower_bound = aa1 + dmin;
        out.strict = true;
        os << "val_F(h) = a*a1 + c*val_E(h) + d > " << rat_str(aa1) << " + " << rat_str(dmin)
           << " = " << rat_str(out.lower_bound) << " >= 1 = val_E(h)";
    }
    out.inequality_chain = os.str();
    return out;
}

}  // namespace nashcert

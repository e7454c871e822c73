#include "nashcert/polyring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nashcert/error.hpp"

namespace nashcert {

const std::array<const char*, kNumVars> kVarNames = {"x", "y", "z", "u"};

int var_index(char name) {
    switch (name) {
        case 'x': return kVarX;
        case 'y': return kVarY;
        case 'z': return kVarZ;
        case 'u': return kVarU;
    }
    return -1;
}

GroupAction GroupAction::normalized() const {
    if (m < 1) throw NashError(ErrorKind::semantic, "group order must be positive");
    GroupAction a;
    a.m = m;
    for (int v = 0; v < kNumVars; ++v) a.weights[v] = euclid_mod(weights[v], m);
    return a;
}

long long GroupAction::faithful_order() const {
    long long g = m;
    for (long long w : normalized().weights) g = llgcd(g, w);
    return m / g;
}

bool GroupAction::operator==(const GroupAction& o) const {
    GroupAction a = normalized(), b = o.normalized();
    return a.m == b.m && a.weights == b.weights;
}

std::string GroupAction::str() const {
    GroupAction a = normalized();
    std::ostringstream os;
    os << "1/" << a.m << "(";
    for (int v = 0; v < kNumVars; ++v) os << (v ? "," : "") << a.weights[v];
    os << ")";
    return os.str();
}

std::string WeightSigma::str() const {
    std::ostringstream os;
    os << "1/" << m << "(";
    for (int v = 0; v < kNumVars; ++v) os << (v ? "," : "") << abcd[v];
    os << ")";
    return os.str();
}

// --- SparsePoly -------------------------------------------------------------

SparsePoly SparsePoly::constant(const Rat& c) {
    SparsePoly p;
    if (c != 0) p.terms_[{0, 0, 0, 0}] = c;
    return p;
}

SparsePoly SparsePoly::variable(int v) {
    SparsePoly p;
    ExpVec e{0, 0, 0, 0};
    e[v] = 1;
    p.terms_[e] = Rat(1);
    return p;
}

SparsePoly SparsePoly::monomial(const Rat& coeff, const std::array<Rat, kNumVars>& exps) {
    PolyBuilder b;
    b.add_term(coeff, exps);
    return b.build();
}

Rat SparsePoly::coefficient(const std::array<Rat, kNumVars>& exps) const {
    ExpVec key;
    for (int v = 0; v < kNumVars; ++v) {
        Rat scaled = exps[v] * Rat(denom_);
        if (!is_integer(scaled)) return Rat(0);
        key[v] = static_cast<long long>(num(scaled));
    }
    auto it = terms_.find(key);
    return it == terms_.end() ? Rat(0) : it->second;
}

bool SparsePoly::integral_in(int v) const {
    for (const auto& [e, c] : terms_)
        if (e[v] % denom_ != 0) return false;
    return true;
}

bool SparsePoly::integral() const {
    for (int v = 0; v < kNumVars; ++v)
        if (!integral_in(v)) return false;
    return true;
}

void SparsePoly::canonicalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
    if (terms_.empty()) {
        denom_ = 1;
        return;
    }
    long long g = denom_;
    for (const auto& [e, c] : terms_)
        for (long long v : e) g = llgcd(g, v);
    if (g > 1) {
        std::map<ExpVec, Rat> reduced;
        for (const auto& [e, c] : terms_) {
            ExpVec ne;
            for (int v = 0; v < kNumVars; ++v) ne[v] = e[v] / g;
            reduced[ne] = c;
        }
        terms_ = std::move(reduced);
        denom_ /= g;
    }
}

SparsePoly SparsePoly::rescaled(long long new_denom) const {
    long long f = new_denom / denom_;
    SparsePoly p;
    p.denom_ = new_denom;
    for (const auto& [e, c] : terms_) {
        ExpVec ne;
        for (int v = 0; v < kNumVars; ++v) ne[v] = e[v] * f;
        p.terms_[ne] = c;
    }
    return p;
}

void PolyBuilder::add_term(const Rat& coeff, const std::array<Rat, kNumVars>& exps) {
    for (const Rat& e : exps)
        if (e < 0) throw NashError(ErrorKind::semantic, "negative exponent");
    raw_.emplace_back(exps, coeff);
}

SparsePoly PolyBuilder::build() {
    long long d = 1;
    for (const auto& [exps, c] : raw_)
        for (const Rat& e : exps) {
            Int dd = den(e);
            if (dd > 1000000000) throw NashError(ErrorKind::semantic, "exponent denominator too large");
            d = lllcm(d, static_cast<long long>(dd));
        }
    SparsePoly p;
    p.denom_ = d;
    for (const auto& [exps, c] : raw_) {
        ExpVec key;
        for (int v = 0; v < kNumVars; ++v)
            key[v] = static_cast<long long>(num(exps[v] * Rat(d)));
        p.terms_[key] += c;
    }
    p.canonicalize();
    return p;
}

SparsePoly poly_add(const SparsePoly& a, const SparsePoly& b) {
    long long d = lllcm(a.denom(), b.denom());
    SparsePoly ra = a.rescaled(d), rb = b.rescaled(d);
    for (const auto& [e, c] : rb.terms_) ra.terms_[e] += c;
    ra.canonicalize();
    return ra;
}

SparsePoly poly_sub(const SparsePoly& a, const SparsePoly& b) {
    return poly_add(a, poly_scale(b, Rat(-1)));
}

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b) {
    long long d = lllcm(a.denom(), b.denom());
    SparsePoly ra = a.rescaled(d), rb = b.rescaled(d);
    SparsePoly p;
    p.denom_ = d;
    for (const auto& [ea, ca] : ra.terms_)
        for (const auto& [eb, cb] : rb.terms_) {
            ExpVec e;
            for (int v = 0; v < kNumVars; ++v) e[v] = ea[v] + eb[v];
            p.terms_[e] += ca * cb;
        }
    p.canonicalize();
    return p;
}

SparsePoly poly_scale(const SparsePoly& a, const Rat& s) {
    if (s == 0) return SparsePoly::zero();
    SparsePoly p = a;
    for (auto& [e, c] : p.terms_) c *= s;
    return p;
}

SparsePoly poly_pow(const SparsePoly& a, int k) {
    if (k < 0) throw NashError(ErrorKind::semantic, "negative power");
    SparsePoly r = SparsePoly::constant(Rat(1));
    for (int i = 0; i < k; ++i) r = poly_mul(r, a);
    return r;
}

SparsePoly partial_derivative(const SparsePoly& p, int v) {
    if (!p.integral_in(v))
        throw NashError(ErrorKind::semantic,
                        std::string("fractional exponent in ") + kVarNames[v] +
                            "; formal derivative undefined");
    PolyBuilder b;
    for (const auto& [e, c] : p.terms()) {
        Rat ev = p.exponent(e, v);
        if (ev == 0) continue;
        std::array<Rat, kNumVars> ne;
        for (int w = 0; w < kNumVars; ++w) ne[w] = p.exponent(e, w);
        ne[v] -= 1;
        b.add_term(c * ev, ne);
    }
    return b.build();
}

namespace {

// coeff * base^exp for a rational exponent; only defined when exp is an
// integer or base is 0 or 1.
Rat pow_term(const Rat& base, const Rat& exp) {
    if (exp == 0) return Rat(1);
    if (base == 0) return Rat(0);
    if (base == 1) return Rat(1);
    if (!is_integer(exp))
        throw NashError(ErrorKind::semantic, "fractional exponent at incompatible point");
    Int n = num(exp);
    Rat r(1);
    for (Int i = 0; i < n; ++i) r *= base;
    return r;
}

}  // namespace

SparsePoly poly_substitute(const SparsePoly& p, int v, const Rat& value) {
    PolyBuilder b;
    for (const auto& [e, c] : p.terms()) {
        Rat factor = pow_term(value, p.exponent(e, v));
        if (factor == 0) continue;
        std::array<Rat, kNumVars> ne;
        for (int w = 0; w < kNumVars; ++w) ne[w] = p.exponent(e, w);
        ne[v] = 0;
        b.add_term(c * factor, ne);
    }
    return b.build();
}

Rat poly_evaluate(const SparsePoly& p, const std::array<Rat, kNumVars>& q) {
    Rat total(0);
    for (const auto& [e, c] : p.terms()) {
        Rat t = c;
        for (int v = 0; v < kNumVars && t != 0; ++v) t *= pow_term(q[v], p.exponent(e, v));
        total += t;
    }
    return total;
}

namespace {

std::string monomial_str(const SparsePoly& p, const ExpVec& e) {
    std::string s;
    for (int v = 0; v < kNumVars; ++v) {
        Rat ev = p.exponent(e, v);
        if (ev == 0) continue;
        if (!s.empty()) s += "*";
        s += kVarNames[v];
        if (ev != 1) {
            if (is_integer(ev))
                s += "^" + num(ev).str();
            else
                s += "^(" + rat_str(ev) + ")";
        }
    }
    return s;
}

}  // namespace

Rat semiinvariant_class(const SparsePoly& p, const GroupAction& act) {
    GroupAction a = act.normalized();
    bool have = false;
    Rat cls(0);
    ExpVec first{};
    for (const auto& [e, c] : p.terms()) {
        Rat w(0);
        for (int v = 0; v < kNumVars; ++v) w += Rat(a.weights[v]) * p.exponent(e, v);
        Rat r = rat_mod(w, Rat(a.m));
        if (!have) {
            cls = r;
            first = e;
            have = true;
        } else if (r != cls) {
            throw NashError(ErrorKind::semantic,
                            "not semi-invariant under " + a.str() + ": monomial " +
                                monomial_str(p, first) + " has class " + rat_str(cls) +
                                " but " + monomial_str(p, e) + " has class " + rat_str(r));
        }
    }
    return cls;  // 0 for the zero polynomial
}

bool is_semiinvariant(const SparsePoly& p, const GroupAction& act) {
    try {
        semiinvariant_class(p, act);
        return true;
    } catch (const NashError&) {
        return false;
    }
}

Rat wt_sigma_monomial(const ExpVec& e, long long denom, const WeightSigma& sigma) {
    Rat w(0);
    for (int v = 0; v < kNumVars; ++v) w += Rat(sigma.abcd[v]) * Rat(e[v]);
    return w / (Rat(sigma.m) * Rat(denom));
}

Rat wt_sigma(const SparsePoly& p, const WeightSigma& sigma) {
    if (p.is_zero()) throw NashError(ErrorKind::semantic, "wt_sigma of the zero polynomial");
    bool have = false;
    Rat best(0);
    for (const auto& [e, c] : p.terms()) {
        Rat w = wt_sigma_monomial(e, p.denom(), sigma);
        if (!have || w < best) {
            best = w;
            have = true;
        }
    }
    return best;
}

SparsePoly substitute_weighted(const SparsePoly& p, int chart_index, const WeightSigma& sigma) {
    if (chart_index < 1 || chart_index > kNumVars)
        throw NashError(ErrorKind::semantic, "chart index must be 1..4");
    int cv = chart_index - 1;
    PolyBuilder b;
    for (const auto& [e, c] : p.terms()) {
        std::array<Rat, kNumVars> ne;
        for (int v = 0; v < kNumVars; ++v) ne[v] = p.exponent(e, v);
        ne[cv] = wt_sigma_monomial(e, p.denom(), sigma);
        b.add_term(c, ne);
    }
    return b.build();
}

ChartFactorization factor_out_chartvar(const SparsePoly& p, int chart_index) {
    if (chart_index < 1 || chart_index > kNumVars)
        throw NashError(ErrorKind::semantic, "chart index must be 1..4");
    if (p.is_zero())
        throw NashError(ErrorKind::semantic, "cannot factor the zero polynomial");
    int cv = chart_index - 1;
    long long min_scaled = 0;
    bool have = false;
    for (const auto& [e, c] : p.terms()) {
        if (!have || e[cv] < min_scaled) {
            min_scaled = e[cv];
            have = true;
        }
    }
    PolyBuilder b;
    for (const auto& [e, c] : p.terms()) {
        std::array<Rat, kNumVars> ne;
        for (int v = 0; v < kNumVars; ++v) ne[v] = p.exponent(e, v);
        ne[cv] -= Rat(min_scaled) / Rat(p.denom());
        b.add_term(c, ne);
    }
    return {Rat(min_scaled) / Rat(p.denom()), b.build()};
}

std::string SparsePoly::str() const {
    if (terms_.empty()) return "0";
    std::vector<ExpVec> order;
    order.reserve(terms_.size());
    for (const auto& [e, c] : terms_) order.push_back(e);
    std::sort(order.begin(), order.end(), [](const ExpVec& a, const ExpVec& b) {
        long long da = a[0] + a[1] + a[2] + a[3];
        long long db = b[0] + b[1] + b[2] + b[3];
        if (da != db) return da < db;
        return a > b;  // x before y before z before u
    });
    std::string s;
    for (const ExpVec& e : order) {
        const Rat& c = terms_.at(e);
        Rat ac = c < 0 ? Rat(-c) : c;
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        std::string mono = monomial_str(*this, e);
        if (mono.empty()) {
            s += rat_str(ac);
        } else {
            if (ac != 1) s += rat_str(ac) + "*";
            s += mono;
        }
    }
    return s;
}

// --- binary forms -----------------------------------------------------------

long long tau0(const SparsePoly& f) {
    if (f.is_zero()) throw NashError(ErrorKind::semantic, "tau0 of the zero polynomial");
    if (f.denom() != 1)
        throw NashError(ErrorKind::semantic, "tau0 requires integer exponents");
    long long best = -1;
    for (const auto& [e, c] : f.terms()) {
        if (e[kVarX] != 0 || e[kVarY] != 0)
            throw NashError(ErrorKind::semantic, "tau0 requires a polynomial in z,u only");
        long long d = e[kVarZ] + e[kVarU];
        if (best < 0 || d < best) best = d;
    }
    return best;
}

BinaryForm leading_form(const SparsePoly& f, long long t) {
    if (f.denom() != 1)
        throw NashError(ErrorKind::semantic, "leading form requires integer exponents");
    PolyBuilder b;
    for (const auto& [e, c] : f.terms()) {
        if (e[kVarZ] + e[kVarU] == t)
            b.add_term(c, {Rat(0), Rat(0), Rat(e[kVarZ]), Rat(e[kVarU])});
    }
    SparsePoly part = b.build();
    if (part.is_zero())
        throw NashError(ErrorKind::semantic, "no terms of the requested degree");
    return {part, t};
}

BinaryForm make_binary_form(const SparsePoly& p) {
    if (p.is_zero()) throw NashError(ErrorKind::semantic, "zero is not a binary form");
    if (p.denom() != 1)
        throw NashError(ErrorKind::semantic, "binary form requires integer exponents");
    long long d = -1;
    for (const auto& [e, c] : p.terms()) {
        if (e[kVarX] != 0 || e[kVarY] != 0)
            throw NashError(ErrorKind::semantic, "binary form must involve only z,u");
        long long t = e[kVarZ] + e[kVarU];
        if (d < 0)
            d = t;
        else if (t != d)
            throw NashError(ErrorKind::semantic, "binary form must be homogeneous");
    }
    return {p, d};
}

namespace {

// Dehomogenize F(z,u) at z = 1, as a univariate polynomial in u.
UniPoly dehomogenize(const BinaryForm& F) {
    std::vector<Rat> c(F.degree + 1, Rat(0));
    for (const auto& [e, coeff] : F.poly.terms()) c[e[kVarU]] = coeff;
    return UniPoly(c);
}

// z^(d - deg q) * q(u/z) * z^(deg q) as a SparsePoly; d >= deg q.
SparsePoly homogenize(const UniPoly& q, long long d) {
    PolyBuilder b;
    for (int j = 0; j <= q.degree(); ++j) {
        if (q.c[j] == 0) continue;
        b.add_term(q.c[j], {Rat(0), Rat(0), Rat(d - j), Rat(j)});
    }
    return b.build();
}

}  // namespace

BinaryFactorization factor_binary_form(const BinaryForm& F) {
    BinaryFactorization out;
    UniPoly g = dehomogenize(F);
    out.z_mult = static_cast<int>(F.degree) - g.degree();
    SquareFreeDecomposition sf = uni_squarefree(g);
    out.unit = sf.unit;
    for (const auto& [fi, mult] : sf.factors) {
        RationalRoots rr = uni_rational_roots(fi);
        for (const Rat& r : rr.roots) out.linear.push_back({r, mult});
        if (rr.cofactor.degree() >= 1) out.residual.push_back({rr.cofactor, mult});
    }
    return out;
}

SquareRootResult is_perfect_square(const BinaryForm& F) {
    if (F.degree % 2 != 0)
        throw NashError(ErrorKind::semantic, "perfect-square test requires even degree");
    SquareRootResult res;
    res.structure = factor_binary_form(F);
    const BinaryFactorization& s = res.structure;
    bool even = s.z_mult % 2 == 0;
    for (const auto& l : s.linear) even = even && l.mult % 2 == 0;
    for (const auto& r : s.residual) even = even && r.mult % 2 == 0;
    if (!even) {
        res.kind = SquareKind::not_square;
        return res;
    }
    std::optional<Rat> su = rat_sqrt(s.unit);
    if (!su) {
        res.kind = SquareKind::square_with_certificate;
        return res;
    }
    // Assemble the rational square root.
    UniPoly half = UniPoly::constant(Rat(1));
    for (const auto& l : s.linear) {
        UniPoly lin({-l.u_root, Rat(1)});
        for (int i = 0; i < l.mult / 2; ++i) half = uni_mul(half, lin);
    }
    for (const auto& r : s.residual)
        for (int i = 0; i < r.mult / 2; ++i) half = uni_mul(half, r.q);
    long long hd = F.degree / 2;
    SparsePoly root = poly_scale(homogenize(half, hd - s.z_mult / 2), *su);
    if (s.z_mult > 0) {
        SparsePoly zf = poly_pow(SparsePoly::variable(kVarZ), s.z_mult / 2);
        root = poly_mul(root, zf);
    }
    res.kind = SquareKind::rational_square;
    res.root = root;
    return res;
}

bool ideal_power_membership(const SparsePoly& f, long long k) {
    for (const auto& [e, c] : f.terms()) {
        Rat zu = f.exponent(e, kVarZ) + f.exponent(e, kVarU);
        if (zu < k) return false;
    }
    return true;
}

}  // namespace nashcert

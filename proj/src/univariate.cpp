#include "nashcert/univariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace nashcert {

UniPoly UniPoly::constant(const Rat& v) {
    UniPoly p;
    if (v != 0) p.c.push_back(v);
    return p;
}

UniPoly UniPoly::monomial(const Rat& coeff, int degree) {
    UniPoly p;
    if (coeff != 0) {
        p.c.assign(degree + 1, Rat(0));
        p.c.back() = coeff;
    }
    return p;
}

void UniPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat UniPoly::eval(const Rat& x) const {
    Rat v(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

UniPoly uni_add(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
    return uni_add(a, uni_scale(b, Rat(-1)));
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    UniPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

UniPoly uni_scale(const UniPoly& a, const Rat& s) {
    if (s == 0) return UniPoly();
    UniPoly r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

UniPoly uni_derivative(const UniPoly& a) {
    UniPoly r;
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = a.c[i] * Rat(static_cast<long>(i));
    r.trim();
    return r;
}

std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    UniPoly rem = a, quot;
    if (a.degree() >= b.degree()) quot.c.assign(a.degree() - b.degree() + 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int d = rem.degree() - b.degree();
        Rat f = rem.leading() / b.leading();
        quot.c[d] = f;
        for (size_t i = 0; i < b.c.size(); ++i) rem.c[i + d] -= f * b.c[i];
        rem.trim();
    }
    quot.trim();
    return {quot, rem};
}

UniPoly uni_monic(const UniPoly& a) {
    if (a.is_zero()) return a;
    return uni_scale(a, Rat(1) / a.leading());
}

UniPoly uni_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = uni_divmod(x, y).second;
        x = y;
        y = r;
    }
    return uni_monic(x);
}

SquareFreeDecomposition uni_squarefree(const UniPoly& a) {
    if (a.is_zero()) throw std::invalid_argument("square-free decomposition of zero");
    SquareFreeDecomposition out;
    out.unit = a.leading();
    UniPoly f = uni_monic(a);
    if (f.degree() == 0) return out;

    // Yun: peel off the square-free part of each multiplicity level.
    UniPoly fp = uni_derivative(f);
    UniPoly g = uni_gcd(f, fp);
    UniPoly w = uni_divmod(f, g).first;
    UniPoly y = uni_divmod(fp, g).first;
    UniPoly z = uni_sub(y, uni_derivative(w));
    int i = 1;
    while (!(w.degree() == 0)) {
        UniPoly fi = uni_gcd(w, z);
        if (fi.degree() > 0) out.factors.emplace_back(fi, i);
        w = uni_divmod(w, fi).first;
        y = uni_divmod(z, fi).first;
        z = uni_sub(y, uni_derivative(w));
        ++i;
    }
    return out;
}

RationalRoots uni_rational_roots(const UniPoly& a) {
    if (a.is_zero()) throw std::invalid_argument("rational roots of zero polynomial");
    RationalRoots out;
    UniPoly f = uni_monic(a);

    // Factor out x^k first.
    size_t low = 0;
    while (low < f.c.size() && f.c[low] == 0) ++low;
    if (low > 0) {
        out.roots.push_back(Rat(0));
        f.c.erase(f.c.begin(), f.c.begin() + low);
    }

    // Candidates p/q with p | a0, q | an over the integer-scaled polynomial.
    while (f.degree() >= 1) {
        Int scale(1);
        for (const auto& v : f.c) scale = lcm(scale, den(v));
        std::vector<Int> ic(f.c.size());
        for (size_t i = 0; i < f.c.size(); ++i) ic[i] = num(f.c[i] * Rat(scale));
        Int a0 = abs(ic.front()), an = abs(ic.back());

        auto divisors = [](const Int& n) {
            std::vector<Int> ds;
            for (Int d = 1; d * d <= n; ++d) {
                if (n % d == 0) {
                    ds.push_back(d);
                    if (d * d != n) ds.push_back(n / d);
                }
            }
            return ds;
        };

        bool found = false;
        for (const Int& p : divisors(a0)) {
            for (const Int& q : divisors(an)) {
                if (gcd(p, q) != 1) continue;
                for (int sign : {1, -1}) {
                    Rat cand = Rat(p * sign) / Rat(q);
                    if (f.eval(cand) == 0) {
                        out.roots.push_back(cand);
                        UniPoly lin({-cand, Rat(1)});
                        // Divide out the full multiplicity of this root.
                        while (!f.is_zero() && f.eval(cand) == 0 && f.degree() >= 1)
                            f = uni_divmod(f, lin).first;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.cofactor = uni_monic(f);
    return out;
}

std::string uni_str(const UniPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::string s;
    for (int d = a.degree(); d >= 0; --d) {
        const Rat& v = a.c[d];
        if (v == 0) continue;
        Rat av = v < 0 ? Rat(-v) : v;
        if (!s.empty())
            s += v < 0 ? " - " : " + ";
        else if (v < 0)
            s += "-";
        bool show_coeff = (av != 1) || d == 0;
        if (show_coeff) s += rat_str(av);
        if (d > 0) {
            if (show_coeff) s += "*";
            s += var;
            if (d > 1) s += "^" + std::to_string(d);
        }
    }
    return s;
}

}  // namespace nashcert

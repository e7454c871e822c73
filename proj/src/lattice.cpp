#include "nashcert/lattice.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nashcert/error.hpp"

namespace nashcert {

QuotientLattice::QuotientLattice(int rank, long long m, std::vector<long long> alpha)
    : rank_(rank), m_(m), alpha_(std::move(alpha)) {
    if (rank_ < 1) throw NashError(ErrorKind::semantic, "lattice rank must be positive");
    if (m_ < 1) throw NashError(ErrorKind::semantic, "lattice index m must be positive");
    if (static_cast<int>(alpha_.size()) != rank_)
        throw NashError(ErrorKind::semantic, "lattice generator has wrong dimension");
    for (long long& a : alpha_) a = euclid_mod(a, m_);
    std::vector<long long> r(rank_, 0);
    for (long long k = 0; k < m_; ++k) {
        residues_.push_back(r);
        for (int i = 0; i < rank_; ++i) r[i] = euclid_mod(r[i] + alpha_[i], m_);
    }
    std::sort(residues_.begin(), residues_.end());
    residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
}

QuotientLattice QuotientLattice::standard(int rank) {
    return QuotientLattice(rank, 1, std::vector<long long>(rank, 0));
}

bool QuotientLattice::contains(const std::vector<Rat>& p) const {
    if (static_cast<int>(p.size()) != rank_)
        throw NashError(ErrorKind::semantic, "dimension mismatch");
    std::vector<long long> res(rank_);
    for (int i = 0; i < rank_; ++i) {
        Rat s = p[i] * Rat(m_);
        if (!is_integer(s)) return false;
        res[i] = euclid_mod(static_cast<long long>(num(s) % Int(m_)), m_);
    }
    return std::binary_search(residues_.begin(), residues_.end(), res);
}

bool QuotientLattice::contains_scaled(const std::vector<long long>& s) const {
    std::vector<long long> res(rank_);
    for (int i = 0; i < rank_; ++i) res[i] = euclid_mod(s[i], m_);
    return std::binary_search(residues_.begin(), residues_.end(), res);
}

bool QuotientLattice::is_primitive(const std::vector<Rat>& p) const {
    if (!contains(p)) throw NashError(ErrorKind::semantic, "point is not in the lattice");
    Int g(0);
    for (int i = 0; i < rank_; ++i) g = gcd(g, num(p[i] * Rat(m_)));
    if (g == 0) throw NashError(ErrorKind::semantic, "primitivity of the zero point");
    long long bound = static_cast<long long>(g);
    for (long long k = 2; k <= bound; ++k) {
        if (bound % k != 0) continue;
        std::vector<Rat> q(rank_);
        for (int i = 0; i < rank_; ++i) q[i] = p[i] / Rat(k);
        if (contains(q)) return false;
    }
    return true;
}

std::string QuotientLattice::str() const {
    std::ostringstream os;
    os << "Z^" << rank_;
    if (m_ > 1) {
        os << " + Z*1/" << m_ << "(";
        for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << alpha_[i];
        os << ")";
    }
    return os.str();
}

bool QuotientLattice::operator==(const QuotientLattice& o) const {
    return rank_ == o.rank_ && m_ == o.m_ && residues_ == o.residues_;
}

bool lattice_contains(const QuotientLattice& L, const std::vector<Rat>& p) {
    return L.contains(p);
}

bool is_primitive(const QuotientLattice& L, const std::vector<Rat>& p) {
    return L.is_primitive(p);
}

bool same_coords(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    return a == b;
}

bool lattice_point_less(const LatticePoint& a, const LatticePoint& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.coords < b.coords;
}

// --- SimplicialCone ----------------------------------------------------------

SimplicialCone::SimplicialCone(QuotientLattice lattice, std::vector<std::vector<Rat>> generators)
    : lattice_(std::move(lattice)), gens_(std::move(generators)) {
    const int n = lattice_.rank();
    if (static_cast<int>(gens_.size()) != n)
        throw NashError(ErrorKind::semantic,
                        "unsupported cone: need exactly rank-many generators "
                        "(simplicial, full-dimensional)");
    for (const auto& g : gens_) {
        if (!lattice_.contains(g))
            throw NashError(ErrorKind::semantic, "cone generator is not a lattice point");
        if (!lattice_.is_primitive(g))
            throw NashError(ErrorKind::semantic, "cone generator is not primitive");
    }
    // Invert the generator matrix (columns = generators) by Gauss-Jordan.
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (int r = 0; r < n; ++r) {
        for (int cidx = 0; cidx < n; ++cidx) a[r][cidx] = gens_[cidx][r];
        a[r][n + r] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            throw NashError(ErrorKind::semantic,
                            "unsupported cone: generators are linearly dependent");
        std::swap(a[col], a[piv]);
        Rat d = a[col][col];
        for (int cidx = 0; cidx < 2 * n; ++cidx) a[col][cidx] /= d;
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (int cidx = 0; cidx < 2 * n; ++cidx) a[r][cidx] -= f * a[col][cidx];
        }
    }
    vinv_.assign(n, std::vector<Rat>(n));
    for (int r = 0; r < n; ++r)
        for (int cidx = 0; cidx < n; ++cidx) vinv_[r][cidx] = a[r][n + cidx];
}

SimplicialCone SimplicialCone::cyclic_quotient(long long m, std::vector<long long> alpha) {
    int n = static_cast<int>(alpha.size());
    QuotientLattice L(n, m, std::move(alpha));
    std::vector<std::vector<Rat>> gens(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) gens[i][i] = 1;
    return SimplicialCone(std::move(L), std::move(gens));
}

std::vector<Rat> SimplicialCone::barycentric(const std::vector<Rat>& p) const {
    const int n = rank();
    if (static_cast<int>(p.size()) != n)
        throw NashError(ErrorKind::semantic, "dimension mismatch");
    std::vector<Rat> t(n, Rat(0));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) t[r] += vinv_[r][c] * p[c];
    return t;
}

bool SimplicialCone::is_generator(const std::vector<Rat>& p) const {
    for (const auto& g : gens_)
        if (g == p) return true;
    return false;
}

DualVector gorenstein_dual(const SimplicialCone& c) {
    // <m, v_i> = 1 for all i  <=>  m = (V^{-1})^T * (1,...,1). barycentric(e_j)
    // gives column j of V^{-1}; the dual is assembled from column sums.
    const int n = c.rank();
    DualVector m(n, Rat(0));
    for (int j = 0; j < n; ++j) {
        std::vector<Rat> ej(n, Rat(0));
        ej[j] = 1;
        std::vector<Rat> col = c.barycentric(ej);
        for (int i = 0; i < n; ++i) m[j] += col[i];
    }
    for (const auto& g : c.generators()) {
        Rat p = pairing(m, g);
        if (p != 1)
            throw NashError(ErrorKind::internal, "dual vector does not pair to 1");
    }
    return m;
}

Rat pairing(const DualVector& m, const std::vector<Rat>& p) {
    if (m.size() != p.size()) throw NashError(ErrorKind::semantic, "dimension mismatch");
    Rat s(0);
    for (size_t i = 0; i < m.size(); ++i) s += m[i] * p[i];
    return s;
}

// --- enumeration kernel -------------------------------------------------------

namespace {

struct Grid {
    // Integer grid of candidates s (coordinates scaled by m), one closed
    // interval per ambient coordinate.
    std::vector<long long> lo, count;
    long long total = 1;
};

Grid candidate_grid(const SimplicialCone& c, const std::vector<AxisRange>& ranges) {
    const int n = c.rank();
    const long long m = c.lattice().index_m();
    Grid g;
    g.lo.resize(n);
    g.count.resize(n);
    for (int coord = 0; coord < n; ++coord) {
        Rat lo(0), hi(0);
        for (int i = 0; i < n; ++i) {
            const Rat& v = c.generators()[i][coord];
            Rat a = ranges[i].lo * v, b = ranges[i].hi * v;
            lo += a < b ? a : b;
            hi += a < b ? b : a;
        }
        Int slo = rat_ceil(lo * Rat(m)), shi = rat_floor(hi * Rat(m));
        if (shi < slo) {
            g.total = 0;
            return g;
        }
        g.lo[coord] = static_cast<long long>(slo);
        g.count[coord] = static_cast<long long>(shi - slo) + 1;
        if (g.total > 2000000000LL / std::max(g.count[coord], 1LL))
            throw NashError(ErrorKind::incomplete, "enumeration box too large");
        g.total *= g.count[coord];
    }
    return g;
}

// Decode flat index -> scaled coordinates, test lattice membership and the
// barycentric ranges, and emit the point. The integer residue test runs
// first; rational work only happens for actual lattice points.
bool test_candidate(const SimplicialCone& c, const std::vector<AxisRange>& ranges,
                    const Grid& g, long long flat, LatticePoint& out) {
    const int n = c.rank();
    const long long m = c.lattice().index_m();
    std::vector<long long> s(n);
    {
        long long rem = flat;
        for (int coord = n - 1; coord >= 0; --coord) {
            s[coord] = g.lo[coord] + rem % g.count[coord];
            rem /= g.count[coord];
        }
    }
    if (!c.lattice().contains_scaled(s)) return false;
    std::vector<Rat> p(n);
    for (int coord = 0; coord < n; ++coord) p[coord] = Rat(s[coord]) / Rat(m);
    std::vector<Rat> t = c.barycentric(p);
    Rat level(0);
    for (int i = 0; i < n; ++i) {
        const AxisRange& r = ranges[i];
        if (t[i] < r.lo || (r.lo_strict && t[i] == r.lo)) return false;
        if (t[i] > r.hi || (r.hi_strict && t[i] == r.hi)) return false;
        level += t[i];
    }
    out.coords = std::move(p);
    out.bary = std::move(t);
    out.level = level;
    return true;
}

}  // namespace

std::vector<LatticePoint> enumerate_box_serial(const SimplicialCone& c,
                                               const std::vector<AxisRange>& ranges) {
    Grid g = candidate_grid(c, ranges);
    std::vector<LatticePoint> pts;
    LatticePoint cand;
    for (long long flat = 0; flat < g.total; ++flat)
        if (test_candidate(c, ranges, g, flat, cand)) pts.push_back(cand);
    std::sort(pts.begin(), pts.end(), lattice_point_less);
    return pts;
}

std::vector<LatticePoint> enumerate_box_parallel(const SimplicialCone& c,
                                                 const std::vector<AxisRange>& ranges) {
    Grid g = candidate_grid(c, ranges);
    std::vector<std::vector<LatticePoint>> buckets;
#ifdef _OPENMP
    int nthreads = omp_get_max_threads();
    buckets.resize(nthreads);
#pragma omp parallel
    {
        int tid = omp_get_thread_num();
        LatticePoint cand;
#pragma omp for schedule(static)
        for (long long flat = 0; flat < g.total; ++flat)
            if (test_candidate(c, ranges, g, flat, cand)) buckets[tid].push_back(cand);
    }
#else
    buckets.resize(1);
    LatticePoint cand;
    for (long long flat = 0; flat < g.total; ++flat)
        if (test_candidate(c, ranges, g, flat, cand)) buckets[0].push_back(cand);
#endif
    std::vector<LatticePoint> pts;
    for (auto& b : buckets)
        for (auto& p : b) pts.push_back(std::move(p));
    std::sort(pts.begin(), pts.end(), lattice_point_less);
    return pts;
}

std::vector<LatticePoint> enumerate_box(const SimplicialCone& c,
                                        const std::vector<AxisRange>& ranges,
                                        Exec policy) {
    if (static_cast<int>(ranges.size()) != c.rank())
        throw NashError(ErrorKind::semantic, "one axis range per generator required");
    switch (policy) {
        case Exec::serial: return enumerate_box_serial(c, ranges);
        case Exec::parallel: return enumerate_box_parallel(c, ranges);
        case Exec::automatic: break;
    }
    Grid g = candidate_grid(c, ranges);
    return g.total >= 4096 ? enumerate_box_parallel(c, ranges)
                           : enumerate_box_serial(c, ranges);
}

// --- terminality, S_sigma, minimality ------------------------------------------

TerminalityResult is_terminal(const SimplicialCone& c, Exec policy) {
    gorenstein_dual(c);  // raises on unsupported cones
    const int n = c.rank();
    // Points of level <= 1 satisfy 0 <= t_i <= 1, so the unit box is enough.
    std::vector<AxisRange> ranges(n, AxisRange{Rat(0), Rat(1)});
    std::vector<Rat> zero(n, Rat(0));
    for (const LatticePoint& p : enumerate_box(c, ranges, policy)) {
        if (p.level > 1) continue;
        if (same_coords(p.coords, zero) || c.is_generator(p.coords)) continue;
        return {false, p};
    }
    return {true, std::nullopt};
}

Rat discrepancy(const SimplicialCone& c, const std::vector<Rat>& w) {
    if (!c.lattice().contains(w))
        throw NashError(ErrorKind::semantic, "point is not in the lattice");
    if (!c.lattice().is_primitive(w))
        throw NashError(ErrorKind::semantic, "point is not primitive");
    std::vector<Rat> t = c.barycentric(w);
    for (const Rat& ti : t)
        if (ti <= 0)
            throw NashError(ErrorKind::semantic,
                            "point is not in the interior of the cone");
    return pairing(gorenstein_dual(c), w) - 1;
}

bool face_is_singular(const SimplicialCone& c, const std::vector<int>& face, Exec policy) {
    if (face.empty()) return false;
    const int n = c.rank();
    std::vector<AxisRange> ranges(n, AxisRange{Rat(0), Rat(0)});
    for (int i : face) ranges[i] = AxisRange{Rat(0), Rat(1), false, true};  // [0,1)
    std::vector<Rat> zero(n, Rat(0));
    for (const LatticePoint& p : enumerate_box(c, ranges, policy))
        if (!same_coords(p.coords, zero)) return true;
    return false;
}

std::vector<LatticePoint> enumerate_S(const SimplicialCone& c, const Rat& bound,
                                      Exec policy) {
    const int n = c.rank();
    std::vector<LatticePoint> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> face;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) face.push_back(i);
        if (!face_is_singular(c, face, policy)) continue;
        // Relative interior of the face: t_i > 0 on the face, t_j = 0 off it.
        // Each t_i is at most the level, so [0, bound] per axis is complete.
        std::vector<AxisRange> ranges(n, AxisRange{Rat(0), Rat(0)});
        for (int i : face) ranges[i] = AxisRange{Rat(0), bound, true, false};
        for (LatticePoint& p : enumerate_box(c, ranges, policy))
            if (p.level <= bound) out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), lattice_point_less);
    return out;
}

namespace {

// u <= w in the cone order: w - u has non-negative barycentric coordinates.
// (Both points are lattice points, and the lattice is closed under
// subtraction, so no extra membership test is needed.)
bool dominates(const LatticePoint& u, const LatticePoint& w) {
    for (size_t i = 0; i < u.bary.size(); ++i)
        if (u.bary[i] > w.bary[i]) return false;
    return true;
}

}  // namespace

bool is_minimal_in(const std::vector<LatticePoint>& S, const LatticePoint& w) {
    for (const LatticePoint& u : S) {
        if (u.level >= w.level) break;  // S is sorted; a strict dominator is lower
        if (dominates(u, w)) return false;
    }
    return true;
}

bool is_minimal(const SimplicialCone& c, const std::vector<Rat>& w, Exec policy) {
    if (!c.lattice().contains(w))
        throw NashError(ErrorKind::semantic, "point is not in the lattice");
    LatticePoint wp;
    wp.coords = w;
    wp.bary = c.barycentric(w);
    wp.level = Rat(0);
    std::vector<int> face;
    for (size_t i = 0; i < wp.bary.size(); ++i) {
        if (wp.bary[i] < 0)
            throw NashError(ErrorKind::semantic, "point is not in the cone");
        if (wp.bary[i] > 0) face.push_back(static_cast<int>(i));
        wp.level += wp.bary[i];
    }
    if (!face_is_singular(c, face, policy))
        throw NashError(ErrorKind::semantic,
                        "point is not in S_sigma (its face is smooth)");
    return is_minimal_in(enumerate_S(c, wp.level, policy), wp);
}

NashResult nash_valuations(const SimplicialCone& c, const Rat& bound,
                           long long box_min, Exec policy) {
    NashResult res;
    res.cone_terminal = is_terminal(c, policy).terminal;

    Rat scan = bound;
    if (Rat(box_min) > scan) scan = Rat(box_min);
    std::vector<LatticePoint> S = enumerate_S(c, scan, policy);

    std::vector<LatticePoint> minimal;
    for (const LatticePoint& w : S)
        if (w.level <= bound && is_minimal_in(S, w)) minimal.push_back(w);

    // Completeness check: every S point one level beyond the bound must be
    // dominated by (or equal to) a reported minimal element; otherwise some
    // minimal element lies outside the search window.
    res.checked_level = scan + 1;
    std::vector<LatticePoint> Sext = enumerate_S(c, res.checked_level, policy);
    res.complete = true;
    for (const LatticePoint& u : Sext) {
        bool covered = false;
        for (const LatticePoint& w : minimal)
            if (dominates(w, u)) {
                covered = true;
                break;
            }
        if (!covered) {
            res.complete = false;
            res.undominated.push_back(u);
        }
    }
    res.box_extent = static_cast<long long>(rat_ceil(res.checked_level));

    for (LatticePoint& w : minimal) {
        Rat disc = w.level - 1;
        res.valuations.push_back({std::move(w), disc});
    }
    return res;
}

std::vector<LatticePoint> low_discrepancy_divisors(const SimplicialCone& c, Exec policy) {
    TerminalityResult t = is_terminal(c, policy);
    if (!t.terminal)
        throw NashError(ErrorKind::semantic, "cone is not terminal");
    const int n = c.rank();
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    if (!face_is_singular(c, all, policy)) return {};  // smooth cone

    std::vector<AxisRange> ranges(n, AxisRange{Rat(0), Rat(2), true, false});
    std::vector<LatticePoint> S2 = enumerate_S(c, Rat(2), policy);
    std::vector<LatticePoint> out;
    for (LatticePoint& p : enumerate_box(c, ranges, policy)) {
        if (p.level > 2) continue;
        if (!c.lattice().is_primitive(p.coords)) continue;
        if (!is_minimal_in(S2, p))
            throw NashError(ErrorKind::internal,
                            "low-discrepancy point failed the minimality check");
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), lattice_point_less);
    return out;
}

}  // namespace nashcert

#ifndef NASHCERT_LATTICE_HPP
#define NASHCERT_LATTICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "nashcert/rational.hpp"

namespace nashcert {

// The lattice Z^n + Z*(1/m)(alpha_1..alpha_n). Membership and primitivity
// are decided exactly.
class QuotientLattice {
public:
    QuotientLattice(int rank, long long m, std::vector<long long> alpha);

    static QuotientLattice standard(int rank);

    int rank() const { return rank_; }
    long long index_m() const { return m_; }
    const std::vector<long long>& alpha() const { return alpha_; }

    // p in N-bar iff m*p is integral and its residue class mod Z^n lies in
    // the cyclic subgroup generated by (1/m)(alpha).
    bool contains(const std::vector<Rat>& p) const;

    // Same test for a point already scaled by m (s = m*p, integral).
    bool contains_scaled(const std::vector<long long>& s) const;

    // No lattice point equals p/k for any integer k >= 2. p must be a
    // nonzero lattice point.
    bool is_primitive(const std::vector<Rat>& p) const;

    std::string str() const;
    bool operator==(const QuotientLattice& o) const;

private:
    int rank_;
    long long m_;
    std::vector<long long> alpha_;                  // reduced mod m
    std::vector<std::vector<long long>> residues_;  // sorted distinct k*alpha mod m
};

// A lattice point together with its barycentric coordinates and level
// (pairing with the Q-Gorenstein dual vector) in a fixed cone.
struct LatticePoint {
    std::vector<Rat> coords;
    std::vector<Rat> bary;
    Rat level;
};

bool lattice_point_less(const LatticePoint& a, const LatticePoint& b);
bool same_coords(const std::vector<Rat>& a, const std::vector<Rat>& b);

using DualVector = std::vector<Rat>;

// Full-dimensional simplicial cone with primitive generators in a quotient
// lattice. Anything else is rejected as unsupported.
class SimplicialCone {
public:
    SimplicialCone(QuotientLattice lattice, std::vector<std::vector<Rat>> generators);

    // cone(e_1..e_n) over Z^n + Z*(1/m)(alpha): the cyclic quotient
    // singularity 1/m(alpha).
    static SimplicialCone cyclic_quotient(long long m, std::vector<long long> alpha);

    const QuotientLattice& lattice() const { return lattice_; }
    const std::vector<std::vector<Rat>>& generators() const { return gens_; }
    int rank() const { return lattice_.rank(); }

    // Coefficients t with p = sum t_i v_i.
    std::vector<Rat> barycentric(const std::vector<Rat>& p) const;

    bool is_generator(const std::vector<Rat>& p) const;

private:
    QuotientLattice lattice_;
    std::vector<std::vector<Rat>> gens_;  // gens_[i] = generator i
    std::vector<std::vector<Rat>> vinv_;  // inverse of the generator matrix
};

// --- box enumeration kernel --------------------------------------------------

// Constraint on one barycentric coordinate.
struct AxisRange {
    Rat lo, hi;
    bool lo_strict = false;
    bool hi_strict = false;
};

enum class Exec { automatic, serial, parallel };

// All lattice points p = sum t_i v_i with t_i in ranges[i], sorted by level
// then lexicographically on coordinates. The serial implementation is the
// reference; the parallel one must match it exactly.
std::vector<LatticePoint> enumerate_box(const SimplicialCone& c,
                                        const std::vector<AxisRange>& ranges,
                                        Exec policy = Exec::automatic);

std::vector<LatticePoint> enumerate_box_serial(const SimplicialCone& c,
                                               const std::vector<AxisRange>& ranges);
std::vector<LatticePoint> enumerate_box_parallel(const SimplicialCone& c,
                                                 const std::vector<AxisRange>& ranges);

// --- spec operations ----------------------------------------------------------

bool lattice_contains(const QuotientLattice& L, const std::vector<Rat>& p);
bool is_primitive(const QuotientLattice& L, const std::vector<Rat>& p);

// The unique rational solution of <m, v_i> = 1 over the generators.
DualVector gorenstein_dual(const SimplicialCone& c);

Rat pairing(const DualVector& m, const std::vector<Rat>& p);

struct TerminalityResult {
    bool terminal;
    std::optional<LatticePoint> witness;  // a violating point when not terminal
};

// Terminal iff the only lattice points of level <= 1 in the cone are 0 and
// the generators.
TerminalityResult is_terminal(const SimplicialCone& c, Exec policy = Exec::automatic);

// <m_tau, w> - 1 for a primitive interior lattice point w.
Rat discrepancy(const SimplicialCone& c, const std::vector<Rat>& w);

// True iff the face spanned by the given generator subset is singular
// (its lattice points are not generated by the face generators alone).
bool face_is_singular(const SimplicialCone& c, const std::vector<int>& face,
                      Exec policy = Exec::automatic);

// S_sigma: lattice points in relative interiors of singular faces, filtered
// to level <= bound. Complete: every such point has all barycentric
// coordinates bounded by its level.
std::vector<LatticePoint> enumerate_S(const SimplicialCone& c, const Rat& bound,
                                      Exec policy = Exec::automatic);

// w minimal in S_sigma: no u in S_sigma, u != w, with w - u in the cone.
// The bulk variant reuses a precomputed S list (must cover level <= level(w)).
bool is_minimal(const SimplicialCone& c, const std::vector<Rat>& w,
                Exec policy = Exec::automatic);
bool is_minimal_in(const std::vector<LatticePoint>& S, const LatticePoint& w);

struct NashValuation {
    LatticePoint point;
    Rat discrepancy;
};

struct NashResult {
    std::vector<NashValuation> valuations;
    bool cone_terminal = true;       // false => result carries a warning
    bool complete = false;           // completeness check passed
    Rat checked_level{0};            // window the check scanned (bound + 1)
    long long box_extent = 0;        // box K actually scanned
    std::vector<LatticePoint> undominated;  // witnesses when incomplete
};

// Minimal elements of S_sigma with level <= bound, each annotated with its
// discrepancy. box_min lets callers widen the scan (NASHCERT_BOX_BOUND).
NashResult nash_valuations(const SimplicialCone& c, const Rat& bound,
                           long long box_min = 1, Exec policy = Exec::automatic);

// Primitive interior points of level <= 2 (each is checked to be minimal;
// a failure would be an engine bug and raises an internal error).
std::vector<LatticePoint> low_discrepancy_divisors(const SimplicialCone& c,
                                                   Exec policy = Exec::automatic);

}  // namespace nashcert

#endif

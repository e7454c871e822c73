#ifndef NASHCERT_DSL_HPP
#define NASHCERT_DSL_HPP

#include <optional>
#include <string>
#include <vector>

#include "nashcert/blowup.hpp"
#include "nashcert/lattice.hpp"
#include "nashcert/polyring.hpp"

namespace nashcert {

// A parsed .sing file. Parsing also checks that the equation is
// semi-invariant under the action (a semantic error otherwise).
struct SingularityFile {
    std::string name;
    SparsePoly equation;
    GroupAction action;
    std::optional<WeightSigma> weight;
    std::vector<std::string> commands;

    bool operator==(const SingularityFile& o) const;
};

SingularityFile parse_singularity(const std::string& text,
                                  const std::string& filename = "<input>");

// Canonical rendering; parse(print(s)) is structurally equal to s.
std::string print_singularity(const SingularityFile& s);

Hyperquotient to_hyperquotient(const SingularityFile& s);

// Stand-alone parsers for CLI arguments.
SparsePoly parse_polynomial(const std::string& text);
WeightSigma parse_weight(const std::string& text);            // 1/m(a,b,c,d)
QuotientLattice parse_lattice(const std::string& text);       // 1/m(a1,...,an)
std::vector<std::vector<Rat>> parse_cone_generators(const std::string& text, int rank);

}  // namespace nashcert

#endif

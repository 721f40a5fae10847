#pragma once

#include "esp/extraspecial.hpp"
#include "esp/report.hpp"

namespace esp {

// Subgroup of an extraspecial group, stored as its full element set
// (sorted lexicographically on (s, r, t)). Desk-scale orders make the
// explicit set the most trustworthy representation.
struct Subgroup {
    GroupSpec spec;
    std::vector<Element> generators;
    std::vector<Element> elements;  // sorted, closed under mul and inv

    std::size_t order() const { return elements.size(); }
    bool contains(const Element& g) const;
    bool operator==(const Subgroup& o) const { return spec == o.spec && elements == o.elements; }
};

// Smallest subgroup containing the generators, by breadth-first
// product saturation.
Subgroup closure(const GroupSpec& spec, std::vector<Element> generators);

Subgroup trivial_subgroup(const GroupSpec& spec);
Subgroup full_group(const GroupSpec& spec);
// Z = <C>.
Subgroup center_subgroup(const GroupSpec& spec);

Subgroup center(const Subgroup& s);
Subgroup derived_subgroup(const Subgroup& s);
// Frattini subgroup by the p-group formula: closure of commutators and
// p-th powers.
Subgroup frattini(const Subgroup& s);

// Subgroup generated by all elements of order dividing p.
Subgroup omega1(const GroupSpec& spec);
// Y = Z(Omega_1(P)): equals Z except in the PMinus family, where it is
// <B_1, C>, elementary abelian of rank 2.
Subgroup y_subgroup(const GroupSpec& spec);

// C_P(g), by exhaustive commutation test over P.
Subgroup centralizer_in_p(const GroupSpec& spec, const Element& g);

bool is_elementary_abelian(const Subgroup& s);
bool is_abelian(const Subgroup& s);
// Maximal means index p in the ambient extraspecial group.
bool is_maximal(const Subgroup& s);

// All maximal subgroups: preimages of the hyperplanes of V, in a
// deterministic order (lex order of normalized hyperplane normals).
std::vector<Subgroup> maximal_subgroups(const GroupSpec& spec);

Subgroup intersect(const Subgroup& a, const Subgroup& b);

// Exhaustive confirmation that Z(P) = P' = Phi(P) = <C> of order p.
CheckList verify_extraspecial(const GroupSpec& spec);

// For every order-p element g of P, checks Phi(C_P(g)) = Phi(P). The
// three exceptional specs (TwoPlus/PPlus/PMinus at n = 1) are instead
// checked to fail with witness g = B_1, whose centralizer is abelian.
CheckList verify_centralizer_frattini(const GroupSpec& spec);

} // namespace esp

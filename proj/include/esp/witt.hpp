#pragma once

#include <map>
#include <utility>

#include "esp/subgroups.hpp"

namespace esp {

// Isomorphism between two subgroups of P, fixing Z pointwise. Eagerly
// validated at construction: the generator images must induce a
// well-defined bijective homomorphism, checked element-wise over the
// whole (desk-scale) domain.
struct PartialIso {
    GroupSpec spec;
    Subgroup domain;    // H, contains Z
    Subgroup codomain;  // K, contains Z
    std::vector<Element> generator_images;  // aligned with domain.generators
    std::vector<Element> image_by_index;    // aligned with domain.elements

    const Element& apply(const Element& h) const;

    static PartialIso from_generator_images(const GroupSpec& spec, std::vector<Element> gens,
                                            std::vector<Element> images);
    static PartialIso identity_on(const GroupSpec& spec, const Subgroup& h);
};

// Z-fixing automorphism, stored as generator images in the order
// A_1..A_n, B_1..B_n. apply() evaluates the canonical word.
struct Automorphism {
    GroupSpec spec;
    std::vector<Element> images;

    const Element& image_a(std::size_t i) const { return images.at(i - 1); }
    const Element& image_b(std::size_t i) const { return images.at(spec.n + i - 1); }
    Element apply(const Element& g) const;
    // Matrix of the induced map on V (columns: images of the
    // B-directions, then of the A-directions).
    FpMat psi_matrix() const;
};

bool is_automorphism(const GroupSpec& spec, const std::vector<Element>& images);
Automorphism make_automorphism(const GroupSpec& spec, std::vector<Element> images);

Automorphism identity_automorphism(const GroupSpec& spec);
// g -> x^-1 g x.
Automorphism inner_automorphism(const GroupSpec& spec, const Element& x);
// (outer o inner)(g) = outer(inner(g)).
Automorphism compose(const Automorphism& outer, const Automorphism& inner);
Automorphism invert(const Automorphism& alpha);
Automorphism compose_power(const Automorphism& alpha, std::uint64_t k);
PartialIso restrict_automorphism(const Automorphism& alpha, const Subgroup& h);

unsigned automorphism_order(const Automorphism& alpha);

// Form-preserving linear map between subspaces of V, as parallel
// bases. The matching forms are re-verified by every consumer.
struct PartialIsometry {
    std::vector<FpVec> domain_basis;
    std::vector<FpVec> image_basis;
};

// The map U -> W induced on psi-images by a valid subgroup
// isomorphism. Basis elements are chosen deterministically (first
// span-extending elements of H in canonical order).
PartialIsometry restrict_to_v(const PartialIso& phi);

// Lemma-2 prestep, family PMinus with H meeting Y only in Z: extends
// phi to <H, B_1> -> <K, B_1> with B_1 -> B_1. The needed kernel
// condition (h^-1 phi(h) killed by lambda) is asserted, not assumed.
PartialIso fix_b1_prestep(const PartialIso& phi);

// Witt extension for the alternating form: completes rho to a full
// isometry M of f (M^T gram M = gram, M agreeing with rho on its
// domain). Hyperbolic completion: first repair the radical of f|_U by
// paired partner vectors on both sides, then match symplectic bases of
// the orthogonal complements.
FpMat extend_isometry_symplectic(const PartialIsometry& rho, const SymplecticForm& f);

// Witt extension for a quadratic form (p = 2): extends one basis
// vector at a time, choosing the lexicographically first candidate
// compatible with f-values and Q-value; backtracks if a branch dies.
FpMat extend_isometry_quadratic(const PartialIsometry& rho, const QuadraticForm& q);

// Lifts a form-preserving matrix to the automorphism whose generator
// images have C-exponent zero, then validates every defining relation.
Automorphism lift_isometry(const GroupSpec& spec, const FpMat& m);

// Composes alpha with an inner automorphism so the result agrees with
// phi on all of H. Requires alpha and phi to induce the same map on
// psi-images.
Automorphism inner_correction(const Automorphism& alpha, const PartialIso& phi);

// The full constructive extension theorem: from a Z-fixing subgroup
// isomorphism (with the Y-hypotheses in family PMinus) to a full
// automorphism restricting to phi exactly.
Automorphism extend_isomorphism(const PartialIso& phi);

// Seed-deterministic Z-fixing automorphism: random isometry by
// randomized basis completion, composed with a random inner
// automorphism. In family PMinus the isometry fixes the B_1-direction,
// which loses no generality.
Automorphism random_automorphism(const GroupSpec& spec, std::uint64_t seed);

// First (by deterministic seed scan) automorphism of order coprime to
// p and > 1, obtained by stripping the p-part of a random
// automorphism's order. Returns the automorphism and its order q.
std::optional<std::pair<Automorphism, unsigned>> find_pprime_automorphism(
    const GroupSpec& spec, std::uint64_t seed_limit = 64);

} // namespace esp

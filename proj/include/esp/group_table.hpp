#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "esp/poly.hpp"
#include "esp/report.hpp"
#include "esp/subgroups.hpp"
#include "esp/witt.hpp"

namespace esp {

// Generating set of a finite matrix group over F_p.
struct MatrixGroupInput {
    unsigned p = 2;
    std::size_t dim = 1;
    std::vector<FpMat> generators;

    // Parses {"p": int, "dim": int, "generators": [[row-major ints]]};
    // entries are reduced mod p on load.
    static MatrixGroupInput from_json_text(const std::string& text);
};

// Standard generators of GL_3(F_p): two elementary transvections, a
// 3-cycle coordinate permutation, and a determinant-spreading
// diagonal matrix.
MatrixGroupInput gl3_input(unsigned p);

// Sorted, duplicate-free set of element indices of one GroupTable.
using IndexSet = std::vector<std::size_t>;

// Immutable enumerated finite group. Elements are indexed by their
// canonical code in ascending order, so two enumerations of the same
// group agree index-by-index regardless of generator order. Matrix
// groups use the row-major entry vector as the code and multiply
// through the stored matrices; pair-encoded groups (semidirect
// products) always carry a full multiplication table.
struct GroupTable {
    unsigned p = 2;
    std::size_t dim = 0;                       // matrix dimension; 0 when pair-encoded
    std::vector<std::vector<unsigned>> codes;  // ascending; position in this list = index
    std::vector<FpMat> matrices;               // parallel to codes; empty when pair-encoded
    std::vector<std::uint32_t> product;        // row-major |G|x|G| table when built
    std::vector<std::uint32_t> inverse_of;
    std::size_t identity = 0;
    std::map<std::vector<unsigned>, std::size_t> position;

    std::size_t order() const { return codes.size(); }
    std::size_t mul(std::size_t a, std::size_t b) const;
    std::size_t inv(std::size_t a) const { return inverse_of.at(a); }
    // x^g = g^-1 x g, the conjugation convention used throughout.
    std::size_t conj(std::size_t x, std::size_t g) const;
    std::size_t element_order(std::size_t a) const;
    std::size_t index_of(const FpMat& m) const;  // matrix-backed tables only
    std::string code_string(std::size_t a) const;
};

// Breadth-first closure of the generators under multiplication.
// Throws once more than `cap` distinct elements appear, naming the
// cap.
GroupTable enumerate_group(const MatrixGroupInput& input, std::size_t cap = 1'000'000);

// Injective homomorphism from an extraspecial group into a
// GroupTable, stored rank-by-rank.
struct EmbeddedGroup {
    GroupSpec spec;
    std::vector<std::size_t> index_of_rank;  // element rank -> table index
    IndexSet image;                          // whole embedded subgroup

    std::size_t index_of(const Element& g) const;
    IndexSet image_of(const Subgroup& h) const;
};

// Unitriangular embedding into an enumerated GL_3(F_p): A_1 = I+E_12,
// B_1 = I+E_23, C = I+E_13. The image is the full unitriangular
// group, a Sylow p-subgroup; the map is checked to be an injective
// homomorphism on every pair.
EmbeddedGroup embed_extraspecial_gl3(const GroupTable& gl3);

// Subgroup generated by `seed` inside the table.
IndexSet closure_indices(const GroupTable& g, const IndexSet& seed);

// Sylow p-subgroup for the given prime: grow a p-subgroup (the hint,
// or the first element of p-power order) through normalizers until
// its order is the exact p-part of |G|. Returns {identity} when the
// prime does not divide |G|.
IndexSet sylow_subgroup(const GroupTable& g, unsigned prime, const IndexSet* hint = nullptr);

// Exhaustive-scan normalizer and centralizer of a subgroup, and
// centralizer of a single element.
IndexSet normalizer(const GroupTable& g, const IndexSet& s);
IndexSet centralizer(const GroupTable& g, const IndexSet& s);
IndexSet centralizer_of_element(const GroupTable& g, std::size_t x);

// The double coset (s) rep (s) of one representative.
IndexSet double_coset_of(const GroupTable& g, const IndexSet& s, std::size_t rep);

// Minimal-index representatives of the S-S double cosets sweeping the
// whole group, or only `ambient` (which must be a subgroup containing
// S) when given. The identity coset comes first.
std::vector<std::size_t> double_coset_reps(const GroupTable& g, const IndexSet& s,
                                           const IndexSet* ambient = nullptr);

// S intersected with S^x = x^-1 S x.
IndexSet intersect_conjugate(const GroupTable& g, const IndexSet& s, std::size_t x);

// {a*b : a in as, b in bs} as a sorted set.
IndexSet product_set(const GroupTable& g, const IndexSet& as, const IndexSet& bs);

// Permutation of element ranks induced by a centre-fixing
// automorphism.
std::vector<std::size_t> rank_permutation_of(const Automorphism& alpha);

// Rank permutation of the automorphism determined by images of
// A_1..A_n, B_1..B_n; unlike the isometry pipeline the centre may
// move (the image of C is forced by the commutator relation). Throws
// when the images do not define a bijective homomorphism.
std::vector<std::size_t> automorphism_from_images(const GroupSpec& spec,
                                                  const std::vector<Element>& a_images,
                                                  const std::vector<Element>& b_images);

// P x| <alpha> as pairs (g, alpha^k) with twisted multiplication;
// `twist` is the index of (1, alpha).
struct SemidirectProduct {
    GroupTable table;
    EmbeddedGroup p_image;
    std::size_t twist = 0;
};

// Requires alpha to be an automorphism permutation of exact order q
// with q coprime to p. The embedded copy of the group is normal with
// cyclic quotient of order q.
SemidirectProduct semidirect_with_permutation(const GroupSpec& spec,
                                              const std::vector<std::size_t>& alpha, unsigned q);
SemidirectProduct semidirect_with_automorphism(const GroupSpec& spec, const Automorphism& alpha,
                                               unsigned q);

// For every double-coset representative g with Z <= P n P^g: checks
// Z^g = Z and g in N_G(P) * C_G(Z). The supporting hypothesis — every
// order-p centralizer in P has Frattini subgroup Z — is itself
// checked first; when it fails, conclusion failures are recorded with
// hypothesis-violated status instead of fail, keeping the exceptional
// groups observable without flagging the run.
Report verify_lemma_z(const GroupTable& g, const EmbeddedGroup& p_emb);

// Odd exponent-p^2 families only. For every double-coset
// representative g in C_G(Z) with Y <= P n P^g: checks Y^g = Y, the
// factorization through (C_G(Z) n N_G(P)) times the trivial-on-Y/Z
// stabilizer, and that P^g has a unique exponent-p maximal subgroup
// whose centre is Y^g.
Report verify_lemma_y(const GroupTable& g, const EmbeddedGroup& p_emb);

// For each table element normalizing F = <f_basis>: computes the
// linear action of conjugation on F in the given basis and compares
// `cls` with its pullback, reporting every element that moves the
// class (a nonempty list certifies the class is not stable).
// Elements fusing F into the embedded subgroup without normalizing F
// are counted but not compared. F must be elementary abelian with
// f_basis independent, and cls must live on exactly |f_basis|
// variables.
Report fusion_invariance_check(const GroupTable& g, const EmbeddedGroup& p_emb,
                               const std::vector<std::size_t>& f_basis, const GradedPoly& cls);

} // namespace esp

#pragma once

#include <cstdint>
#include <optional>

#include "esp/forms.hpp"

namespace esp {

// The four isomorphism types of extraspecial groups of order p^{1+2n}:
// central products of D8/Q8 for p = 2, exponent-p and exponent-p^2
// types for odd p.
enum class Family { TwoPlus, TwoMinus, PPlus, PMinus };

std::string family_code(Family f);              // "2+", "2-", "p+", "p-"
Family parse_family(const std::string& code);

struct GroupSpec {
    Family family;
    unsigned p;
    std::size_t n;

    GroupSpec(Family family_, unsigned p_, std::size_t n_);

    std::uint64_t order() const;
    std::size_t v_dim() const { return 2 * n; }
    // C-exponent contributed by A1^p (resp. B1^p).
    unsigned eps_a() const { return family == Family::TwoMinus || family == Family::PMinus; }
    unsigned eps_b() const { return family == Family::TwoMinus; }

    bool operator==(const GroupSpec& o) const {
        return family == o.family && p == o.p && n == o.n;
    }
    std::string to_string() const;
};

// Canonical exponent form B_1^{s_1}..B_n^{s_n} A_1^{r_1}..A_n^{r_n} C^t.
// The representation is unique per group element.
struct Element {
    FpVec s;
    FpVec r;
    unsigned t = 0;

    bool operator==(const Element& o) const { return s == o.s && r == o.r && t == o.t; }
    bool operator!=(const Element& o) const { return !(*this == o); }
    bool operator<(const Element& o) const {
        if (s != o.s) return s < o.s;
        if (r != o.r) return r < o.r;
        return t < o.t;
    }
};

Element identity(const GroupSpec& spec);
Element gen_a(const GroupSpec& spec, std::size_t i);  // A_i, 1-based
Element gen_b(const GroupSpec& spec, std::size_t i);  // B_i, 1-based
Element gen_c(const GroupSpec& spec);
Element make_element(const GroupSpec& spec, std::vector<long long> s, std::vector<long long> r,
                     long long t);

Element mul(const GroupSpec& spec, const Element& g, const Element& h);
Element inv(const GroupSpec& spec, const Element& g);
Element power(const GroupSpec& spec, const Element& g, long long k);
Element commutator(const GroupSpec& spec, const Element& g, const Element& h);
Element conjugate(const GroupSpec& spec, const Element& g, const Element& x);  // x^-1 g x

unsigned element_order(const GroupSpec& spec, const Element& g);

// Image in V = P/Z: the exponent vector (s, r).
FpVec psi(const GroupSpec& spec, const Element& g);
Element element_from_psi(const GroupSpec& spec, const FpVec& v, long long t);

// Deterministic indexing of the p^{1+2n} elements: mixed-radix rank of
// (s_1..s_n, r_1..r_n, t), most significant digit first.
std::uint64_t element_rank(const GroupSpec& spec, const Element& g);
Element element_at(const GroupSpec& spec, std::uint64_t k);
std::vector<Element> all_elements(const GroupSpec& spec);

std::string to_string(const GroupSpec& spec, const Element& g);

// The forms carried by V, each derived from group operations alone:
// f from commutators, Q (p = 2) from squares, lambda (p odd) from p-th
// powers.
struct FormData {
    SymplecticForm f;
    std::optional<QuadraticForm> q;
    std::optional<LinearForm> lambda;
};

FormData derive_forms(const GroupSpec& spec);

} // namespace esp

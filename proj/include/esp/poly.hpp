#pragma once

#include <map>
#include <string>
#include <vector>

#include "esp/fp.hpp"
#include "esp/report.hpp"

namespace esp {

// Polynomial over F_p in named commuting variables, stored as a map
// from exponent vectors to nonzero canonical coefficients. Variables
// model first Chern classes of linear characters, so polynomial
// degree d means cohomological degree 2d.
struct GradedPoly {
    unsigned p = 2;
    std::vector<std::string> vars;
    std::map<std::vector<unsigned>, unsigned> terms;

    GradedPoly() = default;
    GradedPoly(unsigned p_, std::vector<std::string> vars_);

    static GradedPoly constant(unsigned p, std::vector<std::string> vars, long long c);
    static GradedPoly variable(unsigned p, std::vector<std::string> vars, std::size_t index);
    static GradedPoly monomial(unsigned p, std::vector<std::string> vars,
                               std::vector<unsigned> exponents, long long c);

    bool is_zero() const { return terms.empty(); }
    // Largest total exponent over the stored terms; 0 for the zero
    // polynomial.
    unsigned degree() const;
    bool is_homogeneous() const;

    void add_term(const std::vector<unsigned>& exponents, long long c);

    GradedPoly operator+(const GradedPoly& o) const;
    GradedPoly operator-(const GradedPoly& o) const;
    GradedPoly operator*(const GradedPoly& o) const;
    bool operator==(const GradedPoly& o) const { return p == o.p && vars == o.vars && terms == o.terms; }

    std::string to_string() const;
};

GradedPoly poly_pow(const GradedPoly& base, std::uint64_t k);

// Ring homomorphism sending vars[i] to images[i]; all images must
// live in one common ring.
GradedPoly substitute(const GradedPoly& poly, const std::vector<GradedPoly>& images);

// Linear substitution var_j -> sum_i m(i, j) * var_i; the matrix acts
// on the column of variables.
GradedPoly pullback(const GradedPoly& poly, const FpMat& m);

// Sets the listed variables to zero: restriction along the inclusion
// of the subspace where those coordinates vanish.
GradedPoly kill_variables(const GradedPoly& poly, const std::vector<std::size_t>& var_indices);

// Total Chern class of the regular representation of a cyclic group
// of order p, in one variable: prod over all scalars mu of (1 + mu b).
// Equals 1 - b^(p-1).
GradedPoly chern_total_cyclic_regular(unsigned p);

// Restriction to a rank-1 subgroup of the total Chern class of the
// p-fold regular character sum: prod over mu of (1 + mu b)^p. Equals
// 1 - b^(p(p-1)).
GradedPoly chern_total_regular(unsigned p);

// Asserts both factorization steps of the product identity: the
// cyclic product collapses to 1 - b^(p-1), and its p-th power to
// 1 - b^(p(p-1)), which is the full product.
bool verify_chern_identity(unsigned p);

// Norm-map restriction: the product over all p^(n-1) vectors u in
// span(b_2..b_n) of (g + u), in the ring F_p[g, b_1..b_n]. Variable 0
// is g; variable j is b_j. Homogeneous of polynomial degree p^(n-1).
GradedPoly evens_norm_restriction(unsigned p, std::size_t n);

// Confirms that the norm restriction and its twist by g -> g + b_1
// stay different after killing b_2..b_n, i.e. the class is moved by
// the generator dual to b_1; the sanity counterpart kills b_1 too and
// finds both sides equal. Requires n >= 2.
Report verify_remark8(unsigned p, std::size_t n);

} // namespace esp

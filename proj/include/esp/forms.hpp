#pragma once

#include "esp/fp.hpp"

namespace esp {

// Alternating bilinear form on F_p^{2n}, given by its Gram matrix.
// Vectors use the coordinate order (s_1..s_n, r_1..r_n): the dual
// basis of the B-generators first, then of the A-generators.
struct SymplecticForm {
    FpMat gram;

    explicit SymplecticForm(FpMat g);

    unsigned p() const { return gram.modulus(); }
    std::size_t dim() const { return gram.rows(); }

    Fp eval(const FpVec& v, const FpVec& w) const;

    // Standard form: f(a_i, b_j) = delta_ij where b-vectors are the
    // first n coordinates and a-vectors the last n. Gram = [[0,-I],[I,0]].
    static SymplecticForm standard(unsigned p, std::size_t n);
};

bool is_nondegenerate(const SymplecticForm& f);

// Hyperbolic pairs (a_i, b_i): f(a_i, b_j) = delta_ij and both blocks
// are isotropic. Produced by symplectic Gram-Schmidt.
struct SymplecticPairs {
    std::vector<FpVec> b;
    std::vector<FpVec> a;
};

// Decomposes the span of `vectors` into hyperbolic pairs. The
// restriction of f to that span must be nondegenerate. First remaining
// vector always takes the b-role, so the standard basis maps to itself
// under the standard form.
SymplecticPairs symplectic_pairs(const SymplecticForm& f, const std::vector<FpVec>& vectors);

// Change-of-basis matrix M, columns (b_1..b_n, a_1..a_n), with
// M^T gram M equal to the standard Gram matrix. Requires f nondegenerate.
FpMat symplectic_basis(const SymplecticForm& f);

// Quadratic form on F_2^{2n} as an upper-triangular coefficient
// matrix: Q(v) = sum_{i<=j} coeffs[i][j] v_i v_j.
struct QuadraticForm {
    FpMat coeffs;

    explicit QuadraticForm(FpMat c);

    std::size_t dim() const { return coeffs.rows(); }
    Fp eval(const FpVec& v) const;

    // Polar form f(v,w) = Q(v+w) + Q(v) + Q(w).
    SymplecticForm polar() const;
};

Fp q_eval(const QuadraticForm& q, const FpVec& v);
SymplecticForm polar_form(const QuadraticForm& q);

enum class ArfType { Plus, Minus };
std::string to_string(ArfType t);

// Classification by exhaustive zero count: plus iff Q has
// 2^{2n-1} + 2^{n-1} zeros, minus iff 2^{2n-1} - 2^{n-1}. Any other
// count means Q is malformed (degenerate polar form, wrong dimension).
ArfType arf_type(const QuadraticForm& q);

// Linear form on F_p^{2n}, p odd.
struct LinearForm {
    FpVec coeffs;

    explicit LinearForm(FpVec c);

    unsigned p() const { return coeffs.p; }
    Fp eval(const FpVec& v) const;
    bool is_zero() const { return coeffs.is_zero(); }
};

enum class LambdaClass { Zero, Nonzero };
LambdaClass lambda_classify(const LinearForm& l);

} // namespace esp

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace esp {

// Error type for contract violations (bad arguments, mixed moduli,
// degenerate inputs where nondegenerate ones are required, ...).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

bool is_prime(unsigned p);
void require_prime(unsigned p);

// Scalar in the prime field F_p. Carries its modulus; operations on
// mismatched moduli throw.
class Fp {
public:
    Fp(long long value, unsigned p);

    unsigned value() const { return v_; }
    unsigned modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(Fp o) const;
    Fp operator-(Fp o) const;
    Fp operator*(Fp o) const;
    Fp operator-() const;
    Fp inverse() const;

    bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

private:
    unsigned v_;
    unsigned p_;
    void match(const Fp& o) const;
};

// Dense vector over F_p, stored as canonical residues.
struct FpVec {
    unsigned p = 2;
    std::vector<unsigned> c;

    FpVec() = default;
    FpVec(unsigned p_, std::size_t dim) : p(p_), c(dim, 0) { require_prime(p_); }
    FpVec(unsigned p_, std::vector<long long> entries);

    std::size_t dim() const { return c.size(); }
    Fp at(std::size_t i) const { return Fp(c.at(i), p); }
    void set(std::size_t i, long long v);

    bool is_zero() const;

    FpVec operator+(const FpVec& o) const;
    FpVec operator-(const FpVec& o) const;
    FpVec scaled(Fp k) const;
    Fp dot(const FpVec& o) const;

    bool operator==(const FpVec& o) const { return p == o.p && c == o.c; }
    bool operator!=(const FpVec& o) const { return !(*this == o); }
    bool operator<(const FpVec& o) const { return c < o.c; }

    std::string to_string() const;
};

// Unit vector e_i of the given dimension.
FpVec unit_vec(unsigned p, std::size_t dim, std::size_t i);

// All p^dim vectors in lexicographic order (first coordinate most
// significant); vector number k is the base-p expansion of k.
std::vector<FpVec> all_vectors(unsigned p, std::size_t dim);

// Dense row-major matrix over F_p with exact Gaussian elimination.
// Pivoting always picks the lowest-index nonzero entry, so every
// derived object (rank profile, solutions, kernel bases) is
// deterministic.
class FpMat {
public:
    FpMat() : p_(2), rows_(0), cols_(0) {}
    FpMat(unsigned p, std::size_t rows, std::size_t cols);
    static FpMat identity(unsigned p, std::size_t n);
    static FpMat from_rows(unsigned p, const std::vector<std::vector<long long>>& rows);
    static FpMat from_columns(const std::vector<FpVec>& cols);

    unsigned modulus() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Fp at(std::size_t i, std::size_t j) const { return Fp(a_[i * cols_ + j], p_); }
    unsigned raw(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, long long v);

    FpVec row(std::size_t i) const;
    FpVec col(std::size_t j) const;

    FpMat operator+(const FpMat& o) const;
    FpMat operator-(const FpMat& o) const;
    FpMat operator*(const FpMat& o) const;
    FpVec operator*(const FpVec& v) const;
    FpMat transpose() const;
    FpMat negated() const;

    bool operator==(const FpMat& o) const;
    bool operator!=(const FpMat& o) const { return !(*this == o); }

    std::size_t rank() const;
    bool invertible() const;
    std::optional<FpMat> inverse() const;

    // Solves A x = b; the returned vector is re-checked against the
    // system before being handed back.
    std::optional<FpVec> solve(const FpVec& b) const;
    // Basis of the right kernel {x : A x = 0}, as columns.
    std::vector<FpVec> kernel_basis() const;

    std::string to_string() const;

private:
    unsigned p_;
    std::size_t rows_, cols_;
    std::vector<unsigned> a_;
    void match(const FpMat& o) const;
};

// Convenience wrapper matching the solve contract of FpMat::solve.
std::optional<FpVec> solve_linear(const FpMat& a, const FpVec& b);

} // namespace esp

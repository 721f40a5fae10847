#include "esp/fp.hpp"

#include <algorithm>
#include <sstream>

namespace esp {

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_prime(unsigned p) {
    if (!is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
}

static unsigned reduce(long long v, unsigned p) {
    long long m = v % static_cast<long long>(p);
    if (m < 0) m += p;
    return static_cast<unsigned>(m);
}

Fp::Fp(long long value, unsigned p) : p_(p) {
    require_prime(p);
    v_ = reduce(value, p);
}

void Fp::match(const Fp& o) const {
    if (p_ != o.p_)
        throw Error("mixed moduli " + std::to_string(p_) + " and " + std::to_string(o.p_));
}

Fp Fp::operator+(Fp o) const {
    match(o);
    return Fp(static_cast<long long>(v_) + o.v_, p_);
}

Fp Fp::operator-(Fp o) const {
    match(o);
    return Fp(static_cast<long long>(v_) - o.v_, p_);
}

Fp Fp::operator*(Fp o) const {
    match(o);
    return Fp(static_cast<long long>(v_) * o.v_, p_);
}

Fp Fp::operator-() const { return Fp(-static_cast<long long>(v_), p_); }

Fp Fp::inverse() const {
    if (v_ == 0) throw Error("inverse of zero mod " + std::to_string(p_));
    // Fermat: v^(p-2). p is tiny here, so repeated multiplication is fine.
    Fp acc(1, p_);
    for (unsigned e = 0; e + 2 < p_; ++e) acc = acc * *this;
    return acc;
}

FpVec::FpVec(unsigned p_, std::vector<long long> entries) : p(p_) {
    require_prime(p_);
    c.reserve(entries.size());
    for (long long e : entries) c.push_back(reduce(e, p_));
}

void FpVec::set(std::size_t i, long long v) { c.at(i) = reduce(v, p); }

bool FpVec::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](unsigned x) { return x == 0; });
}

static void match_vec(const FpVec& a, const FpVec& b) {
    if (a.p != b.p) throw Error("mixed moduli in vector op");
    if (a.dim() != b.dim()) throw Error("dimension mismatch in vector op");
}

FpVec FpVec::operator+(const FpVec& o) const {
    match_vec(*this, o);
    FpVec r(p, dim());
    for (std::size_t i = 0; i < dim(); ++i) r.c[i] = (c[i] + o.c[i]) % p;
    return r;
}

FpVec FpVec::operator-(const FpVec& o) const {
    match_vec(*this, o);
    FpVec r(p, dim());
    for (std::size_t i = 0; i < dim(); ++i) r.c[i] = (c[i] + p - o.c[i]) % p;
    return r;
}

FpVec FpVec::scaled(Fp k) const {
    if (k.modulus() != p) throw Error("mixed moduli in scale");
    FpVec r(p, dim());
    for (std::size_t i = 0; i < dim(); ++i) r.c[i] = (c[i] * k.value()) % p;
    return r;
}

Fp FpVec::dot(const FpVec& o) const {
    match_vec(*this, o);
    unsigned long long acc = 0;
    for (std::size_t i = 0; i < dim(); ++i) acc += static_cast<unsigned long long>(c[i]) * o.c[i];
    return Fp(static_cast<long long>(acc % p), p);
}

std::string FpVec::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < dim(); ++i) {
        if (i) os << ",";
        os << c[i];
    }
    os << ")";
    return os.str();
}

FpVec unit_vec(unsigned p, std::size_t dim, std::size_t i) {
    FpVec v(p, dim);
    v.set(i, 1);
    return v;
}

std::vector<FpVec> all_vectors(unsigned p, std::size_t dim) {
    require_prime(p);
    std::size_t count = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        if (count > (1u << 24)) throw Error("all_vectors: space too large");
        count *= p;
    }
    std::vector<FpVec> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        FpVec v(p, dim);
        std::size_t rem = k;
        for (std::size_t i = dim; i-- > 0;) {
            v.c[i] = static_cast<unsigned>(rem % p);
            rem /= p;
        }
        out.push_back(std::move(v));
    }
    return out;
}

FpMat::FpMat(unsigned p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    require_prime(p);
}

FpMat FpMat::identity(unsigned p, std::size_t n) {
    FpMat m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMat FpMat::from_rows(unsigned p, const std::vector<std::vector<long long>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    FpMat m(p, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw Error("ragged rows in matrix literal");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

FpMat FpMat::from_columns(const std::vector<FpVec>& cols) {
    if (cols.empty()) throw Error("from_columns: no columns");
    unsigned p = cols[0].p;
    std::size_t r = cols[0].dim();
    FpMat m(p, r, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].p != p || cols[j].dim() != r) throw Error("from_columns: inconsistent columns");
        for (std::size_t i = 0; i < r; ++i) m.a_[i * m.cols_ + j] = cols[j].c[i];
    }
    return m;
}

void FpMat::set(std::size_t i, std::size_t j, long long v) {
    if (i >= rows_ || j >= cols_) throw Error("matrix index out of range");
    a_[i * cols_ + j] = reduce(v, p_);
}

FpVec FpMat::row(std::size_t i) const {
    FpVec v(p_, cols_);
    for (std::size_t j = 0; j < cols_; ++j) v.c[j] = a_[i * cols_ + j];
    return v;
}

FpVec FpMat::col(std::size_t j) const {
    FpVec v(p_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.c[i] = a_[i * cols_ + j];
    return v;
}

void FpMat::match(const FpMat& o) const {
    if (p_ != o.p_) throw Error("mixed moduli in matrix op");
}

FpMat FpMat::operator+(const FpMat& o) const {
    match(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("shape mismatch in matrix add");
    FpMat r(p_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = (a_[k] + o.a_[k]) % p_;
    return r;
}

FpMat FpMat::operator-(const FpMat& o) const {
    match(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("shape mismatch in matrix sub");
    FpMat r(p_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = (a_[k] + p_ - o.a_[k]) % p_;
    return r;
}

FpMat FpMat::operator*(const FpMat& o) const {
    match(o);
    if (cols_ != o.rows_) throw Error("shape mismatch in matrix mul");
    FpMat r(p_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            unsigned aik = a_[i * cols_ + k];
            if (!aik) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.a_[i * o.cols_ + j] =
                    (r.a_[i * o.cols_ + j] + aik * o.a_[k * o.cols_ + j]) % p_;
        }
    return r;
}

FpVec FpMat::operator*(const FpVec& v) const {
    if (v.p != p_) throw Error("mixed moduli in matrix-vector mul");
    if (v.dim() != cols_) throw Error("shape mismatch in matrix-vector mul");
    FpVec r(p_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        unsigned long long acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            acc += static_cast<unsigned long long>(a_[i * cols_ + j]) * v.c[j];
        r.c[i] = static_cast<unsigned>(acc % p_);
    }
    return r;
}

FpMat FpMat::transpose() const {
    FpMat r(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.a_[j * rows_ + i] = a_[i * cols_ + j];
    return r;
}

FpMat FpMat::negated() const {
    FpMat r(p_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = (p_ - a_[k]) % p_;
    return r;
}

bool FpMat::operator==(const FpMat& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

// Row-reduces `m` in place to reduced row echelon form. Returns the
// pivot column of each pivot row, in order. Lowest-index row is always
// chosen among candidate pivots.
static std::vector<std::size_t> rref_in_place(FpMat& m) {
    unsigned p = m.modulus();
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
        std::size_t sel = prow;
        while (sel < m.rows() && m.raw(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != prow)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                long long tmp = m.raw(prow, j);
                m.set(prow, j, m.raw(sel, j));
                m.set(sel, j, tmp);
            }
        Fp inv = m.at(prow, col).inverse();
        for (std::size_t j = 0; j < m.cols(); ++j)
            m.set(prow, j, (m.at(prow, j) * inv).value());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == prow) continue;
            unsigned f = m.raw(i, col);
            if (!f) continue;
            for (std::size_t j = 0; j < m.cols(); ++j)
                m.set(i, j,
                      static_cast<long long>(m.raw(i, j)) + static_cast<long long>(p - f) * m.raw(prow, j));
        }
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}

std::size_t FpMat::rank() const {
    FpMat m = *this;
    return rref_in_place(m).size();
}

bool FpMat::invertible() const { return rows_ == cols_ && rank() == rows_; }

std::optional<FpMat> FpMat::inverse() const {
    if (rows_ != cols_) throw Error("inverse of non-square matrix");
    // Augment with the identity and reduce.
    FpMat aug(p_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.set(i, j, raw(i, j));
        aug.set(i, cols_ + i, 1);
    }
    auto pivots = rref_in_place(aug);
    // All pivots must land in the left block; a pivot in the augmented
    // identity block means the matrix is singular.
    if (pivots.size() != rows_ || (rows_ && pivots.back() >= cols_)) return std::nullopt;
    FpMat inv(p_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) inv.set(i, j, aug.raw(i, cols_ + j));
    // Contract: the result really is a two-sided inverse.
    if (!(*this * inv == identity(p_, rows_)) || !(inv * *this == identity(p_, rows_)))
        throw Error("inverse verification failed");
    return inv;
}

std::optional<FpVec> FpMat::solve(const FpVec& b) const {
    if (b.p != p_) throw Error("mixed moduli in solve");
    if (b.dim() != rows_) throw Error("shape mismatch in solve");
    FpMat aug(p_, rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.set(i, j, raw(i, j));
        aug.set(i, cols_, b.c[i]);
    }
    auto pivots = rref_in_place(aug);
    // Inconsistent iff some pivot lands in the augmented column.
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    FpVec x(p_, cols_);
    for (std::size_t k = 0; k < pivots.size(); ++k) x.c[pivots[k]] = aug.raw(k, cols_);
    if (!(*this * x == b)) throw Error("solve verification failed");
    return x;
}

std::vector<FpVec> FpMat::kernel_basis() const {
    FpMat m = *this;
    auto pivots = rref_in_place(m);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<FpVec> basis;
    for (std::size_t freec = 0; freec < cols_; ++freec) {
        if (is_pivot[freec]) continue;
        FpVec v(p_, cols_);
        v.c[freec] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v.c[pivots[k]] = (p_ - m.raw(k, freec)) % p_;
        if (!(*this * v).is_zero()) throw Error("kernel verification failed");
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string FpMat::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << raw(i, j);
        }
        os << "]\n";
    }
    return os.str();
}

std::optional<FpVec> solve_linear(const FpMat& a, const FpVec& b) { return a.solve(b); }

} // namespace esp

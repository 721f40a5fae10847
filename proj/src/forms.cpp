#include "esp/forms.hpp"

namespace esp {

SymplecticForm::SymplecticForm(FpMat g) : gram(std::move(g)) {
    if (gram.rows() != gram.cols()) throw Error("symplectic gram must be square");
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        if (gram.raw(i, i) != 0) throw Error("symplectic gram must have zero diagonal");
        for (std::size_t j = 0; j < i; ++j)
            if ((gram.at(i, j) + gram.at(j, i)).value() != 0)
                throw Error("symplectic gram must be antisymmetric");
    }
}

Fp SymplecticForm::eval(const FpVec& v, const FpVec& w) const {
    if (v.dim() != dim() || w.dim() != dim()) throw Error("form dimension mismatch");
    return v.dot(gram * w);
}

SymplecticForm SymplecticForm::standard(unsigned p, std::size_t n) {
    FpMat g(p, 2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        g.set(i, n + i, -1);
        g.set(n + i, i, 1);
    }
    return SymplecticForm(std::move(g));
}

bool is_nondegenerate(const SymplecticForm& f) { return f.gram.invertible(); }

// Keeps the earliest vectors that extend the span; deterministic.
static std::vector<FpVec> independent_subset(const std::vector<FpVec>& vectors) {
    std::vector<FpVec> kept;
    for (const FpVec& v : vectors) {
        if (v.is_zero()) continue;
        std::vector<FpVec> trial = kept;
        trial.push_back(v);
        if (FpMat::from_columns(trial).rank() == trial.size()) kept.push_back(v);
    }
    return kept;
}

SymplecticPairs symplectic_pairs(const SymplecticForm& f, const std::vector<FpVec>& vectors) {
    std::vector<FpVec> working = independent_subset(vectors);
    SymplecticPairs out;
    while (!working.empty()) {
        FpVec b = working.front();
        working.erase(working.begin());
        std::size_t wi = working.size();
        for (std::size_t k = 0; k < working.size(); ++k)
            if (!f.eval(b, working[k]).is_zero()) {
                wi = k;
                break;
            }
        if (wi == working.size())
            throw Error("symplectic_pairs: form degenerate on the given span");
        // Scale the partner so f(a, b) = 1.
        FpVec a = working[wi].scaled(f.eval(working[wi], b).inverse());
        working.erase(working.begin() + static_cast<long>(wi));
        for (FpVec& v : working)
            v = v + b.scaled(f.eval(v, a)) - a.scaled(f.eval(v, b));
        working = independent_subset(working);
        out.b.push_back(std::move(b));
        out.a.push_back(std::move(a));
    }
    for (std::size_t i = 0; i < out.b.size(); ++i)
        for (std::size_t j = 0; j < out.b.size(); ++j) {
            unsigned want = (i == j) ? 1u : 0u;
            if (f.eval(out.a[i], out.b[j]).value() != want || !f.eval(out.a[i], out.a[j]).is_zero() ||
                !f.eval(out.b[i], out.b[j]).is_zero())
                throw Error("symplectic_pairs: pairing verification failed");
        }
    return out;
}

FpMat symplectic_basis(const SymplecticForm& f) {
    if (!is_nondegenerate(f)) throw Error("symplectic_basis: degenerate form");
    std::vector<FpVec> basis;
    for (std::size_t i = 0; i < f.dim(); ++i) basis.push_back(unit_vec(f.p(), f.dim(), i));
    SymplecticPairs pairs = symplectic_pairs(f, basis);
    std::vector<FpVec> cols = pairs.b;
    cols.insert(cols.end(), pairs.a.begin(), pairs.a.end());
    FpMat m = FpMat::from_columns(cols);
    FpMat target = SymplecticForm::standard(f.p(), f.dim() / 2).gram;
    if (!(m.transpose() * f.gram * m == target))
        throw Error("symplectic_basis: contract check failed");
    return m;
}

QuadraticForm::QuadraticForm(FpMat c) : coeffs(std::move(c)) {
    if (coeffs.modulus() != 2) throw Error("quadratic form requires p = 2");
    if (coeffs.rows() != coeffs.cols()) throw Error("quadratic coeffs must be square");
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (coeffs.raw(i, j) != 0) throw Error("quadratic coeffs must be upper-triangular");
}

Fp QuadraticForm::eval(const FpVec& v) const {
    if (v.p != 2) throw Error("quadratic form requires p = 2");
    if (v.dim() != dim()) throw Error("form dimension mismatch");
    unsigned acc = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!v.c[i]) continue;
        for (std::size_t j = i; j < dim(); ++j) acc ^= coeffs.raw(i, j) & v.c[j];
    }
    return Fp(acc, 2);
}

SymplecticForm QuadraticForm::polar() const {
    // B(e_i, e_j) = Q(e_i + e_j) + Q(e_i) + Q(e_j) = coeffs[i][j] off
    // the diagonal; the diagonal of the polar form is always zero.
    FpMat g(2, dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j) {
            g.set(i, j, coeffs.raw(i, j));
            g.set(j, i, coeffs.raw(i, j));
        }
    return SymplecticForm(std::move(g));
}

Fp q_eval(const QuadraticForm& q, const FpVec& v) { return q.eval(v); }

SymplecticForm polar_form(const QuadraticForm& q) { return q.polar(); }

std::string to_string(ArfType t) { return t == ArfType::Plus ? "plus" : "minus"; }

ArfType arf_type(const QuadraticForm& q) {
    if (!is_nondegenerate(q.polar())) throw Error("arf_type: polar form degenerate");
    std::size_t zeros = 0;
    for (const FpVec& v : all_vectors(2, q.dim()))
        if (q.eval(v).is_zero()) ++zeros;
    std::size_t n = q.dim() / 2;
    std::size_t half = std::size_t(1) << (2 * n - 1);
    std::size_t dev = std::size_t(1) << (n - 1);
    if (zeros == half + dev) return ArfType::Plus;
    if (zeros == half - dev) return ArfType::Minus;
    throw Error("arf_type: zero count " + std::to_string(zeros) + " matches neither type");
}

LinearForm::LinearForm(FpVec c) : coeffs(std::move(c)) {
    if (coeffs.p == 2) throw Error("linear form lambda requires odd p");
}

Fp LinearForm::eval(const FpVec& v) const {
    if (v.p != p() || v.dim() != coeffs.dim()) throw Error("form dimension mismatch");
    return coeffs.dot(v);
}

LambdaClass lambda_classify(const LinearForm& l) {
    return l.is_zero() ? LambdaClass::Zero : LambdaClass::Nonzero;
}

} // namespace esp

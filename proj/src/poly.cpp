#include "esp/poly.hpp"

#include <algorithm>

namespace esp {

namespace {

void check_same_ring(const GradedPoly& a, const GradedPoly& b) {
    if (a.p != b.p) throw Error("mixed moduli in polynomial arithmetic");
    if (a.vars != b.vars) throw Error("mixed variable sets in polynomial arithmetic");
}

unsigned total_degree(const std::vector<unsigned>& exponents) {
    unsigned d = 0;
    for (unsigned e : exponents) d += e;
    return d;
}

} // namespace

GradedPoly::GradedPoly(unsigned p_, std::vector<std::string> vars_)
    : p(p_), vars(std::move(vars_)) {
    require_prime(p_);
}

GradedPoly GradedPoly::constant(unsigned p, std::vector<std::string> vars, long long c) {
    GradedPoly out(p, std::move(vars));
    out.add_term(std::vector<unsigned>(out.vars.size(), 0), c);
    return out;
}

GradedPoly GradedPoly::variable(unsigned p, std::vector<std::string> vars, std::size_t index) {
    GradedPoly out(p, std::move(vars));
    if (index >= out.vars.size()) throw Error("variable index out of range");
    std::vector<unsigned> e(out.vars.size(), 0);
    e[index] = 1;
    out.add_term(e, 1);
    return out;
}

GradedPoly GradedPoly::monomial(unsigned p, std::vector<std::string> vars,
                                std::vector<unsigned> exponents, long long c) {
    GradedPoly out(p, std::move(vars));
    if (exponents.size() != out.vars.size()) throw Error("monomial exponent count mismatch");
    out.add_term(exponents, c);
    return out;
}

unsigned GradedPoly::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, total_degree(e));
    return d;
}

bool GradedPoly::is_homogeneous() const {
    if (terms.empty()) return true;
    unsigned d = total_degree(terms.begin()->first);
    for (const auto& [e, c] : terms)
        if (total_degree(e) != d) return false;
    return true;
}

void GradedPoly::add_term(const std::vector<unsigned>& exponents, long long c) {
    if (exponents.size() != vars.size()) throw Error("exponent vector length mismatch");
    unsigned coeff = Fp(c, p).value();
    if (coeff == 0) return;
    auto [it, inserted] = terms.emplace(exponents, coeff);
    if (!inserted) {
        it->second = (it->second + coeff) % p;
        if (it->second == 0) terms.erase(it);
    }
}

GradedPoly GradedPoly::operator+(const GradedPoly& o) const {
    check_same_ring(*this, o);
    GradedPoly out = *this;
    for (const auto& [e, c] : o.terms) out.add_term(e, c);
    return out;
}

GradedPoly GradedPoly::operator-(const GradedPoly& o) const {
    check_same_ring(*this, o);
    GradedPoly out = *this;
    for (const auto& [e, c] : o.terms) out.add_term(e, static_cast<long long>(p) - c);
    return out;
}

GradedPoly GradedPoly::operator*(const GradedPoly& o) const {
    check_same_ring(*this, o);
    GradedPoly out(p, vars);
    for (const auto& [ea, ca] : terms)
        for (const auto& [eb, cb] : o.terms) {
            std::vector<unsigned> e(vars.size());
            for (std::size_t i = 0; i < vars.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, static_cast<long long>(ca) * cb);
        }
    return out;
}

std::string GradedPoly::to_string() const {
    if (terms.empty()) return "0";
    // Display order: total degree ascending, then exponents
    // lexicographically descending, so leading variables come first
    // within a degree.
    std::vector<std::pair<std::vector<unsigned>, unsigned>> sorted(terms.begin(), terms.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        unsigned da = total_degree(a.first), db = total_degree(b.first);
        if (da != db) return da < db;
        return a.first > b.first;
    });
    std::string out;
    for (const auto& [e, c] : sorted) {
        // Symmetric representative: coefficients above p/2 print as
        // negatives.
        bool negative = 2 * c > p;
        unsigned mag = negative ? p - c : c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            out += std::to_string(mag);
        else {
            if (mag != 1) out += std::to_string(mag) + "*";
            out += mono;
        }
    }
    return out;
}

GradedPoly poly_pow(const GradedPoly& base, std::uint64_t k) {
    GradedPoly acc = GradedPoly::constant(base.p, base.vars, 1);
    GradedPoly b = base;
    while (k) {
        if (k & 1) acc = acc * b;
        b = b * b;
        k >>= 1;
    }
    return acc;
}

GradedPoly substitute(const GradedPoly& poly, const std::vector<GradedPoly>& images) {
    if (images.size() != poly.vars.size())
        throw Error("substitution needs one image per variable");
    for (const GradedPoly& im : images) check_same_ring(images.front(), im);
    if (images.empty()) throw Error("substitution into an empty ring");
    GradedPoly out(images.front().p, images.front().vars);
    if (poly.p != out.p) throw Error("mixed moduli in substitution");
    for (const auto& [e, c] : poly.terms) {
        GradedPoly term = GradedPoly::constant(out.p, out.vars, c);
        for (std::size_t i = 0; i < poly.vars.size(); ++i)
            if (e[i]) term = term * poly_pow(images[i], e[i]);
        out = out + term;
    }
    return out;
}

GradedPoly pullback(const GradedPoly& poly, const FpMat& m) {
    if (m.modulus() != poly.p) throw Error("pullback matrix modulus mismatch");
    if (m.rows() != poly.vars.size() || m.cols() != poly.vars.size())
        throw Error("pullback matrix shape mismatch");
    std::vector<GradedPoly> images;
    for (std::size_t j = 0; j < poly.vars.size(); ++j) {
        GradedPoly image(poly.p, poly.vars);
        for (std::size_t i = 0; i < poly.vars.size(); ++i) {
            std::vector<unsigned> e(poly.vars.size(), 0);
            e[i] = 1;
            image.add_term(e, m.raw(i, j));
        }
        images.push_back(std::move(image));
    }
    return substitute(poly, images);
}

GradedPoly kill_variables(const GradedPoly& poly,
                          const std::vector<std::size_t>& var_indices) {
    for (std::size_t i : var_indices)
        if (i >= poly.vars.size()) throw Error("kill index out of range");
    GradedPoly out(poly.p, poly.vars);
    for (const auto& [e, c] : poly.terms) {
        bool killed = false;
        for (std::size_t i : var_indices)
            if (e[i] != 0) killed = true;
        if (!killed) out.add_term(e, c);
    }
    return out;
}

GradedPoly chern_total_cyclic_regular(unsigned p) {
    std::vector<std::string> vars{"b"};
    GradedPoly prod = GradedPoly::constant(p, vars, 1);
    for (unsigned mu = 0; mu < p; ++mu) {
        GradedPoly factor = GradedPoly::constant(p, vars, 1);
        factor.add_term({1}, mu);
        prod = prod * factor;
    }
    return prod;
}

GradedPoly chern_total_regular(unsigned p) {
    std::vector<std::string> vars{"b"};
    GradedPoly prod = GradedPoly::constant(p, vars, 1);
    for (unsigned mu = 0; mu < p; ++mu) {
        GradedPoly factor = GradedPoly::constant(p, vars, 1);
        factor.add_term({1}, mu);
        prod = prod * poly_pow(factor, p);
    }
    return prod;
}

bool verify_chern_identity(unsigned p) {
    std::vector<std::string> vars{"b"};
    GradedPoly cyclic_expected = GradedPoly::constant(p, vars, 1);
    cyclic_expected.add_term({p - 1}, -1);
    GradedPoly cyclic = chern_total_cyclic_regular(p);
    if (!(cyclic == cyclic_expected)) return false;

    GradedPoly full_expected = GradedPoly::constant(p, vars, 1);
    full_expected.add_term({p * (p - 1)}, -1);
    if (!(poly_pow(cyclic, p) == full_expected)) return false;
    return chern_total_regular(p) == full_expected;
}

GradedPoly evens_norm_restriction(unsigned p, std::size_t n) {
    if (n == 0) throw Error("rank must be positive");
    std::vector<std::string> vars{"g"};
    for (std::size_t i = 1; i <= n; ++i) vars.push_back("b" + std::to_string(i));
    GradedPoly prod = GradedPoly::constant(p, vars, 1);
    for (const FpVec& u : all_vectors(p, n - 1)) {
        GradedPoly factor = GradedPoly::variable(p, vars, 0);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            std::vector<unsigned> e(vars.size(), 0);
            e[2 + j] = 1;
            factor.add_term(e, u.c[j]);
        }
        prod = prod * factor;
    }
    return prod;
}

Report verify_remark8(unsigned p, std::size_t n) {
    if (n < 2) throw Error("the invariance failure needs rank at least 2");
    Report report;
    report.command = "remark8";
    report.param("p", std::to_string(p));
    report.param("n", std::to_string(n));

    GradedPoly eta = evens_norm_restriction(p, n);
    std::uint64_t q = 1;
    for (std::size_t i = 1; i < n; ++i) q *= p;
    report.add(eta.is_homogeneous() && eta.degree() == q
                   ? pass("norm restriction is homogeneous of degree p^(n-1)")
                   : fail("norm restriction is homogeneous of degree p^(n-1)",
                          eta.to_string()));

    // Twist by the substitution g -> g + b1, the action dual to the
    // generator that moves the norm class.
    std::vector<GradedPoly> images;
    for (std::size_t i = 0; i < eta.vars.size(); ++i)
        images.push_back(GradedPoly::variable(p, eta.vars, i));
    images[0] = images[0] + GradedPoly::variable(p, eta.vars, 1);
    GradedPoly twisted = substitute(eta, images);

    std::vector<std::size_t> upper;
    for (std::size_t i = 2; i < eta.vars.size(); ++i) upper.push_back(i);
    GradedPoly restricted = kill_variables(eta, upper);
    GradedPoly restricted_twisted = kill_variables(twisted, upper);

    GradedPoly g = GradedPoly::variable(p, eta.vars, 0);
    GradedPoly b1 = GradedPoly::variable(p, eta.vars, 1);
    report.add(restricted == poly_pow(g, q)
                   ? pass("restriction is g^(p^(n-1))", restricted.to_string())
                   : fail("restriction is g^(p^(n-1))", restricted.to_string()));
    report.add(restricted_twisted == poly_pow(g + b1, q)
                   ? pass("twisted restriction is (g+b1)^(p^(n-1))",
                          restricted_twisted.to_string())
                   : fail("twisted restriction is (g+b1)^(p^(n-1))",
                          restricted_twisted.to_string()));
    report.add(!(restricted == restricted_twisted)
                   ? pass("restrictions differ, so the class is moved")
                   : fail("restrictions differ, so the class is moved",
                          restricted.to_string()));

    std::vector<std::size_t> upper_and_b1 = upper;
    upper_and_b1.push_back(1);
    report.add(kill_variables(eta, upper_and_b1) == kill_variables(twisted, upper_and_b1)
                   ? pass("killing b1 as well reconciles both sides")
                   : fail("killing b1 as well reconciles both sides",
                          kill_variables(twisted, upper_and_b1).to_string()));
    return report;
}

} // namespace esp

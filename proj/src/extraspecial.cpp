#include "esp/extraspecial.hpp"

#include <sstream>

namespace esp {

std::string family_code(Family f) {
    switch (f) {
        case Family::TwoPlus: return "2+";
        case Family::TwoMinus: return "2-";
        case Family::PPlus: return "p+";
        case Family::PMinus: return "p-";
    }
    throw Error("bad family");
}

Family parse_family(const std::string& code) {
    if (code == "2+") return Family::TwoPlus;
    if (code == "2-") return Family::TwoMinus;
    if (code == "p+") return Family::PPlus;
    if (code == "p-") return Family::PMinus;
    throw Error("unknown family code '" + code + "' (expected 2+, 2-, p+ or p-)");
}

GroupSpec::GroupSpec(Family family_, unsigned p_, std::size_t n_)
    : family(family_), p(p_), n(n_) {
    require_prime(p);
    if (n == 0) throw Error("group spec requires n >= 1");
    bool two = family == Family::TwoPlus || family == Family::TwoMinus;
    if (two && p != 2) throw Error("family " + family_code(family) + " requires p = 2");
    if (!two && p == 2) throw Error("family " + family_code(family) + " requires odd p");
}

std::uint64_t GroupSpec::order() const {
    std::uint64_t o = p;
    for (std::size_t i = 0; i < 2 * n; ++i) o *= p;
    return o;
}

std::string GroupSpec::to_string() const {
    std::ostringstream os;
    os << family_code(family) << " p=" << p << " n=" << n;
    return os.str();
}

static void check_member(const GroupSpec& spec, const Element& g, const char* who) {
    if (g.s.p != spec.p || g.r.p != spec.p || g.s.dim() != spec.n || g.r.dim() != spec.n ||
        g.t >= spec.p)
        throw Error(std::string(who) + ": element does not belong to the given group spec");
}

Element identity(const GroupSpec& spec) { return Element{FpVec(spec.p, spec.n), FpVec(spec.p, spec.n), 0}; }

Element gen_a(const GroupSpec& spec, std::size_t i) {
    if (i < 1 || i > spec.n) throw Error("generator index out of range");
    Element g = identity(spec);
    g.r.set(i - 1, 1);
    return g;
}

Element gen_b(const GroupSpec& spec, std::size_t i) {
    if (i < 1 || i > spec.n) throw Error("generator index out of range");
    Element g = identity(spec);
    g.s.set(i - 1, 1);
    return g;
}

Element gen_c(const GroupSpec& spec) {
    Element g = identity(spec);
    g.t = 1;
    return g;
}

Element make_element(const GroupSpec& spec, std::vector<long long> s, std::vector<long long> r,
                     long long t) {
    if (s.size() != spec.n || r.size() != spec.n) throw Error("make_element: wrong exponent count");
    Element g{FpVec(spec.p, std::move(s)), FpVec(spec.p, std::move(r)), 0};
    long long m = t % static_cast<long long>(spec.p);
    g.t = static_cast<unsigned>(m < 0 ? m + spec.p : m);
    return g;
}

// 1 iff adding the canonical residues overflows the modulus; this is
// the exponent of A_1^p (resp. B_1^p) emitted when collecting powers.
static unsigned carry(unsigned a, unsigned b, unsigned p) { return a + b >= p ? 1u : 0u; }

Element mul(const GroupSpec& spec, const Element& g, const Element& h) {
    check_member(spec, g, "mul");
    check_member(spec, h, "mul");
    Element out{g.s + h.s, g.r + h.r, 0};
    // Moving the A-block of g past the B-block of h emits C^{r.s'};
    // exponent overflow on A_1/B_1 emits the family's power relation.
    unsigned long long t = g.t + h.t + g.r.dot(h.s).value();
    t += static_cast<unsigned long long>(spec.eps_a()) * carry(g.r.c[0], h.r.c[0], spec.p);
    t += static_cast<unsigned long long>(spec.eps_b()) * carry(g.s.c[0], h.s.c[0], spec.p);
    out.t = static_cast<unsigned>(t % spec.p);
    return out;
}

Element inv(const GroupSpec& spec, const Element& g) {
    check_member(spec, g, "inv");
    Element out{FpVec(spec.p, spec.n) - g.s, FpVec(spec.p, spec.n) - g.r, 0};
    long long t = static_cast<long long>(g.t) + g.r.dot(out.s).value() +
                  static_cast<long long>(spec.eps_a()) * carry(g.r.c[0], out.r.c[0], spec.p) +
                  static_cast<long long>(spec.eps_b()) * carry(g.s.c[0], out.s.c[0], spec.p);
    t = (-t) % static_cast<long long>(spec.p);
    out.t = static_cast<unsigned>(t < 0 ? t + spec.p : t);
    if (mul(spec, g, out) != identity(spec) || mul(spec, out, g) != identity(spec))
        throw Error("inv: verification failed");
    return out;
}

Element power(const GroupSpec& spec, const Element& g, long long k) {
    check_member(spec, g, "power");
    Element base = k < 0 ? inv(spec, g) : g;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Element acc = identity(spec);
    while (e) {
        if (e & 1) acc = mul(spec, acc, base);
        base = mul(spec, base, base);
        e >>= 1;
    }
    return acc;
}

Element commutator(const GroupSpec& spec, const Element& g, const Element& h) {
    return mul(spec, mul(spec, inv(spec, g), inv(spec, h)), mul(spec, g, h));
}

Element conjugate(const GroupSpec& spec, const Element& g, const Element& x) {
    return mul(spec, mul(spec, inv(spec, x), g), x);
}

unsigned element_order(const GroupSpec& spec, const Element& g) {
    Element acc = g;
    for (unsigned k = 1; k <= spec.p * spec.p; ++k) {
        if (acc == identity(spec)) return k;
        acc = mul(spec, acc, g);
    }
    throw Error("element_order: order exceeds p^2");
}

FpVec psi(const GroupSpec& spec, const Element& g) {
    check_member(spec, g, "psi");
    FpVec v(spec.p, 2 * spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        v.c[i] = g.s.c[i];
        v.c[spec.n + i] = g.r.c[i];
    }
    return v;
}

Element element_from_psi(const GroupSpec& spec, const FpVec& v, long long t) {
    if (v.p != spec.p || v.dim() != 2 * spec.n) throw Error("element_from_psi: wrong vector");
    Element g = identity(spec);
    for (std::size_t i = 0; i < spec.n; ++i) {
        g.s.c[i] = v.c[i];
        g.r.c[i] = v.c[spec.n + i];
    }
    long long m = t % static_cast<long long>(spec.p);
    g.t = static_cast<unsigned>(m < 0 ? m + spec.p : m);
    return g;
}

std::uint64_t element_rank(const GroupSpec& spec, const Element& g) {
    check_member(spec, g, "element_rank");
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < spec.n; ++i) k = k * spec.p + g.s.c[i];
    for (std::size_t i = 0; i < spec.n; ++i) k = k * spec.p + g.r.c[i];
    return k * spec.p + g.t;
}

Element element_at(const GroupSpec& spec, std::uint64_t k) {
    if (k >= spec.order()) throw Error("element_at: rank out of range");
    Element g = identity(spec);
    g.t = static_cast<unsigned>(k % spec.p);
    k /= spec.p;
    for (std::size_t i = spec.n; i-- > 0;) {
        g.r.c[i] = static_cast<unsigned>(k % spec.p);
        k /= spec.p;
    }
    for (std::size_t i = spec.n; i-- > 0;) {
        g.s.c[i] = static_cast<unsigned>(k % spec.p);
        k /= spec.p;
    }
    return g;
}

std::vector<Element> all_elements(const GroupSpec& spec) {
    std::uint64_t o = spec.order();
    if (o > (1u << 22)) throw Error("all_elements: group too large to enumerate");
    std::vector<Element> out;
    out.reserve(o);
    for (std::uint64_t k = 0; k < o; ++k) out.push_back(element_at(spec, k));
    return out;
}

std::string to_string(const GroupSpec& spec, const Element& g) {
    check_member(spec, g, "to_string");
    auto block = [](const FpVec& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.dim(); ++i) {
            if (i) s += ",";
            s += std::to_string(v.c[i]);
        }
        return s + ")";
    };
    return "B^" + block(g.s) + " A^" + block(g.r) + " C^" + std::to_string(g.t);
}

FormData derive_forms(const GroupSpec& spec) {
    unsigned p = spec.p;
    std::size_t n = spec.n, d = 2 * n;
    // Generators in coordinate order: B_1..B_n then A_1..A_n.
    std::vector<Element> gens;
    for (std::size_t i = 1; i <= n; ++i) gens.push_back(gen_b(spec, i));
    for (std::size_t i = 1; i <= n; ++i) gens.push_back(gen_a(spec, i));

    FpMat gram(p, d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Element c = commutator(spec, gens[i], gens[j]);
            if (!psi(spec, c).is_zero()) throw Error("derive_forms: commutator not central");
            gram.set(i, j, c.t);
        }
    SymplecticForm f{std::move(gram)};
    if (!is_nondegenerate(f)) throw Error("derive_forms: commutator form degenerate");

    FormData out{std::move(f), std::nullopt, std::nullopt};
    if (p == 2) {
        FpMat coeffs(2, d, d);
        for (std::size_t i = 0; i < d; ++i) {
            Element sq = power(spec, gens[i], 2);
            if (!psi(spec, sq).is_zero()) throw Error("derive_forms: square not central");
            coeffs.set(i, i, sq.t);
        }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) {
                Element sq = power(spec, mul(spec, gens[i], gens[j]), 2);
                if (!psi(spec, sq).is_zero()) throw Error("derive_forms: square not central");
                coeffs.set(i, j, sq.t + coeffs.raw(i, i) + coeffs.raw(j, j));
            }
        out.q = QuadraticForm(std::move(coeffs));
        if (!(out.q->polar().gram == out.f.gram))
            throw Error("derive_forms: polar form does not match commutator form");
    } else {
        FpVec coeffs(p, d);
        for (std::size_t i = 0; i < d; ++i) {
            Element pw = power(spec, gens[i], p);
            if (!psi(spec, pw).is_zero()) throw Error("derive_forms: p-th power not central");
            coeffs.c[i] = pw.t;
        }
        out.lambda = LinearForm(std::move(coeffs));
        if (spec.family == Family::PMinus &&
            out.lambda->eval(psi(spec, gen_a(spec, 1))).value() != 1)
            throw Error("derive_forms: lambda normalization failed");
        if (spec.family == Family::PPlus && !out.lambda->is_zero())
            throw Error("derive_forms: lambda should vanish in the exponent-p family");
    }
    return out;
}

} // namespace esp

#include "esp/witt.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace esp {

namespace {

bool in_span(const std::vector<FpVec>& vectors, const FpVec& v) {
    if (vectors.empty()) return v.is_zero();
    FpMat base = FpMat::from_columns(vectors);
    std::vector<FpVec> ext = vectors;
    ext.push_back(v);
    return base.rank() == FpMat::from_columns(ext).rank();
}

// All solutions of A x = b, sorted lexicographically; empty when the
// system is inconsistent. Solution spaces stay tiny at desk scale.
std::vector<FpVec> affine_solutions(const FpMat& a, const FpVec& b) {
    auto x0 = a.solve(b);
    if (!x0) return {};
    std::vector<FpVec> kern = a.kernel_basis();
    std::vector<FpVec> out;
    for (const FpVec& coeff : all_vectors(a.modulus(), kern.size())) {
        FpVec x = *x0;
        for (std::size_t i = 0; i < kern.size(); ++i)
            x = x + kern[i].scaled(Fp(coeff.c[i], a.modulus()));
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Rows: the linear conditions x -> f(x, w_j).
FpMat pairing_rows(const SymplecticForm& f, const std::vector<FpVec>& ws) {
    FpMat a(f.p(), ws.size(), f.dim());
    for (std::size_t j = 0; j < ws.size(); ++j) {
        FpVec row = f.gram * ws[j];
        for (std::size_t i = 0; i < f.dim(); ++i) a.set(j, i, row.c[i]);
    }
    return a;
}

void check_independent(const std::vector<FpVec>& vs, const char* what) {
    if (vs.empty()) return;
    if (FpMat::from_columns(vs).rank() != vs.size())
        throw Error(std::string(what) + ": vectors are not linearly independent");
}

void check_f_preserving(const PartialIsometry& rho, const SymplecticForm& f) {
    if (rho.domain_basis.size() != rho.image_basis.size())
        throw Error("partial isometry: basis size mismatch");
    check_independent(rho.domain_basis, "partial isometry domain");
    check_independent(rho.image_basis, "partial isometry image");
    for (std::size_t i = 0; i < rho.domain_basis.size(); ++i)
        for (std::size_t j = 0; j < rho.domain_basis.size(); ++j)
            if (f.eval(rho.domain_basis[i], rho.domain_basis[j]) !=
                f.eval(rho.image_basis[i], rho.image_basis[j]))
                throw Error("partial isometry does not preserve the alternating form");
}

} // namespace

const Element& PartialIso::apply(const Element& h) const {
    auto it = std::lower_bound(domain.elements.begin(), domain.elements.end(), h);
    if (it == domain.elements.end() || !(*it == h))
        throw Error("partial isomorphism applied outside its domain");
    return image_by_index[static_cast<std::size_t>(it - domain.elements.begin())];
}

PartialIso PartialIso::from_generator_images(const GroupSpec& spec, std::vector<Element> gens,
                                             std::vector<Element> images) {
    if (gens.size() != images.size())
        throw Error("generator and image counts differ");
    Subgroup h = closure(spec, gens);
    if (!h.contains(gen_c(spec)))
        throw Error("domain subgroup must contain the central subgroup");

    // Breadth-first image propagation; any inconsistency means the
    // images do not define a homomorphism.
    std::map<Element, Element> map;
    map.emplace(identity(spec), identity(spec));
    std::vector<Element> frontier{identity(spec)};
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (const Element& x : frontier) {
            Element fx = map.at(x);
            for (std::size_t i = 0; i < gens.size(); ++i) {
                Element xg = mul(spec, x, gens[i]);
                Element fxg = mul(spec, fx, images[i]);
                auto [it, inserted] = map.emplace(xg, fxg);
                if (inserted)
                    next.push_back(xg);
                else if (!(it->second == fxg))
                    throw Error("generator images do not define a homomorphism");
            }
        }
        frontier = std::move(next);
    }

    std::vector<Element> image_by_index;
    std::vector<Element> image_set;
    image_by_index.reserve(h.order());
    for (const Element& x : h.elements) {
        image_by_index.push_back(map.at(x));
        image_set.push_back(map.at(x));
    }
    std::sort(image_set.begin(), image_set.end());
    image_set.erase(std::unique(image_set.begin(), image_set.end()), image_set.end());
    if (image_set.size() != h.order())
        throw Error("generator images do not define an injective map");
    Subgroup k{spec, images, image_set};
    if (!k.contains(gen_c(spec))) throw Error("codomain does not contain the central subgroup");

    PartialIso phi{spec, std::move(h), std::move(k), std::move(images),
                   std::move(image_by_index)};
    if (!(phi.apply(gen_c(spec)) == gen_c(spec)))
        throw Error("isomorphism does not fix the central generator");
    // Exhaustive homomorphism check over the whole (small) domain.
    for (const Element& x : phi.domain.elements)
        for (const Element& y : phi.domain.elements)
            if (!(phi.apply(mul(spec, x, y)) == mul(spec, phi.apply(x), phi.apply(y))))
                throw Error("image map is not multiplicative");
    return phi;
}

PartialIso PartialIso::identity_on(const GroupSpec& spec, const Subgroup& h) {
    return from_generator_images(spec, h.elements, h.elements);
}

Element Automorphism::apply(const Element& g) const {
    Element acc = power(spec, gen_c(spec), g.t);
    for (std::size_t i = 1; i <= spec.n; ++i)
        acc = mul(spec, acc, power(spec, image_b(i), g.s.c[i - 1]));
    for (std::size_t i = 1; i <= spec.n; ++i)
        acc = mul(spec, acc, power(spec, image_a(i), g.r.c[i - 1]));
    return acc;
}

FpMat Automorphism::psi_matrix() const {
    std::vector<FpVec> cols;
    for (std::size_t i = 1; i <= spec.n; ++i) cols.push_back(psi(spec, image_b(i)));
    for (std::size_t i = 1; i <= spec.n; ++i) cols.push_back(psi(spec, image_a(i)));
    return FpMat::from_columns(cols);
}

bool is_automorphism(const GroupSpec& spec, const std::vector<Element>& images) {
    if (images.size() != 2 * spec.n) return false;
    auto img_a = [&](std::size_t i) { return images[i - 1]; };
    auto img_b = [&](std::size_t i) { return images[spec.n + i - 1]; };
    Element id = identity(spec), c = gen_c(spec);
    for (std::size_t i = 1; i <= spec.n; ++i)
        for (std::size_t j = 1; j <= spec.n; ++j) {
            if (commutator(spec, img_a(i), img_a(j)) != id) return false;
            if (commutator(spec, img_b(i), img_b(j)) != id) return false;
            Element want = i == j ? c : id;
            if (commutator(spec, img_a(i), img_b(j)) != want) return false;
        }
    if (power(spec, img_a(1), spec.p) != power(spec, c, spec.eps_a())) return false;
    if (power(spec, img_b(1), spec.p) != power(spec, c, spec.eps_b())) return false;
    for (std::size_t i = 2; i <= spec.n; ++i) {
        if (power(spec, img_a(i), spec.p) != id) return false;
        if (power(spec, img_b(i), spec.p) != id) return false;
    }
    // Relations hold, so the images induce an endomorphism; it is an
    // automorphism exactly when the images generate all of P.
    return closure(spec, images).order() == spec.order();
}

Automorphism make_automorphism(const GroupSpec& spec, std::vector<Element> images) {
    if (!is_automorphism(spec, images))
        throw Error("images do not define a central-fixing automorphism");
    return Automorphism{spec, std::move(images)};
}

Automorphism identity_automorphism(const GroupSpec& spec) {
    std::vector<Element> images;
    for (std::size_t i = 1; i <= spec.n; ++i) images.push_back(gen_a(spec, i));
    for (std::size_t i = 1; i <= spec.n; ++i) images.push_back(gen_b(spec, i));
    return Automorphism{spec, std::move(images)};
}

Automorphism inner_automorphism(const GroupSpec& spec, const Element& x) {
    std::vector<Element> images;
    for (std::size_t i = 1; i <= spec.n; ++i) images.push_back(conjugate(spec, gen_a(spec, i), x));
    for (std::size_t i = 1; i <= spec.n; ++i) images.push_back(conjugate(spec, gen_b(spec, i), x));
    return Automorphism{spec, std::move(images)};
}

Automorphism compose(const Automorphism& outer, const Automorphism& inner) {
    if (!(outer.spec == inner.spec)) throw Error("compose: mismatched group specs");
    std::vector<Element> images;
    for (const Element& g : inner.images) images.push_back(outer.apply(g));
    return Automorphism{outer.spec, std::move(images)};
}

Automorphism invert(const Automorphism& alpha) {
    const GroupSpec& spec = alpha.spec;
    std::vector<std::uint64_t> inverse_rank(spec.order());
    for (std::uint64_t k = 0; k < spec.order(); ++k)
        inverse_rank[element_rank(spec, alpha.apply(element_at(spec, k)))] = k;
    std::vector<Element> images;
    for (std::size_t i = 1; i <= spec.n; ++i)
        images.push_back(element_at(spec, inverse_rank[element_rank(spec, gen_a(spec, i))]));
    for (std::size_t i = 1; i <= spec.n; ++i)
        images.push_back(element_at(spec, inverse_rank[element_rank(spec, gen_b(spec, i))]));
    return make_automorphism(spec, std::move(images));
}

Automorphism compose_power(const Automorphism& alpha, std::uint64_t k) {
    Automorphism acc = identity_automorphism(alpha.spec);
    Automorphism base = alpha;
    while (k) {
        if (k & 1) acc = compose(acc, base);
        base = compose(base, base);
        k >>= 1;
    }
    return acc;
}

PartialIso restrict_automorphism(const Automorphism& alpha, const Subgroup& h) {
    std::vector<Element> images;
    for (const Element& g : h.elements) images.push_back(alpha.apply(g));
    return PartialIso::from_generator_images(alpha.spec, h.elements, std::move(images));
}

unsigned automorphism_order(const Automorphism& alpha) {
    const GroupSpec& spec = alpha.spec;
    std::vector<std::uint64_t> perm(spec.order());
    for (std::uint64_t k = 0; k < spec.order(); ++k)
        perm[k] = element_rank(spec, alpha.apply(element_at(spec, k)));
    std::vector<bool> seen(spec.order(), false);
    std::uint64_t order = 1;
    for (std::uint64_t k = 0; k < spec.order(); ++k) {
        if (seen[k]) continue;
        std::uint64_t len = 0, at = k;
        while (!seen[at]) {
            seen[at] = true;
            at = perm[at];
            ++len;
        }
        order = std::lcm(order, len);
    }
    return static_cast<unsigned>(order);
}

PartialIsometry restrict_to_v(const PartialIso& phi) {
    const GroupSpec& spec = phi.spec;
    PartialIsometry rho;
    std::vector<Element> picked;
    for (const Element& h : phi.domain.elements) {
        FpVec v = psi(spec, h);
        if (in_span(rho.domain_basis, v)) continue;
        rho.domain_basis.push_back(v);
        rho.image_basis.push_back(psi(spec, phi.apply(h)));
        picked.push_back(h);
    }
    // rho must reproduce psi(phi(h)) for every h, and preserve f.
    if (!rho.domain_basis.empty()) {
        FpMat u_mat = FpMat::from_columns(rho.domain_basis);
        for (const Element& h : phi.domain.elements) {
            auto coords = u_mat.solve(psi(spec, h));
            if (!coords) throw Error("restriction to V is not well-defined");
            FpVec mapped(spec.p, 2 * spec.n);
            for (std::size_t j = 0; j < rho.image_basis.size(); ++j)
                mapped = mapped + rho.image_basis[j].scaled(Fp(coords->c[j], spec.p));
            if (!(mapped == psi(spec, phi.apply(h))))
                throw Error("restriction to V is not well-defined");
        }
    }
    check_f_preserving(rho, derive_forms(spec).f);
    return rho;
}

PartialIso fix_b1_prestep(const PartialIso& phi) {
    const GroupSpec& spec = phi.spec;
    if (spec.family != Family::PMinus)
        throw Error("fix_b1_prestep applies only to the exponent-p^2 family");
    Element b1 = gen_b(spec, 1);
    Subgroup y = y_subgroup(spec);
    if (intersect(phi.domain, y).order() != spec.p)
        throw Error("fix_b1_prestep requires H to meet Y only in the centre");
    if (intersect(phi.codomain, y).order() != spec.p)
        throw Error("fix_b1_prestep requires K to meet Y only in the centre");

    // Kernel condition from the lambda form: h^-1 phi(h) must be
    // killed by lambda for the extension to respect commutation with
    // B_1. Verified, not assumed.
    FormData forms = derive_forms(spec);
    for (const Element& h : phi.domain.elements)
        if (forms.lambda->eval(psi(spec, h)) != forms.lambda->eval(psi(spec, phi.apply(h))))
            throw Error("fix_b1_prestep: phi moves some h off its lambda value");

    std::vector<Element> gens = phi.domain.generators;
    std::vector<Element> images = phi.generator_images;
    gens.push_back(b1);
    images.push_back(b1);
    PartialIso extended = PartialIso::from_generator_images(spec, gens, images);
    if (!(extended.apply(b1) == b1)) throw Error("fix_b1_prestep: B1 image corrupted");
    // The extension must still restrict to phi.
    for (const Element& h : phi.domain.elements)
        if (!(extended.apply(h) == phi.apply(h)))
            throw Error("fix_b1_prestep: extension disagrees with phi on H");
    return extended;
}

FpMat extend_isometry_symplectic(const PartialIsometry& rho, const SymplecticForm& f) {
    check_f_preserving(rho, f);
    unsigned p = f.p();
    std::size_t d = f.dim();
    std::vector<FpVec> us = rho.domain_basis, ws = rho.image_basis;

    // Phase 1: kill the radical of f|_U. Each round pairs the first
    // radical vector with fresh partners on both sides, strictly
    // shrinking the radical.
    for (;;) {
        std::size_t m = us.size();
        if (m == 0) break;
        FpMat gram_u(p, m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) gram_u.set(i, j, f.eval(us[i], us[j]).value());
        std::vector<FpVec> kern = gram_u.kernel_basis();
        if (kern.empty()) break;
        const FpVec& k1 = kern.front();
        std::size_t j0 = 0;
        while (k1.c[j0] == 0) ++j0;
        FpVec rhs(p, m);
        rhs.c[j0] = Fp(k1.c[j0], p).inverse().value();
        auto x = pairing_rows(f, us).solve(rhs);
        auto y = pairing_rows(f, ws).solve(rhs);
        if (!x || !y) throw Error("radical repair system unexpectedly inconsistent");
        us.push_back(*x);
        ws.push_back(*y);
    }

    // Phase 2: f|_U is now nondegenerate; match hyperbolic bases of
    // the two orthogonal complements.
    std::vector<FpVec> uperp, wperp;
    if (us.empty()) {
        for (std::size_t i = 0; i < d; ++i) uperp.push_back(unit_vec(p, d, i));
        wperp = uperp;
    } else {
        uperp = pairing_rows(f, us).kernel_basis();
        wperp = pairing_rows(f, ws).kernel_basis();
    }
    std::vector<FpVec> cu = us, cw = ws;
    if (!uperp.empty()) {
        SymplecticPairs pu = symplectic_pairs(f, uperp);
        SymplecticPairs pw = symplectic_pairs(f, wperp);
        cu.insert(cu.end(), pu.b.begin(), pu.b.end());
        cu.insert(cu.end(), pu.a.begin(), pu.a.end());
        cw.insert(cw.end(), pw.b.begin(), pw.b.end());
        cw.insert(cw.end(), pw.a.begin(), pw.a.end());
    }
    FpMat bu = FpMat::from_columns(cu);
    auto bu_inv = bu.inverse();
    if (!bu_inv) throw Error("completed basis is singular");
    FpMat m = FpMat::from_columns(cw) * *bu_inv;

    if (!(m.transpose() * f.gram * m == f.gram))
        throw Error("symplectic extension contract failed: form not preserved");
    for (std::size_t i = 0; i < rho.domain_basis.size(); ++i)
        if (!(m * rho.domain_basis[i] == rho.image_basis[i]))
            throw Error("symplectic extension contract failed: disagrees with rho");
    return m;
}

namespace {

// Depth-first completion for the quadratic case: deterministic
// candidate order, backtracking on dead branches.
bool complete_quadratic(const QuadraticForm& q, const SymplecticForm& f, std::vector<FpVec>& us,
                        std::vector<FpVec>& ws) {
    std::size_t d = q.dim();
    if (us.size() == d) return true;
    FpVec v = unit_vec(2, d, 0);
    for (std::size_t k = 0; k < d; ++k) {
        v = unit_vec(2, d, k);
        if (!in_span(us, v)) break;
    }
    FpVec rhs(2, us.size());
    for (std::size_t j = 0; j < us.size(); ++j) rhs.c[j] = f.eval(v, us[j]).value();
    for (const FpVec& cand : affine_solutions(pairing_rows(f, ws), rhs)) {
        if (q.eval(cand) != q.eval(v) || in_span(ws, cand)) continue;
        us.push_back(v);
        ws.push_back(cand);
        if (complete_quadratic(q, f, us, ws)) return true;
        us.pop_back();
        ws.pop_back();
    }
    return false;
}

} // namespace

FpMat extend_isometry_quadratic(const PartialIsometry& rho, const QuadraticForm& q) {
    SymplecticForm f = q.polar();
    check_f_preserving(rho, f);
    for (std::size_t i = 0; i < rho.domain_basis.size(); ++i)
        if (q.eval(rho.domain_basis[i]) != q.eval(rho.image_basis[i]))
            throw Error("partial isometry does not preserve the quadratic form");

    std::vector<FpVec> us = rho.domain_basis, ws = rho.image_basis;
    if (!complete_quadratic(q, f, us, ws))
        throw Error("quadratic completion found no extension");
    FpMat bu = FpMat::from_columns(us);
    auto bu_inv = bu.inverse();
    if (!bu_inv) throw Error("completed basis is singular");
    FpMat m = FpMat::from_columns(ws) * *bu_inv;

    if (!(m.transpose() * f.gram * m == f.gram))
        throw Error("quadratic extension contract failed: polar form not preserved");
    for (std::size_t k = 0; k < q.dim(); ++k) {
        FpVec e = unit_vec(2, q.dim(), k);
        if (q.eval(m * e) != q.eval(e))
            throw Error("quadratic extension contract failed: Q not preserved");
    }
    for (std::size_t i = 0; i < rho.domain_basis.size(); ++i)
        if (!(m * rho.domain_basis[i] == rho.image_basis[i]))
            throw Error("quadratic extension contract failed: disagrees with rho");
    return m;
}

Automorphism lift_isometry(const GroupSpec& spec, const FpMat& m) {
    if (m.modulus() != spec.p || m.rows() != 2 * spec.n || m.cols() != 2 * spec.n)
        throw Error("lift_isometry: matrix shape mismatch");
    std::vector<Element> images;
    for (std::size_t i = 1; i <= spec.n; ++i)
        images.push_back(element_from_psi(spec, m * psi(spec, gen_a(spec, i)), 0));
    for (std::size_t i = 1; i <= spec.n; ++i)
        images.push_back(element_from_psi(spec, m * psi(spec, gen_b(spec, i)), 0));
    if (!is_automorphism(spec, images))
        throw Error("lift_isometry: matrix violates the group relations");
    return Automorphism{spec, std::move(images)};
}

Automorphism inner_correction(const Automorphism& alpha, const PartialIso& phi) {
    const GroupSpec& spec = phi.spec;
    SymplecticForm f = derive_forms(spec).f;

    // Same deterministic basis pick as restrict_to_v.
    std::vector<Element> hs;
    std::vector<FpVec> us, ws;
    for (const Element& h : phi.domain.elements) {
        FpVec v = psi(spec, h);
        if (in_span(us, v)) continue;
        us.push_back(v);
        ws.push_back(psi(spec, phi.apply(h)));
        hs.push_back(h);
    }

    Element x = identity(spec);
    if (!hs.empty()) {
        FpMat rows = pairing_rows(f, ws);
        for (std::size_t i = 0; i < hs.size(); ++i) {
            Element ah = alpha.apply(hs[i]);
            Element ph = phi.apply(hs[i]);
            if (!(psi(spec, ah) == psi(spec, ph)))
                throw Error("inner_correction: alpha and phi disagree on psi-images");
            unsigned d_i = (ah.t + spec.p - ph.t) % spec.p;
            if (d_i == 0) continue;
            // g_i pairs to 1 against psi(phi(h_i)) and to 0 against the
            // others; conjugating by it shifts only h_i's C-exponent.
            FpVec target(spec.p, hs.size());
            target.c[i] = 1;
            std::vector<FpVec> sols = affine_solutions(rows, target);
            if (sols.empty()) throw Error("inner_correction: dual element system inconsistent");
            Element g_i = element_from_psi(spec, sols.front(), 0);
            x = mul(spec, x, power(spec, g_i, d_i));
        }
    }
    Automorphism corrected = compose(inner_automorphism(spec, x), alpha);
    for (const Element& h : phi.domain.elements)
        if (!(corrected.apply(h) == phi.apply(h)))
            throw Error("inner_correction: residual disagreement on H");
    return corrected;
}

Automorphism extend_isomorphism(const PartialIso& phi) {
    const GroupSpec& spec = phi.spec;
    if (!(phi.apply(gen_c(spec)) == gen_c(spec)))
        throw Error("hypothesis violated: phi does not fix the centre pointwise");

    PartialIso working = phi;
    if (spec.family == Family::PMinus) {
        Subgroup y = y_subgroup(spec);
        Subgroup hy = intersect(phi.domain, y);
        Subgroup ky = intersect(phi.codomain, y);
        if (!(hy.elements == ky.elements))
            throw Error("hypothesis violated: H and K intersect Y differently");
        if (hy.order() == spec.p * spec.p) {
            for (const Element& e : hy.elements)
                if (!(psi(spec, phi.apply(e)) == psi(spec, e)))
                    throw Error(
                        "hypothesis violated: phi is not the identity on (H meet Y) mod Z");
        } else {
            working = fix_b1_prestep(phi);
        }
    }

    PartialIsometry rho = restrict_to_v(working);
    FormData forms = derive_forms(spec);
    FpMat m = spec.p == 2 ? extend_isometry_quadratic(rho, *forms.q)
                          : extend_isometry_symplectic(rho, forms.f);
    if (spec.family == Family::PMinus) {
        for (std::size_t k = 0; k < 2 * spec.n; ++k) {
            FpVec e = unit_vec(spec.p, 2 * spec.n, k);
            if (forms.lambda->eval(m * e) != forms.lambda->eval(e))
                throw Error("extension lost the lambda form");
        }
    }
    Automorphism alpha = inner_correction(lift_isometry(spec, m), working);
    for (const Element& h : phi.domain.elements)
        if (!(alpha.apply(h) == phi.apply(h)))
            throw Error("extension does not restrict to phi");
    return alpha;
}

Automorphism random_automorphism(const GroupSpec& spec, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    auto draw = [&eng](std::uint64_t bound) { return eng() % bound; };

    FormData forms = derive_forms(spec);
    const SymplecticForm& f = forms.f;
    std::size_t d = 2 * spec.n;
    std::vector<FpVec> ws;
    // Any central-fixing automorphism of the exponent-p^2 family fixes
    // the B_1-direction, so seeding it costs no generality.
    if (spec.family == Family::PMinus) ws.push_back(unit_vec(spec.p, d, 0));

    while (ws.size() < d) {
        std::size_t k = ws.size();
        FpVec v = unit_vec(spec.p, d, k);
        FpVec rhs(spec.p, k);
        for (std::size_t j = 0; j < k; ++j)
            rhs.c[j] = f.eval(v, unit_vec(spec.p, d, j)).value();
        std::vector<FpVec> valid;
        for (const FpVec& cand : affine_solutions(pairing_rows(f, ws), rhs)) {
            if (in_span(ws, cand)) continue;
            if (forms.q && forms.q->eval(cand) != forms.q->eval(v)) continue;
            valid.push_back(cand);
        }
        if (valid.empty()) throw Error("random isometry completion dead-ended");
        ws.push_back(valid[draw(valid.size())]);
    }
    Automorphism iso = lift_isometry(spec, FpMat::from_columns(ws));
    Element x = element_at(spec, draw(spec.order()));
    return compose(inner_automorphism(spec, x), iso);
}

std::optional<std::pair<Automorphism, unsigned>> find_pprime_automorphism(
    const GroupSpec& spec, std::uint64_t seed_limit) {
    for (std::uint64_t seed = 0; seed < seed_limit; ++seed) {
        Automorphism alpha = random_automorphism(spec, seed);
        unsigned order = automorphism_order(alpha);
        std::uint64_t ppart = 1;
        while (order % spec.p == 0) {
            ppart *= spec.p;
            order /= spec.p;
        }
        if (order <= 1) continue;
        Automorphism beta = compose_power(alpha, ppart);
        if (automorphism_order(beta) != order)
            throw Error("p-part stripping produced the wrong order");
        return std::make_pair(std::move(beta), order);
    }
    return std::nullopt;
}

} // namespace esp

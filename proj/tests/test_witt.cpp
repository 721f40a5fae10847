#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "esp/witt.hpp"
#include "support/aut_oracle.hpp"
#include "support/lattice_oracle.hpp"

using namespace esp;

namespace {

std::vector<GroupSpec> grid_specs() {
    return {
        GroupSpec(Family::TwoPlus, 2, 1),  GroupSpec(Family::TwoMinus, 2, 1),
        GroupSpec(Family::TwoPlus, 2, 2),  GroupSpec(Family::TwoMinus, 2, 2),
        GroupSpec(Family::PPlus, 3, 1),    GroupSpec(Family::PMinus, 3, 1),
        GroupSpec(Family::PPlus, 3, 2),    GroupSpec(Family::PMinus, 3, 2),
        GroupSpec(Family::PPlus, 5, 1),    GroupSpec(Family::PMinus, 5, 1),
    };
}

Subgroup random_subgroup_with_z(const GroupSpec& spec, std::uint64_t seed) {
    std::mt19937_64 eng(seed ^ 0x5EEDBA5Eu);
    std::vector<Element> gens{gen_c(spec)};
    std::size_t extra = eng() % 3;
    for (std::size_t i = 0; i < extra; ++i)
        gens.push_back(element_at(spec, eng() % spec.order()));
    return closure(spec, gens);
}

bool perm_restricts_to(const std::vector<std::uint64_t>& perm, const PartialIso& phi) {
    for (std::size_t i = 0; i < phi.domain.elements.size(); ++i)
        if (perm[element_rank(phi.spec, phi.domain.elements[i])] !=
            element_rank(phi.spec, phi.image_by_index[i]))
            return false;
    return true;
}

// The extension theorem's hypotheses beyond phi being a Z-fixing
// isomorphism: vacuous except in the PMinus family.
bool extension_hypotheses_hold(const PartialIso& phi) {
    const GroupSpec& spec = phi.spec;
    if (spec.family != Family::PMinus) return true;
    Subgroup y = y_subgroup(spec);
    Subgroup hy = intersect(phi.domain, y);
    Subgroup ky = intersect(phi.codomain, y);
    if (!(hy.elements == ky.elements)) return false;
    if (hy.order() == static_cast<std::size_t>(spec.p) * spec.p)
        for (const Element& e : hy.elements)
            if (psi(spec, phi.apply(e)) != psi(spec, e)) return false;
    return true;
}

bool preserves_forms(const GroupSpec& spec, const FpMat& m) {
    FormData forms = derive_forms(spec);
    if (m.transpose() * forms.f.gram * m != forms.f.gram) return false;
    for (std::size_t k = 0; k < 2 * spec.n; ++k) {
        FpVec e = unit_vec(spec.p, 2 * spec.n, k);
        if (forms.q && forms.q->eval(m * e) != forms.q->eval(e)) return false;
        if (spec.family == Family::PMinus &&
            forms.lambda->eval(m * e) != forms.lambda->eval(e))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("identity and inner automorphisms are valid; broken images are not") {
    for (const GroupSpec& spec : grid_specs()) {
        CAPTURE(spec.to_string());
        Automorphism id = identity_automorphism(spec);
        CHECK(is_automorphism(spec, id.images));
        for (std::uint64_t k = 0; k < spec.order(); k += 7) {
            Element g = element_at(spec, k);
            Automorphism inner = inner_automorphism(spec, g);
            CHECK(is_automorphism(spec, inner.images));
            for (std::uint64_t j = 0; j < spec.order(); j += 11)
                CHECK(inner.apply(element_at(spec, j)) ==
                      conjugate(spec, element_at(spec, j), g));
        }
        // Collapsing A_1 and B_1 onto the same image is not injective.
        std::vector<Element> bad = id.images;
        bad[spec.n] = gen_a(spec, 1);
        CHECK_FALSE(is_automorphism(spec, bad));
        CHECK_THROWS_AS(make_automorphism(spec, bad), Error);
    }
}

TEST_CASE("automorphism algebra: composition, inversion, powers, order") {
    for (const GroupSpec& spec :
         {GroupSpec(Family::TwoMinus, 2, 2), GroupSpec(Family::PMinus, 3, 1),
          GroupSpec(Family::PPlus, 3, 2)}) {
        CAPTURE(spec.to_string());
        CHECK(automorphism_order(identity_automorphism(spec)) == 1);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            Automorphism a = random_automorphism(spec, seed);
            Automorphism b = random_automorphism(spec, seed + 100);
            Automorphism ab = compose(a, b);
            for (std::uint64_t k = 0; k < spec.order(); k += 5)
                CHECK(ab.apply(element_at(spec, k)) == a.apply(b.apply(element_at(spec, k))));
            Automorphism ainv = invert(a);
            CHECK(compose(a, ainv).images == identity_automorphism(spec).images);
            CHECK(compose(ainv, a).images == identity_automorphism(spec).images);
            unsigned ord = automorphism_order(a);
            CHECK(ord >= 1);
            CHECK(compose_power(a, ord).images == identity_automorphism(spec).images);
            if (ord > 1)
                CHECK(compose_power(a, ord - 1).images != identity_automorphism(spec).images);
        }
    }
}

TEST_CASE("psi matrix of any automorphism preserves the forms") {
    for (const GroupSpec& spec : grid_specs()) {
        CAPTURE(spec.to_string());
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Automorphism a = random_automorphism(spec, seed);
            FpMat m = a.psi_matrix();
            CHECK(preserves_forms(spec, m));
            // The inner part is invisible at the psi level.
            Automorphism shifted =
                compose(inner_automorphism(spec, element_at(spec, seed % spec.order())), a);
            CHECK(shifted.psi_matrix() == m);
        }
    }
}

TEST_CASE("partial isomorphism construction validates eagerly") {
    GroupSpec d8(Family::TwoPlus, 2, 1);
    Element a1 = gen_a(d8, 1), b1 = gen_b(d8, 1), c = gen_c(d8);

    SUBCASE("valid map between the two elementary abelian maximals") {
        PartialIso phi = PartialIso::from_generator_images(d8, {a1, c}, {b1, c});
        CHECK(phi.domain.order() == 4);
        CHECK(phi.codomain.order() == 4);
        CHECK(phi.apply(a1) == b1);
        CHECK(phi.apply(c) == c);
        CHECK(phi.apply(mul(d8, a1, c)) == mul(d8, b1, c));
    }
    SUBCASE("identity on a subgroup") {
        Subgroup h = closure(d8, {a1, c});
        PartialIso phi = PartialIso::identity_on(d8, h);
        for (const Element& g : h.elements) CHECK(phi.apply(g) == g);
    }
    SUBCASE("order mismatch is rejected") {
        // A_1 has order 2 but A_1 B_1 has order 4.
        CHECK_THROWS_AS(
            PartialIso::from_generator_images(d8, {a1, c}, {mul(d8, a1, b1), c}), Error);
    }
    SUBCASE("non-injective images are rejected") {
        CHECK_THROWS_AS(PartialIso::from_generator_images(d8, {a1, b1}, {a1, a1}), Error);
    }
    SUBCASE("domain must contain the centre") {
        CHECK_THROWS_AS(PartialIso::from_generator_images(d8, {a1}, {a1}), Error);
    }
    SUBCASE("the centre must be fixed pointwise") {
        GroupSpec e27(Family::PPlus, 3, 1);
        Element cc = gen_c(e27);
        CHECK_THROWS_AS(
            PartialIso::from_generator_images(e27, {cc}, {power(e27, cc, 2)}), Error);
    }
    SUBCASE("applying outside the domain throws") {
        PartialIso phi = PartialIso::identity_on(d8, closure(d8, {a1, c}));
        CHECK_THROWS_AS(phi.apply(b1), Error);
    }
}

TEST_CASE("restriction to V: central twists vanish") {
    SUBCASE("identity restricts to the identity isometry") {
        GroupSpec spec(Family::PPlus, 3, 2);
        Subgroup h = closure(spec, {gen_a(spec, 1), gen_b(spec, 2), gen_c(spec)});
        PartialIsometry rho = restrict_to_v(PartialIso::identity_on(spec, h));
        CHECK(rho.domain_basis == rho.image_basis);
        CHECK(rho.domain_basis.size() == 2);
    }
    SUBCASE("A1 -> A1 C restricts to the identity on a line") {
        for (const GroupSpec& spec :
             {GroupSpec(Family::TwoPlus, 2, 1), GroupSpec(Family::PMinus, 3, 1)}) {
            CAPTURE(spec.to_string());
            Element a1 = gen_a(spec, 1), c = gen_c(spec);
            PartialIso phi =
                PartialIso::from_generator_images(spec, {a1, c}, {mul(spec, a1, c), c});
            PartialIsometry rho = restrict_to_v(phi);
            REQUIRE(rho.domain_basis.size() == 1);
            CHECK(rho.domain_basis[0] == psi(spec, a1));
            CHECK(rho.image_basis[0] == psi(spec, a1));
        }
    }
    SUBCASE("restrictions of random automorphisms preserve f") {
        for (const GroupSpec& spec : grid_specs()) {
            CAPTURE(spec.to_string());
            SymplecticForm f = derive_forms(spec).f;
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                Automorphism a = random_automorphism(spec, seed);
                Subgroup h = random_subgroup_with_z(spec, seed);
                PartialIsometry rho = restrict_to_v(restrict_automorphism(a, h));
                for (std::size_t i = 0; i < rho.domain_basis.size(); ++i)
                    for (std::size_t j = 0; j < rho.domain_basis.size(); ++j)
                        CHECK(f.eval(rho.domain_basis[i], rho.domain_basis[j]) ==
                              f.eval(rho.image_basis[i], rho.image_basis[j]));
            }
        }
    }
}

TEST_CASE("B1 prestep: extends with B1 fixed when H meets Y only in the centre") {
    GroupSpec m27(Family::PMinus, 3, 1);
    Element a1 = gen_a(m27, 1), b1 = gen_b(m27, 1), c = gen_c(m27);

    SUBCASE("identity on Z extends to the identity on Y") {
        PartialIso phi = PartialIso::identity_on(m27, center_subgroup(m27));
        PartialIso ext = fix_b1_prestep(phi);
        CHECK(ext.domain == y_subgroup(m27));
        for (const Element& g : ext.domain.elements) CHECK(ext.apply(g) == g);
    }
    SUBCASE("identity on <A1> gains B1 -> B1") {
        PartialIso phi = PartialIso::identity_on(m27, closure(m27, {a1}));
        PartialIso ext = fix_b1_prestep(phi);
        CHECK(ext.apply(b1) == b1);
        CHECK(ext.apply(a1) == a1);
        CHECK(ext.domain.order() == 27);
    }
    SUBCASE("twist A1 -> A1 C still extends and respects commutation with B1") {
        PartialIso phi =
            PartialIso::from_generator_images(m27, {a1, c}, {mul(m27, a1, c), c});
        PartialIso ext = fix_b1_prestep(phi);
        CHECK(ext.apply(b1) == b1);
        CHECK(ext.apply(a1) == mul(m27, a1, c));
        for (const Element& h : ext.domain.elements)
            CHECK(ext.apply(commutator(m27, h, b1)) ==
                  commutator(m27, ext.apply(h), b1));
    }
    SUBCASE("precondition: H meeting Y fully is rejected") {
        PartialIso phi = PartialIso::identity_on(m27, y_subgroup(m27));
        CHECK_THROWS_AS(fix_b1_prestep(phi), Error);
    }
    SUBCASE("precondition: wrong family is rejected") {
        GroupSpec e27(Family::PPlus, 3, 1);
        PartialIso phi = PartialIso::identity_on(e27, center_subgroup(e27));
        CHECK_THROWS_AS(fix_b1_prestep(phi), Error);
    }
    SUBCASE("works at n = 2 as well") {
        GroupSpec spec(Family::PMinus, 3, 2);
        Element a = gen_a(spec, 1), cc = gen_c(spec);
        PartialIso phi =
            PartialIso::from_generator_images(spec, {a, cc}, {mul(spec, a, cc), cc});
        PartialIso ext = fix_b1_prestep(phi);
        CHECK(ext.apply(gen_b(spec, 1)) == gen_b(spec, 1));
        CHECK(ext.domain.order() == 27);
    }
}

TEST_CASE("symplectic extension: pinned examples") {
    SUBCASE("identity on a line") {
        SymplecticForm f = SymplecticForm::standard(3, 1);
        FpVec e0 = unit_vec(3, 2, 0);
        FpMat m = extend_isometry_symplectic(PartialIsometry{{e0}, {e0}}, f);
        CHECK(m.transpose() * f.gram * m == f.gram);
        CHECK(m * e0 == e0);
    }
    SUBCASE("hyperbolic pair swap, p = 2, dim 4") {
        SymplecticForm f = SymplecticForm::standard(2, 2);
        FpVec e0 = unit_vec(2, 4, 0), e2 = unit_vec(2, 4, 2);
        FpMat m = extend_isometry_symplectic(PartialIsometry{{e0, e2}, {e2, e0}}, f);
        CHECK(m.transpose() * f.gram * m == f.gram);
        CHECK(m * e0 == e2);
        CHECK(m * e2 == e0);
    }
    SUBCASE("signed hyperbolic pair swap, p = 3, dim 4") {
        SymplecticForm f = SymplecticForm::standard(3, 2);
        FpVec e0 = unit_vec(3, 4, 0), e2 = unit_vec(3, 4, 2);
        FpVec minus_e0 = e0.scaled(Fp(-1, 3));
        FpMat m =
            extend_isometry_symplectic(PartialIsometry{{e0, e2}, {e2, minus_e0}}, f);
        CHECK(m.transpose() * f.gram * m == f.gram);
        CHECK(m * e0 == e2);
        CHECK(m * e2 == minus_e0);
    }
    SUBCASE("unsigned swap over p = 3 is rejected as non-isometric") {
        SymplecticForm f = SymplecticForm::standard(3, 2);
        FpVec e0 = unit_vec(3, 4, 0), e2 = unit_vec(3, 4, 2);
        CHECK_THROWS_AS(
            extend_isometry_symplectic(PartialIsometry{{e0, e2}, {e2, e0}}, f), Error);
    }
    SUBCASE("dependent domain vectors are rejected") {
        SymplecticForm f = SymplecticForm::standard(3, 1);
        FpVec e0 = unit_vec(3, 2, 0);
        CHECK_THROWS_AS(
            extend_isometry_symplectic(PartialIsometry{{e0, e0}, {e0, e0}}, f), Error);
    }
    SUBCASE("totally isotropic domain exercises the radical repair") {
        SymplecticForm f = SymplecticForm::standard(3, 2);
        FpVec e0 = unit_vec(3, 4, 0), e1 = unit_vec(3, 4, 1);
        FpMat m = extend_isometry_symplectic(PartialIsometry{{e0, e1}, {e1, e0}}, f);
        CHECK(m.transpose() * f.gram * m == f.gram);
        CHECK(m * e0 == e1);
        CHECK(m * e1 == e0);
    }
    SUBCASE("empty partial map completes to a full isometry") {
        for (unsigned p : {3u, 7u}) {
            SymplecticForm f = SymplecticForm::standard(p, 2);
            FpMat m = extend_isometry_symplectic(PartialIsometry{}, f);
            CHECK(m.transpose() * f.gram * m == f.gram);
        }
    }
}

TEST_CASE("symplectic extension preserves lambda once the B1 direction is pinned") {
    for (const GroupSpec& spec :
         {GroupSpec(Family::PMinus, 3, 1), GroupSpec(Family::PMinus, 3, 2),
          GroupSpec(Family::PMinus, 5, 1)}) {
        CAPTURE(spec.to_string());
        FormData forms = derive_forms(spec);
        std::size_t d = 2 * spec.n;
        FpVec b1dir = psi(spec, gen_b(spec, 1));
        FpMat m = extend_isometry_symplectic(PartialIsometry{{b1dir}, {b1dir}}, forms.f);
        for (std::size_t k = 0; k < d; ++k) {
            FpVec e = unit_vec(spec.p, d, k);
            CHECK(forms.lambda->eval(m * e) == forms.lambda->eval(e));
        }
    }
}

TEST_CASE("symplectic extension: random partial data from true isometries") {
    for (const GroupSpec& spec :
         {GroupSpec(Family::PPlus, 3, 1), GroupSpec(Family::PPlus, 3, 2),
          GroupSpec(Family::PMinus, 3, 2), GroupSpec(Family::PPlus, 5, 1)}) {
        CAPTURE(spec.to_string());
        SymplecticForm f = derive_forms(spec).f;
        std::size_t d = 2 * spec.n;
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            FpMat truth = random_automorphism(spec, seed).psi_matrix();
            std::mt19937_64 eng(seed);
            PartialIsometry rho;
            for (std::size_t k = 0; k < d; ++k) {
                if (eng() % 2) continue;
                rho.domain_basis.push_back(unit_vec(spec.p, d, k));
                rho.image_basis.push_back(truth * unit_vec(spec.p, d, k));
            }
            FpMat m = extend_isometry_symplectic(rho, f);
            CHECK(m.transpose() * f.gram * m == f.gram);
            for (std::size_t i = 0; i < rho.domain_basis.size(); ++i)
                CHECK(m * rho.domain_basis[i] == rho.image_basis[i]);
        }
    }
}

TEST_CASE("quadratic extension: pinned examples") {
    GroupSpec d8(Family::TwoPlus, 2, 1);
    QuadraticForm q = *derive_forms(d8).q;
    FpVec e0 = unit_vec(2, 2, 0), e1 = unit_vec(2, 2, 1);

    SUBCASE("identity on a line") {
        FpMat m = extend_isometry_quadratic(PartialIsometry{{e1}, {e1}}, q);
        CHECK(m * e1 == e1);
        for (const FpVec& v : all_vectors(2, 2)) CHECK(q.eval(m * v) == q.eval(v));
    }
    SUBCASE("swapping the two singular directions, checked against all isometries") {
        FpMat m = extend_isometry_quadratic(PartialIsometry{{e1}, {e0}}, q);
        CHECK(m * e1 == e0);
        // Independent census: of the 6 invertible 2x2 matrices over
        // F_2, exactly two preserve this form, and the output is one.
        std::vector<FpMat> isometries;
        for (const FpVec& entries : all_vectors(2, 4)) {
            FpMat cand(2, 2, 2);
            cand.set(0, 0, entries.c[0]);
            cand.set(0, 1, entries.c[1]);
            cand.set(1, 0, entries.c[2]);
            cand.set(1, 1, entries.c[3]);
            if (!cand.invertible()) continue;
            bool keeps_q = true;
            for (const FpVec& v : all_vectors(2, 2))
                if (q.eval(cand * v) != q.eval(v)) keeps_q = false;
            if (keeps_q) isometries.push_back(cand);
        }
        CHECK(isometries.size() == 2);
        CHECK(std::count(isometries.begin(), isometries.end(), m) == 1);
    }
    SUBCASE("mismatched Q-values are rejected") {
        FpVec diag(2, std::vector<long long>{1, 1});
        CHECK_THROWS_AS(extend_isometry_quadratic(PartialIsometry{{e1}, {diag}}, q), Error);
    }
    SUBCASE("anisotropic form admits the same swap") {
        GroupSpec q8(Family::TwoMinus, 2, 1);
        QuadraticForm qm = *derive_forms(q8).q;
        FpMat m = extend_isometry_quadratic(PartialIsometry{{e1}, {e0}}, qm);
        CHECK(m * e1 == e0);
        for (const FpVec& v : all_vectors(2, 2)) CHECK(qm.eval(m * v) == qm.eval(v));
    }
    SUBCASE("empty partial map completes") {
        GroupSpec spec(Family::TwoMinus, 2, 2);
        QuadraticForm q4 = *derive_forms(spec).q;
        FpMat m = extend_isometry_quadratic(PartialIsometry{}, q4);
        for (const FpVec& v : all_vectors(2, 4)) CHECK(q4.eval(m * v) == q4.eval(v));
    }
}

TEST_CASE("quadratic extension: random partial data from true isometries") {
    for (const GroupSpec& spec :
         {GroupSpec(Family::TwoPlus, 2, 1), GroupSpec(Family::TwoMinus, 2, 1),
          GroupSpec(Family::TwoPlus, 2, 2), GroupSpec(Family::TwoMinus, 2, 2)}) {
        CAPTURE(spec.to_string());
        QuadraticForm q = *derive_forms(spec).q;
        SymplecticForm f = q.polar();
        std::size_t d = 2 * spec.n;
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            FpMat truth = random_automorphism(spec, seed).psi_matrix();
            std::mt19937_64 eng(seed);
            PartialIsometry rho;
            for (std::size_t k = 0; k < d; ++k) {
                if (eng() % 2) continue;
                rho.domain_basis.push_back(unit_vec(2, d, k));
                rho.image_basis.push_back(truth * unit_vec(2, d, k));
            }
            FpMat m = extend_isometry_quadratic(rho, q);
            CHECK(m.transpose() * f.gram * m == f.gram);
            for (const FpVec& v : all_vectors(2, d)) CHECK(q.eval(m * v) == q.eval(v));
            for (std::size_t i = 0; i < rho.domain_basis.size(); ++i)
                CHECK(m * rho.domain_basis[i] == rho.image_basis[i]);
        }
    }
}

TEST_CASE("isometry lift: pinned examples") {
    SUBCASE("identity matrix lifts to the identity automorphism") {
        for (const GroupSpec& spec : grid_specs()) {
            CAPTURE(spec.to_string());
            Automorphism a = lift_isometry(spec, FpMat::identity(spec.p, 2 * spec.n));
            CHECK(a.images == identity_automorphism(spec).images);
        }
    }
    SUBCASE("rotation exchanges the generators up to inversion") {
        GroupSpec e27(Family::PPlus, 3, 1);
        FpVec col0(3, std::vector<long long>{0, -1});
        FpVec col1(3, std::vector<long long>{1, 0});
        Automorphism a = lift_isometry(e27, FpMat::from_columns({col0, col1}));
        CHECK(a.image_a(1) == gen_b(e27, 1));
        CHECK(a.image_b(1) == power(e27, gen_a(e27, 1), -1));
        CHECK(a.apply(gen_c(e27)) == gen_c(e27));
    }
    SUBCASE("the same rotation violates the power relation in the exponent-9 group") {
        GroupSpec m27(Family::PMinus, 3, 1);
        FpVec col0(3, std::vector<long long>{0, -1});
        FpVec col1(3, std::vector<long long>{1, 0});
        CHECK_THROWS_AS(lift_isometry(m27, FpMat::from_columns({col0, col1})), Error);
    }
    SUBCASE("a shear lifts for the anisotropic form but not the split one") {
        FpVec col0(2, std::vector<long long>{1, 0});
        FpVec col1(2, std::vector<long long>{1, 1});
        FpMat shear = FpMat::from_columns({col0, col1});
        GroupSpec q8(Family::TwoMinus, 2, 1);
        Automorphism a = lift_isometry(q8, shear);
        CHECK(a.image_a(1) == mul(q8, gen_b(q8, 1), gen_a(q8, 1)));
        GroupSpec d8(Family::TwoPlus, 2, 1);
        CHECK_THROWS_AS(lift_isometry(d8, shear), Error);
    }
    SUBCASE("shape mismatch throws") {
        GroupSpec d8(Family::TwoPlus, 2, 1);
        CHECK_THROWS_AS(lift_isometry(d8, FpMat::identity(2, 4)), Error);
        CHECK_THROWS_AS(lift_isometry(d8, FpMat::identity(3, 2)), Error);
    }
}

TEST_CASE("inner correction: single discrepancy fixed by one conjugation") {
    GroupSpec d8(Family::TwoPlus, 2, 1);
    Element a1 = gen_a(d8, 1), b1 = gen_b(d8, 1);
    PartialIso phi = PartialIso::identity_on(d8, closure(d8, {a1, gen_c(d8)}));
    Automorphism alpha = inner_automorphism(d8, b1);
    CHECK(alpha.apply(a1) == mul(d8, a1, gen_c(d8)));
    Automorphism corrected = inner_correction(alpha, phi);
    CHECK(corrected.images == identity_automorphism(d8).images);
}

TEST_CASE("inner correction: random discrepancies are fully corrected") {
    for (const GroupSpec& spec : grid_specs()) {
        CAPTURE(spec.to_string());
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Automorphism base = random_automorphism(spec, seed);
            Subgroup h = random_subgroup_with_z(spec, seed);
            PartialIso phi = restrict_automorphism(base, h);
            Element x = element_at(spec, (seed * 37) % spec.order());
            Automorphism shifted = compose(inner_automorphism(spec, x), base);
            Automorphism corrected = inner_correction(shifted, phi);
            CHECK(is_automorphism(spec, corrected.images));
            for (const Element& g : h.elements) CHECK(corrected.apply(g) == phi.apply(g));
        }
    }
}

TEST_CASE("inner correction rejects psi-level disagreement") {
    GroupSpec d8(Family::TwoPlus, 2, 1);
    Element a1 = gen_a(d8, 1), b1 = gen_b(d8, 1);
    Automorphism swap = make_automorphism(d8, {b1, a1});
    PartialIso phi = PartialIso::identity_on(d8, closure(d8, {a1, gen_c(d8)}));
    CHECK_THROWS_AS(inner_correction(swap, phi), Error);
}

TEST_CASE("full extension: pinned examples") {
    SUBCASE("identity partial maps extend to automorphisms restricting to the identity") {
        for (const GroupSpec& spec : grid_specs()) {
            CAPTURE(spec.to_string());
            for (const Subgroup& h :
                 {center_subgroup(spec), maximal_subgroups(spec).front(), full_group(spec)}) {
                Automorphism a = extend_isomorphism(PartialIso::identity_on(spec, h));
                CHECK(is_automorphism(spec, a.images));
                for (const Element& g : h.elements) CHECK(a.apply(g) == g);
            }
        }
    }
    SUBCASE("A1 -> A1 C is realized, matching conjugation by B1") {
        GroupSpec d8(Family::TwoPlus, 2, 1);
        Element a1 = gen_a(d8, 1), c = gen_c(d8);
        PartialIso phi =
            PartialIso::from_generator_images(d8, {a1, c}, {mul(d8, a1, c), c});
        Automorphism alpha = extend_isomorphism(phi);
        CHECK(alpha.apply(a1) == mul(d8, a1, c));
        CHECK(conjugate(d8, a1, gen_b(d8, 1)) == mul(d8, a1, c));
    }
    SUBCASE("identity on Y extends to an automorphism fixing Y pointwise") {
        GroupSpec m27(Family::PMinus, 3, 1);
        Subgroup y = y_subgroup(m27);
        Automorphism alpha = extend_isomorphism(PartialIso::identity_on(m27, y));
        for (const Element& g : y.elements) CHECK(alpha.apply(g) == g);
    }
}

TEST_CASE("full extension: the PMinus hypotheses are enforced") {
    GroupSpec m27(Family::PMinus, 3, 1);
    Element b1 = gen_b(m27, 1), c = gen_c(m27);
    Subgroup y = y_subgroup(m27);

    SUBCASE("a central twist of B1 on Y is fine") {
        PartialIso phi =
            PartialIso::from_generator_images(m27, {b1, c}, {mul(m27, b1, c), c});
        Automorphism alpha = extend_isomorphism(phi);
        CHECK(alpha.apply(b1) == mul(m27, b1, c));
    }
    SUBCASE("moving B1 off its psi-image on Y is rejected") {
        PartialIso phi =
            PartialIso::from_generator_images(m27, {b1, c}, {power(m27, b1, 2), c});
        CHECK(phi.domain == y);
        CHECK_THROWS_AS(extend_isomorphism(phi), Error);
    }
    SUBCASE("mismatched Y-intersections are rejected both ways") {
        GroupSpec spec(Family::PMinus, 3, 2);
        Element bb1 = gen_b(spec, 1), bb2 = gen_b(spec, 2), cc = gen_c(spec);
        PartialIso into = PartialIso::from_generator_images(spec, {bb1, cc}, {bb2, cc});
        CHECK_THROWS_AS(extend_isomorphism(into), Error);
        PartialIso outof = PartialIso::from_generator_images(spec, {bb2, cc}, {bb1, cc});
        CHECK_THROWS_AS(extend_isomorphism(outof), Error);
    }
}

TEST_CASE("full extension: round-trip over random automorphisms and subgroups") {
    for (const GroupSpec& spec : grid_specs()) {
        CAPTURE(spec.to_string());
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            Automorphism alpha = random_automorphism(spec, seed);
            Subgroup h = random_subgroup_with_z(spec, seed);
            PartialIso phi = restrict_automorphism(alpha, h);
            // In the PMinus family the hypotheses hold automatically
            // for restrictions of central-fixing automorphisms.
            CHECK(extension_hypotheses_hold(phi));
            Automorphism beta = extend_isomorphism(phi);
            CHECK(is_automorphism(spec, beta.images));
            for (const Element& g : h.elements) CHECK(beta.apply(g) == alpha.apply(g));
        }
    }
}

TEST_CASE("exhaustive n = 1 check: the hypotheses characterize extendability") {
    struct Case {
        GroupSpec spec;
        std::size_t aut_count;
    };
    std::vector<Case> cases = {
        {GroupSpec(Family::TwoPlus, 2, 1), 8},
        {GroupSpec(Family::TwoMinus, 2, 1), 24},
        {GroupSpec(Family::PPlus, 3, 1), 216},
        {GroupSpec(Family::PMinus, 3, 1), 27},
    };
    for (const Case& cs : cases) {
        CAPTURE(cs.spec.to_string());
        std::vector<Automorphism> auts = support::all_z_fixing_automorphisms(cs.spec);
        CHECK(auts.size() == cs.aut_count);
        std::vector<std::vector<std::uint64_t>> perms;
        for (const Automorphism& a : auts) perms.push_back(support::permutation_table(a));

        std::size_t tested = 0;
        for (const Subgroup& h : support::all_subgroups(full_group(cs.spec))) {
            if (!h.contains(gen_c(cs.spec))) continue;
            std::vector<PartialIso> isos = support::all_partial_isos(h);
            if (h.order() == cs.spec.order()) CHECK(isos.size() == cs.aut_count);
            for (const PartialIso& phi : isos) {
                ++tested;
                bool hyp = extension_hypotheses_hold(phi);
                bool extendable = false;
                for (const auto& perm : perms)
                    if (perm_restricts_to(perm, phi)) {
                        extendable = true;
                        break;
                    }
                CHECK(hyp == extendable);
                if (hyp) {
                    Automorphism alpha = extend_isomorphism(phi);
                    CHECK(is_automorphism(cs.spec, alpha.images));
                    for (const Element& g : phi.domain.elements)
                        CHECK(alpha.apply(g) == phi.apply(g));
                } else {
                    CHECK_THROWS_AS(extend_isomorphism(phi), Error);
                }
            }
        }
        CHECK(tested > cs.aut_count);
    }
}

TEST_CASE("random automorphisms: reproducible, valid, form-preserving") {
    for (const GroupSpec& spec : grid_specs()) {
        CAPTURE(spec.to_string());
        std::set<std::vector<std::uint64_t>> distinct;
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            Automorphism a = random_automorphism(spec, seed);
            CHECK(is_automorphism(spec, a.images));
            CHECK(preserves_forms(spec, a.psi_matrix()));
            if (spec.family == Family::PMinus)
                CHECK(a.psi_matrix().col(0) == psi(spec, gen_b(spec, 1)));
            Automorphism again = random_automorphism(spec, seed);
            CHECK(a.images == again.images);
            distinct.insert(support::permutation_table(a));
        }
        CHECK(distinct.size() > 4);
    }
}

TEST_CASE("random automorphisms reach the whole central-fixing group at n = 1") {
    struct Case {
        GroupSpec spec;
        std::uint64_t seeds;
    };
    std::vector<Case> cases = {
        {GroupSpec(Family::TwoPlus, 2, 1), 64},
        {GroupSpec(Family::TwoMinus, 2, 1), 256},
        {GroupSpec(Family::PMinus, 3, 1), 256},
        {GroupSpec(Family::PPlus, 3, 1), 3000},
    };
    for (const Case& cs : cases) {
        CAPTURE(cs.spec.to_string());
        std::set<std::vector<std::uint64_t>> target;
        for (const Automorphism& a : support::all_z_fixing_automorphisms(cs.spec))
            target.insert(support::permutation_table(a));
        std::set<std::vector<std::uint64_t>> reached;
        for (std::uint64_t seed = 0; seed < cs.seeds; ++seed)
            reached.insert(support::permutation_table(random_automorphism(cs.spec, seed)));
        CHECK(reached == target);
    }
}

TEST_CASE("automorphisms of order coprime to p: found where they exist") {
    SUBCASE("anisotropic 2-group has one of order 3") {
        auto found = find_pprime_automorphism(GroupSpec(Family::TwoMinus, 2, 1));
        REQUIRE(found.has_value());
        CHECK(found->second == 3);
        CHECK(automorphism_order(found->first) == 3);
    }
    SUBCASE("exponent-3 group of order 27 has one of even order") {
        auto found = find_pprime_automorphism(GroupSpec(Family::PPlus, 3, 1));
        REQUIRE(found.has_value());
        CHECK(found->second > 1);
        CHECK(found->second % 3 != 0);
        CHECK(automorphism_order(found->first) == found->second);
    }
    SUBCASE("exponent-9 group of order 27 has none") {
        CHECK_FALSE(find_pprime_automorphism(GroupSpec(Family::PMinus, 3, 1)).has_value());
    }
    SUBCASE("dihedral group of order 8 has none") {
        CHECK_FALSE(find_pprime_automorphism(GroupSpec(Family::TwoPlus, 2, 1)).has_value());
    }
    SUBCASE("exponent-9 group of order 243 has one") {
        auto found = find_pprime_automorphism(GroupSpec(Family::PMinus, 3, 2));
        REQUIRE(found.has_value());
        CHECK(found->second % 3 != 0);
        CHECK(automorphism_order(found->first) == found->second);
    }
}

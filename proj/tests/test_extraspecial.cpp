#include <doctest.h>

#include <random>

#include "esp/extraspecial.hpp"
#include "support/rewrite_oracle.hpp"

using namespace esp;

namespace {

std::vector<GroupSpec> small_specs() {
    // Everything of order <= 128: exhaustive territory.
    return {
        GroupSpec(Family::TwoPlus, 2, 1),  GroupSpec(Family::TwoMinus, 2, 1),
        GroupSpec(Family::TwoPlus, 2, 2),  GroupSpec(Family::TwoMinus, 2, 2),
        GroupSpec(Family::TwoPlus, 2, 3),  GroupSpec(Family::TwoMinus, 2, 3),
        GroupSpec(Family::PPlus, 3, 1),    GroupSpec(Family::PMinus, 3, 1),
        GroupSpec(Family::PPlus, 5, 1),    GroupSpec(Family::PMinus, 5, 1),
    };
}

std::vector<GroupSpec> larger_specs() {
    return {GroupSpec(Family::PPlus, 3, 2), GroupSpec(Family::PMinus, 3, 2),
            GroupSpec(Family::PPlus, 7, 1), GroupSpec(Family::PMinus, 7, 1)};
}

Element random_element(const GroupSpec& spec, std::mt19937_64& rng) {
    return element_at(spec, rng() % spec.order());
}

} // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(GroupSpec(Family::TwoPlus, 3, 1), Error);
    CHECK_THROWS_AS(GroupSpec(Family::PMinus, 2, 1), Error);
    CHECK_THROWS_AS(GroupSpec(Family::PPlus, 9, 1), Error);
    CHECK_THROWS_AS(GroupSpec(Family::PPlus, 3, 0), Error);
    CHECK(GroupSpec(Family::TwoMinus, 2, 2).order() == 32);
    CHECK(GroupSpec(Family::PMinus, 3, 2).order() == 243);
    CHECK(parse_family("2+") == Family::TwoPlus);
    CHECK(parse_family("p-") == Family::PMinus);
    CHECK_THROWS_AS(parse_family("x"), Error);
}

TEST_CASE("product of A1 and B1 emits one central factor") {
    for (const GroupSpec& spec : small_specs()) {
        CAPTURE(spec.to_string());
        Element got = mul(spec, gen_a(spec, 1), gen_b(spec, 1));
        std::vector<long long> s(spec.n, 0), r(spec.n, 0);
        s[0] = r[0] = 1;
        CHECK(got == make_element(spec, s, r, 1));
    }
}

TEST_CASE("identity is neutral and B1^2 = C in the quaternion-type family") {
    GroupSpec q8(Family::TwoMinus, 2, 1);
    CHECK(mul(q8, gen_b(q8, 1), gen_b(q8, 1)) == gen_c(q8));
    for (const GroupSpec& spec : small_specs())
        for (const Element& g : all_elements(spec)) {
            CHECK(mul(spec, g, identity(spec)) == g);
            CHECK(mul(spec, identity(spec), g) == g);
        }
}

TEST_CASE("closed formula agrees with the rewriting oracle, exhaustively when small") {
    for (const GroupSpec& spec : small_specs()) {
        CAPTURE(spec.to_string());
        auto elems = all_elements(spec);
        for (const Element& g : elems)
            for (const Element& h : elems)
                REQUIRE(mul(spec, g, h) == support::rewrite_mul(spec, g, h));
    }
    std::mt19937_64 rng(0x1234);
    for (const GroupSpec& spec : larger_specs()) {
        CAPTURE(spec.to_string());
        for (int trial = 0; trial < 10000; ++trial) {
            Element g = random_element(spec, rng), h = random_element(spec, rng);
            REQUIRE(mul(spec, g, h) == support::rewrite_mul(spec, g, h));
        }
    }
}

TEST_CASE("associativity, exhaustive at order <= 128") {
    for (const GroupSpec& spec : small_specs()) {
        CAPTURE(spec.to_string());
        auto elems = all_elements(spec);
        for (const Element& g : elems)
            for (const Element& h : elems) {
                Element gh = mul(spec, g, h);
                for (const Element& k : elems)
                    REQUIRE(mul(spec, gh, k) == mul(spec, g, mul(spec, h, k)));
            }
    }
    std::mt19937_64 rng(0x777);
    for (const GroupSpec& spec : larger_specs()) {
        CAPTURE(spec.to_string());
        for (int trial = 0; trial < 10000; ++trial) {
            Element g = random_element(spec, rng), h = random_element(spec, rng),
                    k = random_element(spec, rng);
            REQUIRE(mul(spec, mul(spec, g, h), k) == mul(spec, g, mul(spec, h, k)));
        }
    }
}

TEST_CASE("inverses, powers, commutators") {
    for (const GroupSpec& spec : small_specs()) {
        CAPTURE(spec.to_string());
        CHECK(inv(spec, identity(spec)) == identity(spec));
        CHECK(commutator(spec, gen_a(spec, 1), gen_b(spec, 1)) == gen_c(spec));
        if (spec.n >= 2) {
            CHECK(commutator(spec, gen_a(spec, 1), gen_b(spec, 2)) == identity(spec));
            CHECK(commutator(spec, gen_a(spec, 2), gen_b(spec, 2)) == gen_c(spec));
        }
        for (const Element& g : all_elements(spec)) {
            CHECK(mul(spec, g, inv(spec, g)) == identity(spec));
            CHECK(mul(spec, inv(spec, g), g) == identity(spec));
            CHECK(power(spec, g, 3) == mul(spec, g, mul(spec, g, g)));
            CHECK(power(spec, g, -1) == inv(spec, g));
            CHECK(power(spec, g, 0) == identity(spec));
        }
    }
    GroupSpec m27(Family::PMinus, 3, 1);
    CHECK(power(m27, gen_a(m27, 1), 3) == gen_c(m27));
    GroupSpec m125(Family::PMinus, 5, 1);
    CHECK(power(m125, gen_a(m125, 1), 5) == gen_c(m125));
}

TEST_CASE("element orders") {
    GroupSpec m27(Family::PMinus, 3, 1);
    CHECK(element_order(m27, gen_a(m27, 1)) == 9);
    CHECK(element_order(m27, identity(m27)) == 1);
    CHECK(element_order(m27, gen_b(m27, 1)) == 3);

    for (const GroupSpec& spec : {GroupSpec(Family::PPlus, 3, 1), GroupSpec(Family::PPlus, 5, 1),
                                  GroupSpec(Family::PPlus, 3, 2)}) {
        CAPTURE(spec.to_string());
        for (const Element& g : all_elements(spec)) {
            unsigned want = g == identity(spec) ? 1 : spec.p;
            CHECK(element_order(spec, g) == want);
        }
    }
    // Orders always divide p^2.
    for (const GroupSpec& spec : small_specs())
        for (const Element& g : all_elements(spec))
            CHECK(spec.p * spec.p % element_order(spec, g) == 0);
}

TEST_CASE("psi is a homomorphism onto V with central kernel") {
    std::mt19937_64 rng(0xABCD);
    for (const GroupSpec& spec : small_specs()) {
        CAPTURE(spec.to_string());
        CHECK(psi(spec, gen_c(spec)).is_zero());
        for (int trial = 0; trial < 100; ++trial) {
            Element g = random_element(spec, rng), h = random_element(spec, rng);
            CHECK(psi(spec, mul(spec, g, h)) == psi(spec, g) + psi(spec, h));
        }
        for (const Element& g : all_elements(spec)) {
            CHECK(element_from_psi(spec, psi(spec, g), g.t) == g);
        }
    }
    GroupSpec e27(Family::PPlus, 3, 2);
    // A1 B2 C: s-block e2, r-block e1.
    Element g = mul(e27, mul(e27, gen_a(e27, 1), gen_b(e27, 2)), gen_c(e27));
    CHECK(psi(e27, g) == FpVec(3, {0, 1, 1, 0}));
}

TEST_CASE("element indexing is a bijection") {
    for (const GroupSpec& spec : small_specs()) {
        auto elems = all_elements(spec);
        REQUIRE(elems.size() == spec.order());
        for (std::uint64_t k = 0; k < spec.order(); ++k)
            CHECK(element_rank(spec, elems[k]) == k);
        for (std::size_t i = 1; i < elems.size(); ++i) CHECK(elems[i - 1] < elems[i]);
    }
}

TEST_CASE("canonical textual notation") {
    GroupSpec spec(Family::PPlus, 3, 2);
    Element g = make_element(spec, {1, 0}, {2, 1}, 2);
    CHECK(to_string(spec, g) == "B^(1,0) A^(2,1) C^2");
    CHECK(to_string(spec, identity(spec)) == "B^(0,0) A^(0,0) C^0");
}

TEST_CASE("member checks reject foreign elements") {
    GroupSpec a(Family::PPlus, 3, 1), b(Family::PPlus, 5, 1);
    CHECK_THROWS_AS(mul(a, gen_a(a, 1), gen_a(b, 1)), Error);
    CHECK_THROWS_AS(gen_a(a, 2), Error);
    CHECK_THROWS_AS(gen_b(a, 0), Error);
}

TEST_CASE("derived symplectic form is the standard one") {
    for (const GroupSpec& spec : small_specs()) {
        CAPTURE(spec.to_string());
        FormData forms = derive_forms(spec);
        CHECK(forms.f.gram == SymplecticForm::standard(spec.p, spec.n).gram);
        CHECK(is_nondegenerate(forms.f));
    }
}

TEST_CASE("commutators realize the symplectic form") {
    for (const GroupSpec& spec : small_specs()) {
        CAPTURE(spec.to_string());
        FormData forms = derive_forms(spec);
        auto elems = all_elements(spec);
        for (const Element& g : elems)
            for (const Element& h : elems) {
                Element c = commutator(spec, g, h);
                REQUIRE(psi(spec, c).is_zero());
                REQUIRE(c.t == forms.f.eval(psi(spec, g), psi(spec, h)).value());
            }
    }
}

TEST_CASE("squares realize Q and p-th powers realize lambda") {
    std::vector<GroupSpec> specs = small_specs();
    specs.push_back(GroupSpec(Family::PPlus, 3, 2));
    specs.push_back(GroupSpec(Family::PMinus, 3, 2));
    for (const GroupSpec& spec : specs) {
        CAPTURE(spec.to_string());
        FormData forms = derive_forms(spec);
        for (const Element& g : all_elements(spec)) {
            Element pw = power(spec, g, spec.p);
            REQUIRE(psi(spec, pw).is_zero());
            if (spec.p == 2)
                REQUIRE(pw.t == forms.q->eval(psi(spec, g)).value());
            else
                REQUIRE(pw.t == forms.lambda->eval(psi(spec, g)).value());
        }
    }
}

TEST_CASE("derived quadratic forms for the 8-element groups") {
    GroupSpec d8(Family::TwoPlus, 2, 1);
    FormData fd = derive_forms(d8);
    FpVec a1 = psi(d8, gen_a(d8, 1)), b1 = psi(d8, gen_b(d8, 1));
    CHECK(fd.q->eval(a1).value() == 0);
    CHECK(fd.q->eval(b1).value() == 0);
    CHECK(fd.q->eval(a1 + b1).value() == 1);
    CHECK(arf_type(*fd.q) == ArfType::Plus);

    GroupSpec q8(Family::TwoMinus, 2, 1);
    FormData fq = derive_forms(q8);
    CHECK(fq.q->eval(psi(q8, gen_a(q8, 1))).value() == 1);
    CHECK(fq.q->eval(psi(q8, gen_b(q8, 1))).value() == 1);
    CHECK(arf_type(*fq.q) == ArfType::Minus);
}

TEST_CASE("arf type matches the family sign for p = 2") {
    for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(3)}) {
        CHECK(arf_type(*derive_forms(GroupSpec(Family::TwoPlus, 2, n)).q) == ArfType::Plus);
        CHECK(arf_type(*derive_forms(GroupSpec(Family::TwoMinus, 2, n)).q) == ArfType::Minus);
    }
}

TEST_CASE("lambda vanishes exactly in the exponent-p family") {
    CHECK(lambda_classify(*derive_forms(GroupSpec(Family::PPlus, 3, 1)).lambda) ==
          LambdaClass::Zero);
    CHECK(lambda_classify(*derive_forms(GroupSpec(Family::PPlus, 5, 1)).lambda) ==
          LambdaClass::Zero);
    CHECK(lambda_classify(*derive_forms(GroupSpec(Family::PMinus, 3, 1)).lambda) ==
          LambdaClass::Nonzero);
}

TEST_CASE("lambda is the pairing against the B1-direction") {
    for (const GroupSpec& spec : {GroupSpec(Family::PMinus, 3, 1), GroupSpec(Family::PMinus, 3, 2),
                                  GroupSpec(Family::PMinus, 5, 1)}) {
        CAPTURE(spec.to_string());
        FormData forms = derive_forms(spec);
        REQUIRE(forms.lambda->eval(psi(spec, gen_a(spec, 1))).value() == 1);
        FpVec b1 = psi(spec, gen_b(spec, 1));
        for (const FpVec& v : all_vectors(spec.p, 2 * spec.n))
            REQUIRE(forms.lambda->eval(v) == forms.f.eval(v, b1));
    }
}

TEST_CASE("product commutation is controlled by the form") {
    // gh = hg C^{f(psi g, psi h)}.
    std::mt19937_64 rng(0xFEED);
    for (const GroupSpec& spec : small_specs()) {
        FormData forms = derive_forms(spec);
        for (int trial = 0; trial < 200; ++trial) {
            Element g = random_element(spec, rng), h = random_element(spec, rng);
            Element lhs = mul(spec, g, h);
            Element rhs = mul(spec, mul(spec, h, g),
                              power(spec, gen_c(spec),
                                    forms.f.eval(psi(spec, g), psi(spec, h)).value()));
            CHECK(lhs == rhs);
        }
    }
}

#include "esp/subgroups.hpp"

#include <algorithm>
#include <set>

namespace esp {

bool Subgroup::contains(const Element& g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

static Subgroup from_sorted(const GroupSpec& spec, std::vector<Element> gens,
                            std::vector<Element> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return Subgroup{spec, std::move(gens), std::move(elems)};
}

Subgroup closure(const GroupSpec& spec, std::vector<Element> generators) {
    for (const Element& g : generators) (void)element_rank(spec, g);  // membership check
    std::set<Element> seen{identity(spec)};
    std::vector<Element> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (const Element& h : frontier)
            for (const Element& g : generators) {
                Element x = mul(spec, h, g);
                if (seen.insert(x).second) next.push_back(x);
            }
        frontier = std::move(next);
    }
    // Generators have finite order, so right-multiplication saturation
    // already yields inverses; the result is a subgroup.
    return Subgroup{spec, std::move(generators), {seen.begin(), seen.end()}};
}

Subgroup trivial_subgroup(const GroupSpec& spec) { return closure(spec, {}); }

Subgroup full_group(const GroupSpec& spec) {
    std::vector<Element> gens;
    for (std::size_t i = 1; i <= spec.n; ++i) {
        gens.push_back(gen_a(spec, i));
        gens.push_back(gen_b(spec, i));
    }
    gens.push_back(gen_c(spec));
    Subgroup s = from_sorted(spec, gens, all_elements(spec));
    return s;
}

Subgroup center_subgroup(const GroupSpec& spec) { return closure(spec, {gen_c(spec)}); }

Subgroup center(const Subgroup& s) {
    std::vector<Element> central;
    for (const Element& g : s.elements) {
        bool ok = true;
        for (const Element& h : s.elements)
            if (mul(s.spec, g, h) != mul(s.spec, h, g)) {
                ok = false;
                break;
            }
        if (ok) central.push_back(g);
    }
    return from_sorted(s.spec, central, central);
}

Subgroup derived_subgroup(const Subgroup& s) {
    std::vector<Element> comms;
    for (const Element& g : s.elements)
        for (const Element& h : s.elements) comms.push_back(commutator(s.spec, g, h));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return closure(s.spec, comms);
}

Subgroup frattini(const Subgroup& s) {
    std::vector<Element> gens;
    for (const Element& g : s.elements)
        for (const Element& h : s.elements) gens.push_back(commutator(s.spec, g, h));
    for (const Element& g : s.elements) gens.push_back(power(s.spec, g, s.spec.p));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return closure(s.spec, gens);
}

Subgroup omega1(const GroupSpec& spec) {
    std::vector<Element> gens;
    for (const Element& g : all_elements(spec))
        if (power(spec, g, spec.p) == identity(spec)) gens.push_back(g);
    // The order-p elements are closed under the products that arise, so
    // saturation over this generating set stays cheap.
    return closure(spec, gens);
}

Subgroup y_subgroup(const GroupSpec& spec) { return center(omega1(spec)); }

Subgroup centralizer_in_p(const GroupSpec& spec, const Element& g) {
    std::vector<Element> elems;
    for (const Element& h : all_elements(spec))
        if (commutator(spec, g, h) == identity(spec)) elems.push_back(h);
    return from_sorted(spec, {g, gen_c(spec)}, elems);
}

bool is_abelian(const Subgroup& s) {
    for (const Element& g : s.elements)
        for (const Element& h : s.elements)
            if (mul(s.spec, g, h) != mul(s.spec, h, g)) return false;
    return true;
}

bool is_elementary_abelian(const Subgroup& s) {
    if (!is_abelian(s)) return false;
    for (const Element& g : s.elements)
        if (power(s.spec, g, s.spec.p) != identity(s.spec)) return false;
    return true;
}

bool is_maximal(const Subgroup& s) { return s.order() * s.spec.p == s.spec.order(); }

std::vector<Subgroup> maximal_subgroups(const GroupSpec& spec) {
    // Maximal subgroups contain Phi(P) = Z, so they are exactly the
    // psi-preimages of hyperplanes of V. Hyperplanes are enumerated by
    // their normals, normalized to leading coefficient 1.
    std::vector<Subgroup> out;
    for (const FpVec& normal : all_vectors(spec.p, 2 * spec.n)) {
        if (normal.is_zero()) continue;
        std::size_t lead = 0;
        while (normal.c[lead] == 0) ++lead;
        if (normal.c[lead] != 1) continue;
        std::vector<Element> elems;
        for (const Element& g : all_elements(spec))
            if (normal.dot(psi(spec, g)).is_zero()) elems.push_back(g);
        out.push_back(from_sorted(spec, {}, std::move(elems)));
    }
    return out;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    if (!(a.spec == b.spec)) throw Error("intersect: mismatched ambient groups");
    std::vector<Element> elems;
    std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(),
                          b.elements.end(), std::back_inserter(elems));
    return from_sorted(a.spec, {}, std::move(elems));
}

CheckList verify_extraspecial(const GroupSpec& spec) {
    CheckList checks;
    Subgroup p = full_group(spec);
    Subgroup z = center_subgroup(spec);
    if (z.order() != spec.p)
        checks.push_back(fail("central subgroup has order p",
                              "|<C>| = " + std::to_string(z.order())));
    else
        checks.push_back(pass("central subgroup has order p", "order " + std::to_string(z.order())));

    auto expect = [&](const char* name, const Subgroup& got) {
        if (got == z)
            checks.push_back(pass(name, "equals <C>"));
        else
            checks.push_back(fail(name, "order " + std::to_string(got.order())));
    };
    expect("center equals <C>", center(p));
    expect("derived subgroup equals <C>", derived_subgroup(p));
    expect("frattini subgroup equals <C>", frattini(p));
    return checks;
}

CheckList verify_centralizer_frattini(const GroupSpec& spec) {
    CheckList checks;
    bool exceptional = spec.n == 1 && spec.family != Family::TwoMinus;
    Subgroup phi_p = frattini(full_group(spec));

    std::size_t order_p_count = 0, noncentral_count = 0, matching = 0;
    std::vector<Element> bad;
    for (const Element& g : all_elements(spec)) {
        if (g == identity(spec) || element_order(spec, g) != spec.p) continue;
        ++order_p_count;
        if (!psi(spec, g).is_zero()) ++noncentral_count;
        Subgroup c = centralizer_in_p(spec, g);
        if (frattini(c) == phi_p)
            ++matching;
        else
            bad.push_back(g);
    }

    if (!exceptional) {
        if (bad.empty())
            checks.push_back(pass("every order-p centralizer has the full frattini subgroup",
                                  std::to_string(order_p_count) + " elements checked"));
        else
            checks.push_back(fail("every order-p centralizer has the full frattini subgroup",
                                  "counterexample " + to_string(spec, bad.front())));
        if (spec.family == Family::TwoMinus && spec.n == 1)
            checks.push_back(noncentral_count == 0
                                 ? pass("all order-p elements are central", "Q8 case")
                                 : fail("all order-p elements are central",
                                        std::to_string(noncentral_count) + " noncentral"));
        return checks;
    }

    // The three exceptional specs: the property must fail, with B_1 an
    // explicit witness whose centralizer is abelian with trivial
    // frattini subgroup.
    Element b1 = gen_b(spec, 1);
    Subgroup cb1 = centralizer_in_p(spec, b1);
    bool witness_ok = element_order(spec, b1) == spec.p && is_abelian(cb1) &&
                      frattini(cb1).order() == 1;
    checks.push_back(witness_ok
                         ? pass("witness B1 has abelian centralizer with trivial frattini subgroup",
                                "|C_P(B1)| = " + std::to_string(cb1.order()))
                         : fail("witness B1 has abelian centralizer with trivial frattini subgroup",
                                "|C_P(B1)| = " + std::to_string(cb1.order())));
    checks.push_back(!bad.empty()
                         ? pass("exceptional spec fails the centralizer-frattini property",
                                std::to_string(bad.size()) + " of " +
                                    std::to_string(order_p_count) + " witnesses")
                         : fail("exceptional spec fails the centralizer-frattini property",
                                "no counterexample found"));
    return checks;
}

} // namespace esp

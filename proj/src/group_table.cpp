#include "esp/group_table.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <json.hpp>

namespace esp {

namespace {

std::vector<unsigned> matrix_code(const FpMat& m) {
    std::vector<unsigned> code;
    code.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) code.push_back(m.raw(i, j));
    return code;
}

bool contains_index(const IndexSet& s, std::size_t x) {
    return std::binary_search(s.begin(), s.end(), x);
}

std::size_t power_of(const GroupTable& g, std::size_t x, std::size_t e) {
    std::size_t acc = g.identity;
    for (std::size_t i = 0; i < e; ++i) acc = g.mul(acc, x);
    return acc;
}

bool is_prime_power(std::size_t m, unsigned prime) {
    while (m % prime == 0) m /= prime;
    return m == 1;
}

// Greedy generating set: keep the elements that enlarge the closure.
IndexSet generating_indices(const GroupTable& g, const IndexSet& s) {
    IndexSet gens;
    IndexSet have{g.identity};
    for (std::size_t x : s) {
        if (contains_index(have, x)) continue;
        gens.push_back(x);
        IndexSet seed = have;
        seed.push_back(x);
        std::sort(seed.begin(), seed.end());
        have = closure_indices(g, seed);
        if (have.size() == s.size()) break;
    }
    return gens;
}

IndexSet conjugate_set(const GroupTable& g, const IndexSet& s, std::size_t x) {
    IndexSet out;
    out.reserve(s.size());
    for (std::size_t h : s) out.push_back(g.conj(h, x));
    std::sort(out.begin(), out.end());
    return out;
}

IndexSet intersection(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void fill_inverses(GroupTable& g) {
    g.inverse_of.assign(g.order(), 0);
    std::vector<char> seen(g.order(), 0);
    for (std::size_t a = 0; a < g.order(); ++a) {
        if (seen[a]) continue;
        for (std::size_t b = a; b < g.order(); ++b) {
            if (g.mul(a, b) == g.identity) {
                g.inverse_of[a] = static_cast<std::uint32_t>(b);
                g.inverse_of[b] = static_cast<std::uint32_t>(a);
                seen[a] = seen[b] = 1;
                break;
            }
        }
    }
}

constexpr std::size_t product_table_cap = 2000;

} // namespace

std::size_t GroupTable::mul(std::size_t a, std::size_t b) const {
    if (!product.empty()) return product[a * order() + b];
    return position.at(matrix_code(matrices[a] * matrices[b]));
}

std::size_t GroupTable::conj(std::size_t x, std::size_t g) const {
    return mul(mul(inv(g), x), g);
}

std::size_t GroupTable::element_order(std::size_t a) const {
    std::size_t x = a, count = 1;
    while (x != identity) {
        x = mul(x, a);
        ++count;
        if (count > order()) throw Error("element order exceeds the group order");
    }
    return count;
}

std::size_t GroupTable::index_of(const FpMat& m) const {
    if (matrices.empty()) throw Error("not a matrix-backed group");
    auto it = position.find(matrix_code(m));
    if (it == position.end()) throw Error("matrix is not an element of the group");
    return it->second;
}

std::string GroupTable::code_string(std::size_t a) const {
    std::string out = "(";
    for (std::size_t i = 0; i < codes[a].size(); ++i) {
        if (i) out += ",";
        out += std::to_string(codes[a][i]);
    }
    return out + ")";
}

MatrixGroupInput MatrixGroupInput::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("group input is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("p") || !j.contains("dim") || !j.contains("generators"))
        throw Error("group input needs the fields p, dim, generators");
    if (!j["p"].is_number_integer() || !j["dim"].is_number_integer() ||
        !j["generators"].is_array())
        throw Error("group input fields have the wrong types");

    MatrixGroupInput input;
    long long p_raw = j["p"].get<long long>();
    if (p_raw < 2) throw Error("group input p must be a prime");
    input.p = static_cast<unsigned>(p_raw);
    require_prime(input.p);
    long long dim_raw = j["dim"].get<long long>();
    if (dim_raw < 1 || dim_raw > 16) throw Error("group input dim must be between 1 and 16");
    input.dim = static_cast<std::size_t>(dim_raw);

    for (const auto& entry : j["generators"]) {
        if (!entry.is_array() || entry.size() != input.dim * input.dim)
            throw Error("each generator needs dim*dim row-major entries");
        FpMat m(input.p, input.dim, input.dim);
        for (std::size_t i = 0; i < input.dim; ++i)
            for (std::size_t k = 0; k < input.dim; ++k) {
                const auto& cell = entry[i * input.dim + k];
                if (!cell.is_number_integer()) throw Error("generator entries must be integers");
                m.set(i, k, cell.get<long long>());
            }
        input.generators.push_back(std::move(m));
    }
    return input;
}

MatrixGroupInput gl3_input(unsigned p) {
    require_prime(p);
    MatrixGroupInput input;
    input.p = p;
    input.dim = 3;

    FpMat t12 = FpMat::identity(p, 3);
    t12.set(0, 1, 1);
    FpMat t21 = FpMat::identity(p, 3);
    t21.set(1, 0, 1);
    FpMat cyc(p, 3, 3);
    cyc.set(1, 0, 1);
    cyc.set(2, 1, 1);
    cyc.set(0, 2, 1);
    input.generators = {t12, t21, cyc};

    // Smallest generator of the unit group, to reach every determinant.
    for (unsigned u = 2; u < p; ++u) {
        unsigned pow = u % p, ord = 1;
        while (pow != 1) {
            pow = (pow * u) % p;
            ++ord;
        }
        if (ord == p - 1) {
            FpMat d = FpMat::identity(p, 3);
            d.set(0, 0, u);
            input.generators.push_back(d);
            break;
        }
    }
    return input;
}

GroupTable enumerate_group(const MatrixGroupInput& input, std::size_t cap) {
    require_prime(input.p);
    if (input.dim == 0) throw Error("matrix dimension must be positive");
    for (std::size_t i = 0; i < input.generators.size(); ++i) {
        const FpMat& m = input.generators[i];
        if (m.rows() != input.dim || m.cols() != input.dim || m.modulus() != input.p)
            throw Error("generator " + std::to_string(i) + " has the wrong shape or modulus");
        if (!m.invertible())
            throw Error("generator " + std::to_string(i) + " is not invertible");
    }

    std::map<std::vector<unsigned>, FpMat> seen;
    std::deque<FpMat> frontier;
    FpMat id = FpMat::identity(input.p, input.dim);
    seen.emplace(matrix_code(id), id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        FpMat x = std::move(frontier.front());
        frontier.pop_front();
        for (const FpMat& gen : input.generators) {
            FpMat y = x * gen;
            std::vector<unsigned> code = matrix_code(y);
            if (seen.count(code)) continue;
            if (seen.size() >= cap)
                throw Error("enumeration exceeded the cap of " + std::to_string(cap) +
                            " elements");
            seen.emplace(std::move(code), y);
            frontier.push_back(std::move(y));
        }
    }

    GroupTable table;
    table.p = input.p;
    table.dim = input.dim;
    for (auto& [code, m] : seen) {
        table.position.emplace(code, table.codes.size());
        table.codes.push_back(code);
        table.matrices.push_back(std::move(m));
    }
    table.identity = table.position.at(matrix_code(id));

    if (table.order() <= product_table_cap) {
        table.product.resize(table.order() * table.order());
        for (std::size_t a = 0; a < table.order(); ++a)
            for (std::size_t b = 0; b < table.order(); ++b)
                table.product[a * table.order() + b] = static_cast<std::uint32_t>(
                    table.position.at(matrix_code(table.matrices[a] * table.matrices[b])));
    }

    table.inverse_of.resize(table.order());
    for (std::size_t a = 0; a < table.order(); ++a)
        table.inverse_of[a] =
            static_cast<std::uint32_t>(table.position.at(matrix_code(*table.matrices[a].inverse())));
    return table;
}

std::size_t EmbeddedGroup::index_of(const Element& g) const {
    return index_of_rank.at(element_rank(spec, g));
}

IndexSet EmbeddedGroup::image_of(const Subgroup& h) const {
    IndexSet out;
    out.reserve(h.elements.size());
    for (const Element& g : h.elements) out.push_back(index_of(g));
    std::sort(out.begin(), out.end());
    return out;
}

EmbeddedGroup embed_extraspecial_gl3(const GroupTable& gl3) {
    if (gl3.dim != 3) throw Error("the unitriangular embedding needs 3x3 matrices");
    unsigned p = gl3.p;
    GroupSpec spec(p == 2 ? Family::TwoPlus : Family::PPlus, p, 1);

    FpMat a_mat = FpMat::identity(p, 3);
    a_mat.set(0, 1, 1);
    FpMat b_mat = FpMat::identity(p, 3);
    b_mat.set(1, 2, 1);
    FpMat c_mat = FpMat::identity(p, 3);
    c_mat.set(0, 2, 1);

    auto mat_pow = [&](const FpMat& m, unsigned e) {
        FpMat acc = FpMat::identity(p, 3);
        for (unsigned i = 0; i < e; ++i) acc = acc * m;
        return acc;
    };

    EmbeddedGroup emb{spec, {}, {}};
    for (std::uint64_t k = 0; k < spec.order(); ++k) {
        Element e = element_at(spec, k);
        FpMat m = mat_pow(b_mat, e.s.c[0]) * mat_pow(a_mat, e.r.c[0]) * mat_pow(c_mat, e.t);
        emb.index_of_rank.push_back(gl3.index_of(m));
    }
    emb.image = emb.index_of_rank;
    std::sort(emb.image.begin(), emb.image.end());
    if (std::adjacent_find(emb.image.begin(), emb.image.end()) != emb.image.end())
        throw Error("the unitriangular images are not distinct");

    std::vector<Element> elements = all_elements(spec);
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j) {
            std::size_t lhs = emb.index_of_rank[element_rank(spec, mul(spec, elements[i], elements[j]))];
            if (lhs != gl3.mul(emb.index_of_rank[i], emb.index_of_rank[j]))
                throw Error("the unitriangular images do not define a homomorphism");
        }
    return emb;
}

IndexSet closure_indices(const GroupTable& g, const IndexSet& seed) {
    std::vector<char> in(g.order(), 0);
    std::deque<std::size_t> frontier;
    auto push = [&](std::size_t x) {
        if (!in[x]) {
            in[x] = 1;
            frontier.push_back(x);
        }
    };
    push(g.identity);
    for (std::size_t x : seed) {
        if (x >= g.order()) throw Error("element index out of range");
        push(x);
    }
    IndexSet members;
    while (!frontier.empty()) {
        std::size_t x = frontier.front();
        frontier.pop_front();
        members.push_back(x);
        push(g.inv(x));
        for (std::size_t y : members) {
            push(g.mul(x, y));
            push(g.mul(y, x));
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

IndexSet sylow_subgroup(const GroupTable& g, unsigned prime, const IndexSet* hint) {
    require_prime(prime);
    std::size_t ppart = 1, rest = g.order();
    while (rest % prime == 0) {
        rest /= prime;
        ppart *= prime;
    }

    IndexSet s{g.identity};
    if (hint) {
        s = closure_indices(g, *hint);
        if (!is_prime_power(s.size(), prime))
            throw Error("the hint does not generate a subgroup of prime-power order");
    } else if (ppart > 1) {
        for (std::size_t x = 0; x < g.order(); ++x) {
            std::size_t ord = g.element_order(x);
            if (ord > 1 && is_prime_power(ord, prime)) {
                s = closure_indices(g, {x});
                break;
            }
        }
    }

    while (s.size() < ppart) {
        IndexSet n = normalizer(g, s);
        bool grown = false;
        for (std::size_t x : n) {
            if (contains_index(s, x)) continue;
            if (!is_prime_power(g.element_order(x), prime)) continue;
            IndexSet seed = s;
            seed.push_back(x);
            std::sort(seed.begin(), seed.end());
            IndexSet bigger = closure_indices(g, seed);
            if (is_prime_power(bigger.size(), prime)) {
                s = std::move(bigger);
                grown = true;
                break;
            }
        }
        if (!grown) throw Error("normalizer growth stalled below the full prime part");
    }
    return s;
}

IndexSet normalizer(const GroupTable& g, const IndexSet& s) {
    IndexSet gens = generating_indices(g, s);
    IndexSet out;
    for (std::size_t x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (std::size_t h : gens)
            if (!contains_index(s, g.conj(h, x))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return out;
}

IndexSet centralizer(const GroupTable& g, const IndexSet& s) {
    IndexSet gens = generating_indices(g, s);
    IndexSet out;
    for (std::size_t x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (std::size_t h : gens)
            if (g.mul(x, h) != g.mul(h, x)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return out;
}

IndexSet centralizer_of_element(const GroupTable& g, std::size_t x) {
    IndexSet out;
    for (std::size_t y = 0; y < g.order(); ++y)
        if (g.mul(x, y) == g.mul(y, x)) out.push_back(y);
    return out;
}

IndexSet double_coset_of(const GroupTable& g, const IndexSet& s, std::size_t rep) {
    IndexSet out;
    out.reserve(s.size() * s.size());
    for (std::size_t x : s) {
        std::size_t xr = g.mul(x, rep);
        for (std::size_t y : s) out.push_back(g.mul(xr, y));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> double_coset_reps(const GroupTable& g, const IndexSet& s,
                                           const IndexSet* ambient) {
    std::vector<char> marked(g.order(), 0);
    std::vector<std::size_t> reps{g.identity};
    for (std::size_t x : double_coset_of(g, s, g.identity)) marked[x] = 1;

    auto sweep = [&](std::size_t x) {
        if (marked[x]) return;
        reps.push_back(x);
        for (std::size_t y : double_coset_of(g, s, x)) marked[y] = 1;
    };
    if (ambient)
        for (std::size_t x : *ambient) sweep(x);
    else
        for (std::size_t x = 0; x < g.order(); ++x) sweep(x);
    return reps;
}

IndexSet intersect_conjugate(const GroupTable& g, const IndexSet& s, std::size_t x) {
    return intersection(s, conjugate_set(g, s, x));
}

IndexSet product_set(const GroupTable& g, const IndexSet& as, const IndexSet& bs) {
    IndexSet out;
    out.reserve(as.size() * bs.size());
    for (std::size_t a : as)
        for (std::size_t b : bs) out.push_back(g.mul(a, b));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> rank_permutation_of(const Automorphism& alpha) {
    std::vector<std::size_t> table;
    table.reserve(alpha.spec.order());
    for (std::uint64_t k = 0; k < alpha.spec.order(); ++k)
        table.push_back(element_rank(alpha.spec, alpha.apply(element_at(alpha.spec, k))));
    return table;
}

std::vector<std::size_t> automorphism_from_images(const GroupSpec& spec,
                                                  const std::vector<Element>& a_images,
                                                  const std::vector<Element>& b_images) {
    if (a_images.size() != spec.n || b_images.size() != spec.n)
        throw Error("need one image per generator");
    Element c_image = commutator(spec, a_images[0], b_images[0]);

    std::vector<Element> elements = all_elements(spec);
    std::vector<Element> images;
    images.reserve(elements.size());
    for (const Element& e : elements) {
        Element out = identity(spec);
        for (std::size_t i = 0; i < spec.n; ++i)
            out = mul(spec, out, power(spec, b_images[i], e.s.c[i]));
        for (std::size_t i = 0; i < spec.n; ++i)
            out = mul(spec, out, power(spec, a_images[i], e.r.c[i]));
        images.push_back(mul(spec, out, power(spec, c_image, e.t)));
    }

    std::vector<std::size_t> table;
    table.reserve(images.size());
    for (const Element& e : images) table.push_back(element_rank(spec, e));
    std::vector<std::size_t> sorted = table;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
        if (sorted[k] != k) throw Error("generator images do not define a bijection");

    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j) {
            std::size_t lhs = table[element_rank(spec, mul(spec, elements[i], elements[j]))];
            if (lhs != element_rank(spec, mul(spec, images[i], images[j])))
                throw Error("generator images do not define a homomorphism");
        }
    return table;
}

SemidirectProduct semidirect_with_permutation(const GroupSpec& spec,
                                              const std::vector<std::size_t>& alpha, unsigned q) {
    std::size_t n = spec.order();
    if (alpha.size() != n) throw Error("permutation length must match the group order");
    if (q == 0) throw Error("the twist order must be positive");
    if (std::gcd(q, spec.p) != 1) throw Error("the twist order must be coprime to p");

    std::vector<Element> elements = all_elements(spec);

    // The permutation must be an automorphism: the pair product below
    // is associative only when it is.
    {
        std::vector<std::size_t> sorted = alpha;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < n; ++k)
            if (sorted[k] != k) throw Error("the twist is not a bijection");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t lhs = alpha[element_rank(spec, mul(spec, elements[i], elements[j]))];
                std::size_t rhs =
                    element_rank(spec, mul(spec, elements[alpha[i]], elements[alpha[j]]));
                if (lhs != rhs) throw Error("the twist is not an automorphism");
            }
    }

    std::vector<std::vector<std::size_t>> pows(q);
    pows[0].resize(n);
    std::iota(pows[0].begin(), pows[0].end(), 0);
    for (unsigned k = 1; k < q; ++k) {
        pows[k].resize(n);
        for (std::size_t r = 0; r < n; ++r) pows[k][r] = alpha[pows[k - 1][r]];
        if (pows[k] == pows[0]) throw Error("the twist has order below q");
    }
    std::vector<std::size_t> full(n);
    for (std::size_t r = 0; r < n; ++r) full[r] = alpha[pows[q - 1][r]];
    if (full != pows[0]) throw Error("the twist does not have order q");

    GroupTable table;
    table.p = spec.p;
    table.dim = 0;
    for (std::size_t r = 0; r < n; ++r)
        for (unsigned k = 0; k < q; ++k) {
            std::vector<unsigned> code;
            const Element& e = elements[r];
            code.insert(code.end(), e.s.c.begin(), e.s.c.end());
            code.insert(code.end(), e.r.c.begin(), e.r.c.end());
            code.push_back(e.t);
            code.push_back(k);
            table.position.emplace(std::move(code), 0);
        }
    std::size_t next = 0;
    for (auto& [code, idx] : table.position) {
        idx = next++;
        table.codes.push_back(code);
    }

    auto pair_index = [&](std::size_t r, unsigned k) {
        std::vector<unsigned> code;
        const Element& e = elements[r];
        code.insert(code.end(), e.s.c.begin(), e.s.c.end());
        code.insert(code.end(), e.r.c.begin(), e.r.c.end());
        code.push_back(e.t);
        code.push_back(k);
        return table.position.at(code);
    };

    std::vector<std::size_t> rank_of_index(n * q);
    std::vector<unsigned> twist_of_index(n * q);
    for (std::size_t r = 0; r < n; ++r)
        for (unsigned k = 0; k < q; ++k) {
            std::size_t idx = pair_index(r, k);
            rank_of_index[idx] = r;
            twist_of_index[idx] = k;
        }

    std::vector<std::vector<std::size_t>> rank_mul(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rank_mul[i][j] = element_rank(spec, mul(spec, elements[i], elements[j]));

    std::vector<std::vector<std::size_t>> index_by_pair(n, std::vector<std::size_t>(q));
    for (std::size_t r = 0; r < n; ++r)
        for (unsigned k = 0; k < q; ++k) index_by_pair[r][k] = pair_index(r, k);

    table.identity = index_by_pair[element_rank(spec, identity(spec))][0];
    table.product.resize(table.order() * table.order());
    for (std::size_t a = 0; a < table.order(); ++a)
        for (std::size_t b = 0; b < table.order(); ++b) {
            std::size_t r = rank_mul[rank_of_index[a]][pows[twist_of_index[a]][rank_of_index[b]]];
            unsigned k = (twist_of_index[a] + twist_of_index[b]) % q;
            table.product[a * table.order() + b] =
                static_cast<std::uint32_t>(index_by_pair[r][k]);
        }
    fill_inverses(table);

    SemidirectProduct out{std::move(table), EmbeddedGroup{spec, {}, {}}, 0};
    for (std::size_t r = 0; r < n; ++r)
        out.p_image.index_of_rank.push_back(index_by_pair[r][0]);
    out.p_image.image = out.p_image.index_of_rank;
    std::sort(out.p_image.image.begin(), out.p_image.image.end());
    out.twist = index_by_pair[element_rank(spec, identity(spec))][1 % q];
    return out;
}

SemidirectProduct semidirect_with_automorphism(const GroupSpec& spec, const Automorphism& alpha,
                                               unsigned q) {
    return semidirect_with_permutation(spec, rank_permutation_of(alpha), q);
}

Report verify_lemma_z(const GroupTable& g, const EmbeddedGroup& p_emb) {
    const GroupSpec& spec = p_emb.spec;
    Report report;
    report.command = "lemma-z";
    report.param("family", family_code(spec.family));
    report.param("p", std::to_string(spec.p));
    report.param("n", std::to_string(spec.n));
    report.param("group-order", std::to_string(g.order()));

    Subgroup phi = frattini(full_group(spec));
    bool hypothesis = true;
    std::string hyp_witness;
    for (const Element& x : all_elements(spec)) {
        if (x == identity(spec) || element_order(spec, x) != spec.p) continue;
        if (!(frattini(centralizer_in_p(spec, x)) == phi)) {
            hypothesis = false;
            hyp_witness = to_string(spec, x);
            break;
        }
    }
    report.add(hypothesis
                   ? pass("order-p centralizers keep the full frattini subgroup")
                   : hypothesis_violated("order-p centralizers keep the full frattini subgroup",
                                         "counterexample " + hyp_witness));

    IndexSet p_set = p_emb.image;
    IndexSet z_set = p_emb.image_of(center_subgroup(spec));
    IndexSet nc = product_set(g, normalizer(g, p_set), centralizer(g, z_set));

    std::vector<std::size_t> reps = double_coset_reps(g, p_set);
    std::size_t qualifying = 0;
    std::vector<std::size_t> moved, unfactored;
    for (std::size_t rep : reps) {
        IndexSet h = intersect_conjugate(g, p_set, rep);
        if (!std::includes(h.begin(), h.end(), z_set.begin(), z_set.end())) continue;
        ++qualifying;
        if (conjugate_set(g, z_set, rep) != z_set) moved.push_back(rep);
        if (!contains_index(nc, rep)) unfactored.push_back(rep);
    }
    report.param("double-cosets", std::to_string(reps.size()));
    report.param("qualifying", std::to_string(qualifying));

    auto conclude = [&](const std::string& name, const std::vector<std::size_t>& bad) {
        if (bad.empty())
            report.add(pass(name, std::to_string(qualifying) +
                                      " qualifying representatives" +
                                      (hypothesis ? "" : " (holds without the hypothesis)")));
        else if (hypothesis)
            report.add(fail(name, "fails at representative " + g.code_string(bad.front())));
        else
            report.add(hypothesis_violated(
                name, std::to_string(bad.size()) + " of " + std::to_string(qualifying) +
                          " qualifying representatives fail, first " +
                          g.code_string(bad.front())));
    };
    conclude("qualifying representatives fix the centre", moved);
    conclude("qualifying representatives factor through normalizer times centre-centralizer",
             unfactored);
    return report;
}

Report verify_lemma_y(const GroupTable& g, const EmbeddedGroup& p_emb) {
    const GroupSpec& spec = p_emb.spec;
    if (spec.family != Family::PMinus)
        throw Error("the Y-stability check needs the odd exponent-p^2 family");

    Report report;
    report.command = "lemma-y";
    report.param("family", family_code(spec.family));
    report.param("p", std::to_string(spec.p));
    report.param("n", std::to_string(spec.n));
    report.param("group-order", std::to_string(g.order()));

    IndexSet p_set = p_emb.image;
    IndexSet z_set = p_emb.image_of(center_subgroup(spec));
    IndexSet y_set = p_emb.image_of(y_subgroup(spec));

    IndexSet cz = centralizer(g, z_set);
    IndexSet czn = intersection(cz, normalizer(g, p_set));
    IndexSet czny = intersection(cz, normalizer(g, y_set));
    IndexSet d2;
    for (std::size_t h : czny) {
        bool trivial = true;
        for (std::size_t y : y_set)
            if (!contains_index(z_set, g.mul(g.inv(y), g.conj(y, h)))) {
                trivial = false;
                break;
            }
        if (trivial) d2.push_back(h);
    }
    IndexSet factorable = product_set(g, czn, d2);

    std::vector<Subgroup> maximals = maximal_subgroups(spec);
    std::vector<std::size_t> reps = double_coset_reps(g, p_set, &cz);
    std::size_t qualifying = 0;
    std::vector<std::size_t> moved, unfactored, structure;
    for (std::size_t rep : reps) {
        IndexSet h = intersect_conjugate(g, p_set, rep);
        if (!std::includes(h.begin(), h.end(), y_set.begin(), y_set.end())) continue;
        ++qualifying;
        IndexSet yg = conjugate_set(g, y_set, rep);
        if (yg != y_set) moved.push_back(rep);
        if (!contains_index(factorable, rep)) unfactored.push_back(rep);

        // P^rep has exactly one exponent-p maximal subgroup, and its
        // centre is Y^rep.
        std::size_t exponent_p_count = 0;
        IndexSet the_one;
        for (const Subgroup& m : maximals) {
            IndexSet mg = conjugate_set(g, p_emb.image_of(m), rep);
            bool exponent_p = true;
            for (std::size_t x : mg)
                if (g.element_order(x) > spec.p) {
                    exponent_p = false;
                    break;
                }
            if (exponent_p) {
                ++exponent_p_count;
                the_one = std::move(mg);
            }
        }
        bool ok = exponent_p_count == 1;
        if (ok) {
            IndexSet centre;
            for (std::size_t x : the_one) {
                bool central = true;
                for (std::size_t u : the_one)
                    if (g.mul(x, u) != g.mul(u, x)) {
                        central = false;
                        break;
                    }
                if (central) centre.push_back(x);
            }
            ok = centre == yg;
        }
        if (!ok) structure.push_back(rep);
    }
    report.param("double-cosets", std::to_string(reps.size()));
    report.param("qualifying", std::to_string(qualifying));

    auto conclude = [&](const std::string& name, const std::vector<std::size_t>& bad) {
        if (bad.empty())
            report.add(pass(name, std::to_string(qualifying) + " qualifying representatives"));
        else
            report.add(fail(name, "fails at representative " + g.code_string(bad.front())));
    };
    conclude("qualifying representatives fix Y", moved);
    conclude("qualifying representatives factor through P-normalizer times trivial-on-Y/Z part",
             unfactored);
    conclude("conjugates have a unique exponent-p maximal subgroup with centre Y", structure);
    return report;
}

Report fusion_invariance_check(const GroupTable& g, const EmbeddedGroup& p_emb,
                               const std::vector<std::size_t>& f_basis, const GradedPoly& cls) {
    std::size_t rank = f_basis.size();
    if (rank == 0) throw Error("the subgroup basis is empty");
    IndexSet basis_set(f_basis.begin(), f_basis.end());
    std::sort(basis_set.begin(), basis_set.end());
    IndexSet f = closure_indices(g, basis_set);

    std::size_t expected = 1;
    for (std::size_t i = 0; i < rank; ++i) expected *= g.p;
    if (f.size() != expected) throw Error("the basis is not independent");
    for (std::size_t x : f)
        if (g.element_order(x) > g.p) throw Error("the subgroup is not exponent-p");
    for (std::size_t x : f)
        for (std::size_t y : f)
            if (g.mul(x, y) != g.mul(y, x)) throw Error("the subgroup is not abelian");
    if (cls.p != g.p || cls.vars.size() != rank)
        throw Error("the class ring does not match the basis");

    std::map<std::size_t, FpVec> coords;
    for (const FpVec& v : all_vectors(g.p, rank)) {
        std::size_t elt = g.identity;
        for (std::size_t i = 0; i < rank; ++i)
            elt = g.mul(elt, power_of(g, f_basis[i], v.c[i]));
        if (!coords.emplace(elt, v).second) throw Error("the basis is not independent");
    }

    std::size_t normalizing = 0, fused = 0;
    std::vector<std::size_t> movers;
    for (std::size_t x = 0; x < g.order(); ++x) {
        std::vector<std::size_t> images;
        images.reserve(rank);
        bool inside_f = true, inside_p = true;
        for (std::size_t b : f_basis) {
            std::size_t c = g.conj(b, x);
            images.push_back(c);
            inside_f = inside_f && contains_index(f, c);
            inside_p = inside_p && contains_index(p_emb.image, c);
        }
        if (!inside_f) {
            if (inside_p) ++fused;
            continue;
        }
        ++normalizing;
        FpMat t(g.p, rank, rank);
        for (std::size_t j = 0; j < rank; ++j) {
            const FpVec& col = coords.at(images[j]);
            for (std::size_t i = 0; i < rank; ++i) t.set(i, j, col.c[i]);
        }
        if (!t.invertible()) throw Error("conjugation degenerated on the subgroup");
        if (!(pullback(cls, t.transpose()) == cls)) movers.push_back(x);
    }

    Report report;
    report.command = "fusion";
    report.param("group-order", std::to_string(g.order()));
    report.param("subgroup-order", std::to_string(f.size()));
    report.param("normalizing", std::to_string(normalizing));
    report.param("fused-not-normalizing", std::to_string(fused));
    report.param("movers", std::to_string(movers.size()));
    report.add(pass("conjugation acts linearly on the subgroup",
                    std::to_string(normalizing) + " normalizing elements"));
    report.add(movers.empty()
                   ? pass("class is invariant under every normalizing element")
                   : fail("class is invariant under every normalizing element",
                          std::to_string(movers.size()) + " elements move it, first " +
                              g.code_string(movers.front())));
    return report;
}

} // namespace esp

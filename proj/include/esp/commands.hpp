#pragma once

#include <cstdint>
#include <string>

#include "esp/extraspecial.hpp"
#include "esp/report.hpp"

namespace esp {

// Bad flags or flag combinations; the CLI maps this to exit code 2,
// distinct from verification failures (exit 1).
struct UsageError : Error {
    using Error::Error;
};

struct CommandOptions {
    unsigned p = 3;
    std::size_t n = 1;
    std::string family = "p-";  // one of 2+, 2-, p+, p-
    std::string lemma;          // lemma subcommand id
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    bool exhaustive = false;
    std::size_t cap = 1'000'000;
    std::string alpha_file;  // semidirect: generator-image JSON path
    unsigned q = 0;          // semidirect: twist order; 0 = derive from the twist
};

// Throws UsageError for an unknown family code or a family/p mismatch.
GroupSpec spec_from_options(const CommandOptions& opt);

// Group axioms, structure subgroups, and the derived-form
// correspondence, exhaustively at desk scale.
Report cmd_verify_group(const CommandOptions& opt);

// Dispatch on opt.lemma: centralizer-frattini, lambda, wittprep,
// prop-witt, lemma-z, lemma-y, chern, remark8.
Report cmd_verify_lemma(const CommandOptions& opt);

// Full GL_3(F_p) pipeline: enumerate, embed the unitriangular
// subgroup, intersect with its coordinate-swap conjugate, and certify
// that the restricted top Chern class moves — every check passes
// exactly when stability fails.
Report cmd_gl3(const CommandOptions& opt);

// Coprime semidirect product (from --alpha images or a seeded search)
// followed by the centre-stability check, plus the Y-stability check
// in the odd exponent-p^2 family.
Report cmd_semidirect(const CommandOptions& opt);

} // namespace esp

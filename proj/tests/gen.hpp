// Seeded random generators shared by the property tests: formulas bounded by
// connective depth, words and histories bounded by length. All draws come
// from one std::mt19937_64 so every failure is reproducible from the seed.
#pragma once

#include "aal/aal.hpp"

#include <random>

namespace gen {

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    std::uint64_t below(std::uint64_t n) { return g() % n; }
    bool coin() { return (g() & 1) != 0; }
};

// A formula whose connective nesting (counting every constructor, including
// the announced formula of a send modality) is at most `depth`.
inline aal::FormulaId random_formula(aal::Lang& lang, Rng& r, std::uint32_t depth) {
    aal::FormulaTable& ft = lang.formulas();
    const std::uint32_t n_atoms = lang.vocab().n_atoms();
    const std::uint32_t n_agents = lang.vocab().n_agents();
    auto leaf = [&]() {
        if (n_atoms == 0 || r.below(4) == 0)
            return ft.top();
        return ft.atom(static_cast<std::uint32_t>(r.below(n_atoms)));
    };
    if (depth == 0)
        return leaf();
    switch (r.below(6)) {
    case 0: return leaf();
    case 1: return ft.lnot(random_formula(lang, r, depth - 1));
    case 2:
        return ft.lor(random_formula(lang, r, depth - 1), random_formula(lang, r, depth - 1));
    case 3:
        return ft.hatk(static_cast<std::uint32_t>(r.below(n_agents)),
                       random_formula(lang, r, depth - 1));
    case 4:
        return ft.recv(static_cast<std::uint32_t>(r.below(n_agents)),
                       random_formula(lang, r, depth - 1));
    default:
        return ft.send(random_formula(lang, r, depth - 1), random_formula(lang, r, depth - 1));
    }
}

// A word of exactly `len` letters: receptions and announcements mixed freely,
// so the result need not be a history.
inline aal::WordId random_word(aal::Lang& lang, Rng& r, std::uint32_t len,
                               std::uint32_t formula_depth) {
    aal::WordTable& wt = lang.words();
    const std::uint32_t n_agents = lang.vocab().n_agents();
    aal::WordId w = wt.epsilon();
    for (std::uint32_t i = 0; i < len; ++i) {
        if (r.coin())
            w = wt.extend_recv(w, static_cast<std::uint32_t>(r.below(n_agents)));
        else
            w = wt.extend_ann(w, random_formula(lang, r, formula_depth));
    }
    return w;
}

// A history of exactly `len` letters: receptions are only drawn for agents
// that still have unread announcements, so every prefix stays a history.
inline aal::WordId random_history(aal::Lang& lang, Rng& r, std::uint32_t len,
                                  std::uint32_t formula_depth) {
    aal::WordTable& wt = lang.words();
    const std::uint32_t n_agents = lang.vocab().n_agents();
    aal::WordId w = wt.epsilon();
    for (std::uint32_t i = 0; i < len; ++i) {
        std::vector<std::uint32_t> eligible;
        for (std::uint32_t a = 0; a < n_agents; ++a)
            if (wt.agent_count(w, a) < wt.n_ann(w))
                eligible.push_back(a);
        if (!eligible.empty() && r.coin())
            w = wt.extend_recv(w, eligible[r.below(eligible.size())]);
        else
            w = wt.extend_ann(w, random_formula(lang, r, formula_depth));
    }
    return w;
}

} // namespace gen

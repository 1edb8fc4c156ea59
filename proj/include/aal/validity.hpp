// aal — validity checking: at the empty history, and bounded over all
// executable histories drawn from a vocabulary.
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "aal/semantics.hpp"

namespace aal {

enum class ValidityMode : std::uint8_t { Epsilon, Star };

struct ValidityQuery {
    FormulaId formula = 0;
    std::vector<EpistemicModel> models;   // explicit family (see random_family)
    std::vector<FormulaId> vocabulary;    // star mode: candidate announcements
    std::uint32_t max_len = 3;            // star mode: history length bound
    ValidityMode mode = ValidityMode::Star;
};

struct Counterexample {
    std::size_t model_index = 0;
    std::uint32_t state = 0;
    WordId word = 0;
};

struct ValidityReport {
    // No counterexample below the bound. Refutations are definitive;
    // "valid" is evidence relative to (models, vocabulary, bound) only.
    bool valid_up_to_bound = true;
    std::optional<Counterexample> counterexample;
    std::uint64_t checked_models = 0;
    std::uint64_t checked_histories = 0; // (model, history) pairs visited
    std::uint32_t bound_used = 0;
};

// Subformulas of f, plus T, plus f's atoms; canonical order. The search
// vocabulary used when a star query does not supply one. Each entry is
// double-negation stripped and the results deduplicated: announcing ~~g and
// announcing g give the same truth everywhere (letters matter only through
// their truth at the send point and inside views, where the same holds
// inductively), so the stripped set reaches exactly the same verdicts while
// keeping the history tree cubically smaller.
inline std::vector<FormulaId> default_star_vocabulary(Lang& lang, FormulaId f) {
    FormulaTable& ft = lang.formulas();
    std::vector<FormulaId> out;
    for (FormulaId g : ft.subformulas(f))
        out.push_back(ft.strip_double_negation(g));
    out.push_back(ft.top());
    for (std::uint32_t p : ft.atoms_of(f))
        out.push_back(ft.atom(p));
    std::sort(out.begin(), out.end(), [&](FormulaId a, FormulaId b) { return ft.less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// All histories of length <= max_len whose announcements come from vocab,
// in canonical order (length first, then letter-by-letter). Breadth-first
// extension preserves that order; reception letters are only appended where
// the history condition allows.
inline std::vector<WordId> enumerate_histories(Lang& lang, const std::vector<FormulaId>& vocab,
                                               std::uint32_t max_len) {
    FormulaTable& ft = lang.formulas();
    WordTable& wt = lang.words();
    std::vector<FormulaId> letters = vocab;
    std::sort(letters.begin(), letters.end(),
              [&](FormulaId a, FormulaId b) { return ft.less(a, b); });
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());

    std::vector<WordId> out;
    std::deque<WordId> queue{wt.epsilon()};
    while (!queue.empty()) {
        WordId w = queue.front();
        queue.pop_front();
        out.push_back(w);
        if (wt.len(w) >= max_len)
            continue;
        for (std::uint32_t a = 0; a < wt.n_agents(); ++a)
            if (wt.agent_count(w, a) < wt.n_ann(w))
                queue.push_back(wt.extend_recv(w, a));
        for (FormulaId mu : letters)
            queue.push_back(wt.extend_ann(w, mu));
    }
    return out;
}

// Truth at the empty history, over every state of every supplied model.
inline ValidityReport check_epsilon(Lang& lang, const ValidityQuery& q) {
    ValidityReport rep;
    rep.bound_used = 0;
    for (std::size_t mi = 0; mi < q.models.size(); ++mi) {
        EvalContext ctx(lang, q.models[mi]);
        ++rep.checked_models;
        ++rep.checked_histories;
        for (std::uint32_t s = 0; s < q.models[mi].n_states(); ++s) {
            if (!ctx.eval(s, lang.words().epsilon(), q.formula)) {
                rep.valid_up_to_bound = false;
                rep.counterexample = Counterexample{mi, s, lang.words().epsilon()};
                return rep;
            }
        }
    }
    return rep;
}

// Truth after every executable history up to the bound. The per-model search
// runs breadth-first over histories, carrying the set of states that can
// still run the history; an announcement extension filters that set, and a
// branch with no surviving state is pruned (nothing along it is executable).
inline ValidityReport check_star(Lang& lang, const ValidityQuery& q) {
    FormulaTable& ft = lang.formulas();
    WordTable& wt = lang.words();
    ValidityReport rep;
    rep.bound_used = q.max_len;

    std::vector<FormulaId> letters =
        q.vocabulary.empty() ? default_star_vocabulary(lang, q.formula) : q.vocabulary;
    std::sort(letters.begin(), letters.end(),
              [&](FormulaId a, FormulaId b) { return ft.less(a, b); });
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());

    struct Item {
        WordId word;
        std::vector<std::uint32_t> survivors;
    };
    for (std::size_t mi = 0; mi < q.models.size(); ++mi) {
        EvalContext ctx(lang, q.models[mi]);
        ++rep.checked_models;
        std::deque<Item> queue;
        std::vector<std::uint32_t> all(q.models[mi].n_states());
        for (std::uint32_t s = 0; s < all.size(); ++s)
            all[s] = s;
        queue.push_back({wt.epsilon(), std::move(all)});
        while (!queue.empty()) {
            Item it = std::move(queue.front());
            queue.pop_front();
            ++rep.checked_histories;
            for (std::uint32_t s : it.survivors) {
                if (!ctx.eval(s, it.word, q.formula)) {
                    rep.valid_up_to_bound = false;
                    rep.counterexample = Counterexample{mi, s, it.word};
                    return rep;
                }
            }
            if (wt.len(it.word) >= q.max_len)
                continue;
            for (std::uint32_t a = 0; a < wt.n_agents(); ++a)
                if (wt.agent_count(it.word, a) < wt.n_ann(it.word))
                    queue.push_back({wt.extend_recv(it.word, a), it.survivors});
            for (FormulaId mu : letters) {
                std::vector<std::uint32_t> next;
                for (std::uint32_t s : it.survivors)
                    if (ctx.eval(s, it.word, mu))
                        next.push_back(s);
                if (!next.empty())
                    queue.push_back({wt.extend_ann(it.word, mu), std::move(next)});
            }
        }
    }
    return rep;
}

struct EmptyFormula {
    FormulaId formula = 0;
    // With a single agent the formula exists but no longer characterizes
    // the empty history (its knowledge half is always-valid there).
    bool single_agent_warning = false;
};

// The conjunction over all agents a of "a cannot receive" with, for every
// pair (a, b), "a knows b cannot receive"; conjunctions fold left in
// declaration order.
inline EmptyFormula empty_formula(Lang& lang) {
    FormulaTable& ft = lang.formulas();
    const std::uint32_t na = lang.vocab().n_agents();
    std::optional<FormulaId> acc;
    auto add = [&](FormulaId g) { acc = acc ? ft.land(*acc, g) : g; };
    for (std::uint32_t a = 0; a < na; ++a)
        add(ft.box_recv(a, ft.bot()));
    for (std::uint32_t a = 0; a < na; ++a)
        for (std::uint32_t b = 0; b < na; ++b)
            add(ft.knows(a, ft.box_recv(b, ft.bot())));
    if (!acc)
        throw VocabError("empty_formula requires at least one agent");
    return {*acc, na < 2};
}

} // namespace aal

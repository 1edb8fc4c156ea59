// aal — executability and satisfaction over epistemic models.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "aal/lang.hpp"
#include "aal/model.hpp"

namespace aal {

enum class Fold : std::uint8_t { Diamond, Box };

// <w>f (Diamond) or [w]f (Box) as a formula. Box is a single negation pair
// around the whole modal chain, so fold_word(eps, f, Box) is ~~f.
inline FormulaId fold_word(Lang& lang, WordId w, FormulaId f, Fold mode) {
    FormulaTable& ft = lang.formulas();
    if (mode == Fold::Box)
        f = ft.lnot(f);
    std::vector<Letter> ls = lang.words().letters(w);
    for (std::size_t i = ls.size(); i-- > 0;)
        f = ls[i].is_agent() ? ft.recv(ls[i].agent, f) : ft.send(ls[i].formula, f);
    return mode == Fold::Box ? ft.lnot(f) : f;
}

struct EvalStats {
    std::uint64_t sat_queries = 0;   // satisfaction calls entering the recursion
    std::uint64_t sat_memo_hits = 0;
    std::uint64_t exec_queries = 0;  // executability calls entering the recursion
    std::uint64_t exec_memo_hits = 0;
    std::uint64_t ll_checks = 0;     // recursion-measure comparisons performed
    std::uint64_t max_pair_deg = 0;  // largest (word, formula) degree reached
    std::uint64_t max_pair_size = 0; // largest combined size reached
};

// Evaluation context for one model: memoised executability and satisfaction,
// plus the variants defined on histories only. Verdicts are
// cached in dense per-word rows indexed by (formula, state), so lookups are
// array reads. Every satisfaction call nested inside another satisfaction
// call is checked against the well-founded (degree, size) order; a violation
// throws std::logic_error, which would indicate a bug in the recursion.
class EvalContext {
  public:
    EvalContext(Lang& lang, const EpistemicModel& model) : lang_(lang), model_(model) {}
    EvalContext(const EvalContext&) = delete;
    EvalContext& operator=(const EvalContext&) = delete;

    Lang& lang() { return lang_; }
    const EpistemicModel& model() const { return model_; }
    const EvalStats& stats() const { return stats_; }

    // s can run w: every reception is backed by a pending announcement and
    // every announcement is truthful at its point.
    bool executable(std::uint32_t s, WordId w) {
        check_state(s);
        return exec_rec(s, w);
    }

    // s satisfies f after w. False whenever w is not a history (no state can
    // run a non-history word, and satisfaction entails executability).
    bool eval(std::uint32_t s, WordId w, FormulaId f) {
        check_state(s);
        return eval_rec(s, w, f);
    }

    // History-only variants: satisfaction carries no executability guard
    // (atoms and T are judged directly), executability recurses through the
    // guard-free satisfaction. Throw NotAHistory on non-history input.
    bool executable_minus(std::uint32_t s, WordId w) {
        check_state(s);
        check_history(w);
        return exec_minus_rec(s, w);
    }

    bool eval_minus(std::uint32_t s, WordId w, FormulaId f) {
        check_state(s);
        check_history(w);
        return eval_minus_rec(s, w, f);
    }

  private:
    enum : std::int8_t { Unknown = -1, False = 0, True = 1 };

    void check_state(std::uint32_t s) const {
        if (s >= model_.n_states())
            throw UnknownState("state index " + std::to_string(s) + " out of range");
    }
    void check_history(WordId w) const {
        if (!lang_.words().is_history(w))
            throw NotAHistory("word is not a history: requires every prefix to satisfy the "
                              "reception bound");
    }

    // Measure bookkeeping shared by both satisfaction variants. Entering a
    // satisfaction call checks strict descent against the enclosing
    // satisfaction frame; executability calls do not push frames, so chains
    // through them are checked against the nearest satisfaction ancestor.
    void enter_sat(WordId w, FormulaId f) {
        const WordTable& wt = lang_.words();
        std::uint64_t d = wt.pair_deg(w, f), z = wt.pair_size(w, f);
        if (!frames_.empty()) {
            ++stats_.ll_checks;
            if (!wt.ll_less(w, f, frames_.back().first, frames_.back().second))
                throw std::logic_error("recursion measure did not decrease: (" +
                                       std::to_string(d) + "," + std::to_string(z) + ")");
        }
        if (d > stats_.max_pair_deg)
            stats_.max_pair_deg = d;
        if (z > stats_.max_pair_size)
            stats_.max_pair_size = z;
    }

    struct FrameGuard {
        std::vector<std::pair<WordId, FormulaId>>& st;
        FrameGuard(std::vector<std::pair<WordId, FormulaId>>& s, WordId w, FormulaId f) : st(s) {
            st.emplace_back(w, f);
        }
        ~FrameGuard() { st.pop_back(); }
    };

    std::int8_t& sat_cell(std::vector<std::vector<std::int8_t>>& table, std::uint32_t s, WordId w,
                          FormulaId f) {
        if (w >= table.size())
            table.resize(lang_.words().count());
        auto& row = table[w];
        std::size_t idx = static_cast<std::size_t>(f) * model_.n_states() + s;
        if (idx >= row.size())
            row.resize(static_cast<std::size_t>(lang_.formulas().count()) * model_.n_states(),
                       Unknown);
        return row[idx];
    }

    std::int8_t& exec_cell(std::vector<std::vector<std::int8_t>>& table, std::uint32_t s,
                           WordId w) {
        if (w >= table.size())
            table.resize(lang_.words().count());
        auto& row = table[w];
        if (row.empty())
            row.resize(model_.n_states(), Unknown);
        return row[s];
    }

    bool exec_rec(std::uint32_t s, WordId w) {
        ++stats_.exec_queries;
        {
            std::int8_t& cell = exec_cell(exec_, s, w);
            if (cell != Unknown) {
                ++stats_.exec_memo_hits;
                return cell == True;
            }
        }
        const WordTable& wt = lang_.words();
        bool r;
        if (wt.len(w) == 0) {
            r = true;
        } else {
            WordId v = wt.parent(w);
            const Letter l = wt.last(w); // copy: recursion below may grow the table
            if (l.is_agent())
                r = exec_rec(s, v) && wt.agent_count(v, l.agent) < wt.n_ann(v);
            else
                r = exec_rec(s, v) && eval_rec(s, v, l.formula);
        }
        exec_cell(exec_, s, w) = r ? True : False;
        return r;
    }

    bool eval_rec(std::uint32_t s, WordId w, FormulaId f) {
        ++stats_.sat_queries;
        enter_sat(w, f);
        if (!lang_.words().is_history(w))
            return false; // nothing is executable along a non-history word
        {
            std::int8_t& cell = sat_cell(sat_, s, w, f);
            if (cell != Unknown) {
                ++stats_.sat_memo_hits;
                return cell == True;
            }
        }
        bool r;
        {
            FrameGuard fg(frames_, w, f);
            r = eval_cases(s, w, f);
        }
        sat_cell(sat_, s, w, f) = r ? True : False;
        return r;
    }

    bool eval_cases(std::uint32_t s, WordId w, FormulaId f) {
        WordTable& wt = lang_.words();
        const FormulaNode& n = lang_.formulas()[f];
        switch (n.kind) {
        case FKind::Atom:
            return exec_rec(s, w) && model_.value(n.idx, s);
        case FKind::Top:
            return exec_rec(s, w);
        case FKind::Not:
            return exec_rec(s, w) && !eval_rec(s, w, n.lhs);
        case FKind::Or:
            return eval_rec(s, w, n.lhs) || eval_rec(s, w, n.rhs);
        case FKind::HatK: {
            if (!exec_rec(s, w))
                return false;
            const std::vector<WordId>& vs = wt.views(w, n.idx);
            for (std::uint32_t t : model_.block(n.idx, s))
                for (WordId beta : vs)
                    if (exec_rec(t, beta) && eval_rec(t, beta, n.lhs))
                        return true;
            return false;
        }
        case FKind::Recv:
            return wt.agent_count(w, n.idx) < wt.n_ann(w) &&
                   eval_rec(s, wt.extend_recv(w, n.idx), n.lhs);
        case FKind::Send:
            return eval_rec(s, w, n.lhs) && eval_rec(s, wt.extend_ann(w, n.lhs), n.rhs);
        }
        return false; // unreachable
    }

    bool exec_minus_rec(std::uint32_t s, WordId w) {
        ++stats_.exec_queries;
        {
            std::int8_t& cell = exec_cell(exec_minus_, s, w);
            if (cell != Unknown) {
                ++stats_.exec_memo_hits;
                return cell == True;
            }
        }
        const WordTable& wt = lang_.words();
        bool r;
        if (wt.len(w) == 0) {
            r = true;
        } else {
            WordId v = wt.parent(w);
            const Letter l = wt.last(w); // copy: recursion below may grow the table
            if (l.is_agent())
                r = exec_minus_rec(s, v) && wt.agent_count(v, l.agent) < wt.n_ann(v);
            else
                r = exec_minus_rec(s, v) && eval_minus_rec(s, v, l.formula);
        }
        exec_cell(exec_minus_, s, w) = r ? True : False;
        return r;
    }

    bool eval_minus_rec(std::uint32_t s, WordId w, FormulaId f) {
        ++stats_.sat_queries;
        enter_sat(w, f);
        {
            std::int8_t& cell = sat_cell(sat_minus_, s, w, f);
            if (cell != Unknown) {
                ++stats_.sat_memo_hits;
                return cell == True;
            }
        }
        bool r;
        {
            FrameGuard fg(frames_, w, f);
            r = eval_minus_cases(s, w, f);
        }
        sat_cell(sat_minus_, s, w, f) = r ? True : False;
        return r;
    }

    bool eval_minus_cases(std::uint32_t s, WordId w, FormulaId f) {
        WordTable& wt = lang_.words();
        const FormulaNode& n = lang_.formulas()[f];
        switch (n.kind) {
        case FKind::Atom:
            return model_.value(n.idx, s);
        case FKind::Top:
            return true;
        case FKind::Not:
            return !eval_minus_rec(s, w, n.lhs);
        case FKind::Or:
            return eval_minus_rec(s, w, n.lhs) || eval_minus_rec(s, w, n.rhs);
        case FKind::HatK: {
            const std::vector<WordId>& vs = wt.views(w, n.idx);
            for (std::uint32_t t : model_.block(n.idx, s))
                for (WordId beta : vs)
                    if (exec_minus_rec(t, beta) && eval_minus_rec(t, beta, n.lhs))
                        return true;
            return false;
        }
        case FKind::Recv:
            return wt.agent_count(w, n.idx) < wt.n_ann(w) &&
                   eval_minus_rec(s, wt.extend_recv(w, n.idx), n.lhs);
        case FKind::Send:
            return eval_minus_rec(s, w, n.lhs) && eval_minus_rec(s, wt.extend_ann(w, n.lhs), n.rhs);
        }
        return false; // unreachable
    }

    Lang& lang_;
    const EpistemicModel& model_;
    EvalStats stats_;
    std::vector<std::vector<std::int8_t>> sat_;        // [word][formula * n_states + state]
    std::vector<std::vector<std::int8_t>> exec_;       // [word][state]
    std::vector<std::vector<std::int8_t>> sat_minus_;  // same layout, history-only variant
    std::vector<std::vector<std::int8_t>> exec_minus_;
    std::vector<std::pair<WordId, FormulaId>> frames_; // enclosing satisfaction calls
};

// Restriction of the model to the states that can run w; nullopt when no
// state survives (the trivial model is not representable). Surviving states
// keep their order; empty partition classes are dropped.
inline std::optional<EpistemicModel> update_model(EvalContext& ctx, WordId w) {
    const EpistemicModel& m = ctx.model();
    std::vector<std::uint32_t> keep;
    for (std::uint32_t s = 0; s < m.n_states(); ++s)
        if (ctx.executable(s, w))
            keep.push_back(s);
    if (keep.empty())
        return std::nullopt;
    EpistemicModel r;
    std::vector<std::uint32_t> new_id(m.n_states(), UINT32_MAX);
    for (std::uint32_t i = 0; i < keep.size(); ++i) {
        new_id[keep[i]] = i;
        r.states.push_back(m.states[keep[i]]);
        r.state_index.emplace(r.states.back(), i);
    }
    const std::uint32_t na = static_cast<std::uint32_t>(m.class_of.size());
    r.class_of.assign(na, std::vector<std::uint32_t>(keep.size(), 0));
    r.classes.assign(na, {});
    for (std::uint32_t a = 0; a < na; ++a) {
        std::vector<std::uint32_t> remap(m.classes[a].size(), UINT32_MAX);
        for (std::uint32_t s : keep) {
            std::uint32_t c = m.class_of[a][s];
            if (remap[c] == UINT32_MAX) {
                remap[c] = static_cast<std::uint32_t>(r.classes[a].size());
                r.classes[a].push_back({});
            }
            r.class_of[a][new_id[s]] = remap[c];
            r.classes[a][remap[c]].push_back(new_id[s]);
        }
    }
    r.val.assign(m.val.size(), std::vector<bool>(keep.size(), false));
    for (std::size_t p = 0; p < m.val.size(); ++p)
        for (std::uint32_t s : keep)
            r.val[p][new_id[s]] = m.val[p][s];
    return r;
}

} // namespace aal

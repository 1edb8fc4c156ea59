// aal — axiom schemas: instantiation and instance recognition.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aal/validity.hpp"

namespace aal {

// The schema catalogue. Word-indexed schemas take a word metavariable
// (alpha); exec_w2 / exec_w3 carry counting side conditions on it.
enum class AxiomSchema : std::uint8_t {
    Dist,   // K a (phi -> psi) -> (K a phi -> K a psi)
    DistW,  // [alpha](phi -> psi) -> ([alpha]phi -> [alpha]psi)
    EmptyK, // empty -> K a empty
    EmptyT, // empty -> (K a phi -> phi)
    Four,   // K a phi -> K a K a phi
    Five,   // Khat a phi -> K a Khat a phi
    ExecW1, // <phi>T <-> phi
    ExecW2, // [alpha]<a>T                      if |alpha|_a < |alpha|_!
    ExecW3, // empty -> [alpha][a]F             if |alpha|_a >= |alpha|_!
    FuncW,  // <alpha>phi -> [alpha]phi
    PermW,  // (p -> [alpha]p) & (~p -> [alpha]~p)
    EmptyW, // empty -> ([alpha]K a phi <-> ([alpha]F | AND_beta K a [beta]phi))
};

inline const char* schema_name(AxiomSchema s) {
    switch (s) {
    case AxiomSchema::Dist: return "dist";
    case AxiomSchema::DistW: return "dist_w";
    case AxiomSchema::EmptyK: return "empty_k";
    case AxiomSchema::EmptyT: return "empty_t";
    case AxiomSchema::Four: return "four";
    case AxiomSchema::Five: return "five";
    case AxiomSchema::ExecW1: return "exec_w1";
    case AxiomSchema::ExecW2: return "exec_w2";
    case AxiomSchema::ExecW3: return "exec_w3";
    case AxiomSchema::FuncW: return "func_w";
    case AxiomSchema::PermW: return "perm_w";
    case AxiomSchema::EmptyW: return "empty_w";
    }
    return "?";
}

inline const std::vector<AxiomSchema>& all_schemas() {
    static const std::vector<AxiomSchema> v = {
        AxiomSchema::Dist,   AxiomSchema::DistW,  AxiomSchema::EmptyK, AxiomSchema::EmptyT,
        AxiomSchema::Four,   AxiomSchema::Five,   AxiomSchema::ExecW1, AxiomSchema::ExecW2,
        AxiomSchema::ExecW3, AxiomSchema::FuncW,  AxiomSchema::PermW,  AxiomSchema::EmptyW,
    };
    return v;
}

inline std::optional<AxiomSchema> schema_from_name(std::string_view name) {
    for (AxiomSchema s : all_schemas())
        if (name == schema_name(s))
            return s;
    return std::nullopt;
}

struct Bindings {
    std::optional<FormulaId> phi;
    std::optional<FormulaId> psi;
    std::optional<std::uint32_t> agent; // metavariable "a"
    std::optional<std::uint32_t> atom;  // metavariable "p" (perm_w)
    std::optional<WordId> alpha;

    bool operator==(const Bindings&) const = default;
};

// Which metavariables a schema consumes (subset of phi, psi, agent, atom,
// alpha), for usage messages and completeness checks.
inline std::vector<std::string> schema_metavars(AxiomSchema s) {
    switch (s) {
    case AxiomSchema::Dist: return {"agent", "phi", "psi"};
    case AxiomSchema::DistW: return {"alpha", "phi", "psi"};
    case AxiomSchema::EmptyK: return {"agent"};
    case AxiomSchema::EmptyT: return {"agent", "phi"};
    case AxiomSchema::Four: return {"agent", "phi"};
    case AxiomSchema::Five: return {"agent", "phi"};
    case AxiomSchema::ExecW1: return {"phi"};
    case AxiomSchema::ExecW2: return {"alpha", "agent"};
    case AxiomSchema::ExecW3: return {"alpha", "agent"};
    case AxiomSchema::FuncW: return {"alpha", "phi"};
    case AxiomSchema::PermW: return {"alpha", "atom"};
    case AxiomSchema::EmptyW: return {"alpha", "agent", "phi"};
    }
    return {};
}

// Builds the desugared instance. Throws IncompleteBindings when a needed
// metavariable is absent and SideConditionViolated when the word fails the
// schema's counting condition.
inline FormulaId instantiate_axiom(Lang& lang, AxiomSchema s, const Bindings& b) {
    FormulaTable& ft = lang.formulas();
    WordTable& wt = lang.words();
    auto need = [&](bool present, const char* name) {
        if (!present)
            throw IncompleteBindings(std::string("schema ") + schema_name(s) +
                                     " needs metavariable '" + name + "'");
    };
    auto box = [&](WordId w, FormulaId f) { return fold_word(lang, w, f, Fold::Box); };
    auto dia = [&](WordId w, FormulaId f) { return fold_word(lang, w, f, Fold::Diamond); };
    for (const std::string& mv : schema_metavars(s)) {
        if (mv == "phi") need(b.phi.has_value(), "phi");
        else if (mv == "psi") need(b.psi.has_value(), "psi");
        else if (mv == "agent") need(b.agent.has_value(), "agent");
        else if (mv == "atom") need(b.atom.has_value(), "atom");
        else if (mv == "alpha") need(b.alpha.has_value(), "alpha");
    }
    switch (s) {
    case AxiomSchema::Dist:
        return ft.implies(ft.knows(*b.agent, ft.implies(*b.phi, *b.psi)),
                          ft.implies(ft.knows(*b.agent, *b.phi), ft.knows(*b.agent, *b.psi)));
    case AxiomSchema::DistW:
        return ft.implies(box(*b.alpha, ft.implies(*b.phi, *b.psi)),
                          ft.implies(box(*b.alpha, *b.phi), box(*b.alpha, *b.psi)));
    case AxiomSchema::EmptyK: {
        FormulaId e = empty_formula(lang).formula;
        return ft.implies(e, ft.knows(*b.agent, e));
    }
    case AxiomSchema::EmptyT:
        return ft.implies(empty_formula(lang).formula,
                          ft.implies(ft.knows(*b.agent, *b.phi), *b.phi));
    case AxiomSchema::Four:
        return ft.implies(ft.knows(*b.agent, *b.phi),
                          ft.knows(*b.agent, ft.knows(*b.agent, *b.phi)));
    case AxiomSchema::Five:
        return ft.implies(ft.hatk(*b.agent, *b.phi),
                          ft.knows(*b.agent, ft.hatk(*b.agent, *b.phi)));
    case AxiomSchema::ExecW1:
        return ft.iff(ft.send(*b.phi, ft.top()), *b.phi);
    case AxiomSchema::ExecW2:
        if (!(wt.agent_count(*b.alpha, *b.agent) < wt.n_ann(*b.alpha)))
            throw SideConditionViolated(
                "exec_w2 requires the agent to have fewer receptions than announcements");
        return box(*b.alpha, ft.recv(*b.agent, ft.top()));
    case AxiomSchema::ExecW3:
        if (wt.agent_count(*b.alpha, *b.agent) < wt.n_ann(*b.alpha))
            throw SideConditionViolated(
                "exec_w3 requires the agent to have at least as many receptions as announcements");
        return ft.implies(empty_formula(lang).formula,
                          box(*b.alpha, ft.box_recv(*b.agent, ft.bot())));
    case AxiomSchema::FuncW:
        return ft.implies(dia(*b.alpha, *b.phi), box(*b.alpha, *b.phi));
    case AxiomSchema::PermW: {
        FormulaId p = ft.atom(*b.atom);
        return ft.land(ft.implies(p, box(*b.alpha, p)),
                       ft.implies(ft.lnot(p), box(*b.alpha, ft.lnot(p))));
    }
    case AxiomSchema::EmptyW: {
        FormulaId e = empty_formula(lang).formula;
        FormulaId lhs = box(*b.alpha, ft.knows(*b.agent, *b.phi));
        std::vector<WordId> vs = wt.views(*b.alpha, *b.agent); // canonical order
        std::optional<FormulaId> conj;
        for (WordId beta : vs) {
            FormulaId g = ft.knows(*b.agent, box(beta, *b.phi));
            conj = conj ? ft.land(*conj, g) : g;
        }
        FormulaId rhs = ft.lor(box(*b.alpha, ft.bot()), *conj);
        return ft.implies(e, ft.iff(lhs, rhs));
    }
    }
    throw Error("unknown schema");
}

namespace detail {

// Destructuring helpers over normalized formulas (no ~~ anywhere). Each
// recognizer returns the metavariable candidates for one reading; callers
// confirm a reading by re-instantiating and comparing normalized forms.

struct ImplParts {
    FormulaId lhs, rhs;
};

// Any Or node reads as an implication: (x | y) is norm(~A | B) with
// A = norm(~x), B = y.
inline std::optional<ImplParts> as_impl(FormulaTable& ft, FormulaId f) {
    if (ft.kind(f) != FKind::Or)
        return std::nullopt;
    const FormulaNode& n = ft[f];
    return ImplParts{ft.strip_double_negation(ft.lnot(n.lhs)), n.rhs};
}

// A & B normalizes to ~(norm(~A) | norm(~B)).
inline std::optional<ImplParts> as_and(FormulaTable& ft, FormulaId f) {
    if (ft.kind(f) != FKind::Not || ft.kind(ft[f].lhs) != FKind::Or)
        return std::nullopt;
    const FormulaNode& o = ft[ft[f].lhs];
    return ImplParts{ft.strip_double_negation(ft.lnot(o.lhs)),
                     ft.strip_double_negation(ft.lnot(o.rhs))};
}

struct KnowsParts {
    std::uint32_t agent;
    FormulaId body;
};

// K a phi normalizes to ~Khat a norm(~phi).
inline std::optional<KnowsParts> as_knows(FormulaTable& ft, FormulaId f) {
    if (ft.kind(f) != FKind::Not || ft.kind(ft[f].lhs) != FKind::HatK)
        return std::nullopt;
    const FormulaNode& k = ft[ft[f].lhs];
    return KnowsParts{k.idx, ft.strip_double_negation(ft.lnot(k.lhs))};
}

struct BoxSplit {
    WordId alpha;
    FormulaId body;
};

// All readings of f as [alpha]body. [eps]body covers every formula; a
// leading negation over a Send/Recv spine yields one reading per spine
// prefix (the unconsumed tail folds into the body as a diamond). Longest
// alpha first.
inline std::vector<BoxSplit> box_splits(Lang& lang, FormulaId f) {
    FormulaTable& ft = lang.formulas();
    WordTable& wt = lang.words();
    std::vector<BoxSplit> out;
    if (ft.kind(f) == FKind::Not) {
        std::vector<Letter> chain;
        FormulaId cur = ft[f].lhs;
        for (;;) {
            if (ft.kind(cur) == FKind::Send) {
                chain.push_back(Letter::ann(ft[cur].lhs));
                cur = ft[cur].rhs;
            } else if (ft.kind(cur) == FKind::Recv) {
                chain.push_back(Letter::recv(ft[cur].idx));
                cur = ft[cur].lhs;
            } else {
                break;
            }
            WordId w = wt.epsilon();
            for (const Letter& l : chain)
                w = wt.extend(w, l);
            out.push_back({w, ft.strip_double_negation(ft.lnot(cur))});
        }
        std::reverse(out.begin(), out.end());
    }
    out.push_back({wt.epsilon(), f});
    return out;
}

// Same prefix enumeration for <alpha>body readings: a bare Send/Recv spine.
inline std::vector<BoxSplit> dia_splits(Lang& lang, FormulaId f) {
    FormulaTable& ft = lang.formulas();
    WordTable& wt = lang.words();
    std::vector<BoxSplit> out;
    std::vector<Letter> chain;
    FormulaId cur = f;
    for (;;) {
        if (ft.kind(cur) == FKind::Send) {
            chain.push_back(Letter::ann(ft[cur].lhs));
            cur = ft[cur].rhs;
        } else if (ft.kind(cur) == FKind::Recv) {
            chain.push_back(Letter::recv(ft[cur].idx));
            cur = ft[cur].lhs;
        } else {
            break;
        }
        WordId w = wt.epsilon();
        for (const Letter& l : chain)
            w = wt.extend(w, l);
        out.push_back({w, cur});
    }
    std::reverse(out.begin(), out.end());
    out.push_back({wt.epsilon(), f});
    return out;
}

} // namespace detail

// Some(bindings) iff f is a desugared instance of the schema (side
// conditions included). Comparison is modulo double-negation removal, the
// same identity the proof checker uses. Where a word metavariable makes a
// reading ambiguous ([p][q]r vs [p.q]r), the longest word that verifies is
// returned.
inline std::optional<Bindings> match_axiom(Lang& lang, FormulaId f, AxiomSchema s) {
    using namespace detail;
    FormulaTable& ft = lang.formulas();
    const FormulaId n = ft.strip_double_negation(f);

    auto verified = [&](const Bindings& b) -> std::optional<Bindings> {
        try {
            if (ft.strip_double_negation(instantiate_axiom(lang, s, b)) == n)
                return b;
        } catch (const Error&) {
        }
        return std::nullopt;
    };

    switch (s) {
    case AxiomSchema::Dist: {
        auto outer = as_impl(ft, n);
        if (!outer)
            return std::nullopt;
        auto inner = as_impl(ft, outer->rhs);
        if (!inner)
            return std::nullopt;
        auto kp = as_knows(ft, inner->lhs);
        auto kq = as_knows(ft, inner->rhs);
        if (!kp || !kq)
            return std::nullopt;
        Bindings b;
        b.agent = kp->agent;
        b.phi = kp->body;
        b.psi = kq->body;
        return verified(b);
    }
    case AxiomSchema::DistW: {
        auto outer = as_impl(ft, n);
        if (!outer)
            return std::nullopt;
        for (const BoxSplit& bs : box_splits(lang, outer->lhs)) {
            auto imp = as_impl(ft, bs.body);
            if (!imp)
                continue;
            Bindings b;
            b.alpha = bs.alpha;
            b.phi = imp->lhs;
            b.psi = imp->rhs;
            if (auto r = verified(b))
                return r;
        }
        return std::nullopt;
    }
    case AxiomSchema::EmptyK: {
        auto outer = as_impl(ft, n);
        if (!outer)
            return std::nullopt;
        auto k = as_knows(ft, outer->rhs);
        if (!k)
            return std::nullopt;
        Bindings b;
        b.agent = k->agent;
        return verified(b);
    }
    case AxiomSchema::EmptyT: {
        auto outer = as_impl(ft, n);
        if (!outer)
            return std::nullopt;
        auto inner = as_impl(ft, outer->rhs);
        if (!inner)
            return std::nullopt;
        auto k = as_knows(ft, inner->lhs);
        if (!k)
            return std::nullopt;
        Bindings b;
        b.agent = k->agent;
        b.phi = inner->rhs;
        if (auto r = verified(b))
            return r;
        b.phi = k->body; // the two reads differ when phi itself is negated
        return verified(b);
    }
    case AxiomSchema::Four: {
        auto outer = as_impl(ft, n);
        if (!outer)
            return std::nullopt;
        auto k = as_knows(ft, outer->lhs);
        if (!k)
            return std::nullopt;
        Bindings b;
        b.agent = k->agent;
        b.phi = k->body;
        return verified(b);
    }
    case AxiomSchema::Five: {
        if (ft.kind(n) != FKind::Or || ft.kind(ft[n].lhs) != FKind::Not)
            return std::nullopt;
        FormulaId hat = ft[ft[n].lhs].lhs;
        if (ft.kind(hat) != FKind::HatK)
            return std::nullopt;
        Bindings b;
        b.agent = ft[hat].idx;
        b.phi = ft[hat].lhs;
        return verified(b);
    }
    case AxiomSchema::ExecW1: {
        auto both = as_and(ft, n);
        if (!both)
            return std::nullopt;
        auto fwd = as_impl(ft, both->lhs);
        if (!fwd)
            return std::nullopt;
        Bindings b;
        b.phi = fwd->rhs;
        return verified(b);
    }
    case AxiomSchema::ExecW2: {
        for (const BoxSplit& bs : box_splits(lang, n)) {
            if (ft.kind(bs.body) != FKind::Recv || ft.kind(ft[bs.body].lhs) != FKind::Top)
                continue;
            Bindings b;
            b.alpha = bs.alpha;
            b.agent = ft[bs.body].idx;
            if (auto r = verified(b))
                return r;
        }
        return std::nullopt;
    }
    case AxiomSchema::ExecW3: {
        auto outer = as_impl(ft, n);
        if (!outer)
            return std::nullopt;
        for (const BoxSplit& bs : box_splits(lang, outer->rhs)) {
            // normalized [a]F is ~<a>T
            if (ft.kind(bs.body) != FKind::Not)
                continue;
            FormulaId r1 = ft[bs.body].lhs;
            if (ft.kind(r1) != FKind::Recv || ft.kind(ft[r1].lhs) != FKind::Top)
                continue;
            Bindings b;
            b.alpha = bs.alpha;
            b.agent = ft[r1].idx;
            if (auto r = verified(b))
                return r;
        }
        return std::nullopt;
    }
    case AxiomSchema::FuncW: {
        auto outer = as_impl(ft, n);
        if (!outer)
            return std::nullopt;
        for (const BoxSplit& bs : box_splits(lang, outer->rhs)) {
            Bindings b;
            b.alpha = bs.alpha;
            b.phi = bs.body;
            if (auto r = verified(b))
                return r;
        }
        return std::nullopt;
    }
    case AxiomSchema::PermW: {
        auto both = as_and(ft, n);
        if (!both)
            return std::nullopt;
        auto fwd = as_impl(ft, both->lhs);
        if (!fwd || ft.kind(fwd->lhs) != FKind::Atom)
            return std::nullopt;
        for (const BoxSplit& bs : box_splits(lang, fwd->rhs)) {
            if (bs.body != fwd->lhs)
                continue;
            Bindings b;
            b.atom = ft[fwd->lhs].idx;
            b.alpha = bs.alpha;
            if (auto r = verified(b))
                return r;
        }
        return std::nullopt;
    }
    case AxiomSchema::EmptyW: {
        auto outer = as_impl(ft, n);
        if (!outer)
            return std::nullopt;
        auto both = as_and(ft, outer->rhs);
        if (!both)
            return std::nullopt;
        auto fwd = as_impl(ft, both->lhs);
        if (!fwd)
            return std::nullopt;
        for (const BoxSplit& bs : box_splits(lang, fwd->lhs)) {
            auto k = as_knows(ft, bs.body);
            if (!k)
                continue;
            Bindings b;
            b.alpha = bs.alpha;
            b.agent = k->agent;
            b.phi = k->body;
            if (auto r = verified(b))
                return r;
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

} // namespace aal

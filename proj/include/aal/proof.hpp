// aal — Hilbert-style proof checking with a bounded word-generalization rule.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aal/axioms.hpp"
#include "aal/parse.hpp"

namespace aal {

// True iff f is a substitution instance of a propositional tautology:
// maximal non-Boolean subformulas become opaque letters and the result is
// truth-tabled. Double negations are removed first (they are semantically
// transparent and the proof checker's formula identity ignores them).
// Throws TooManyLetters beyond 20 distinct letters.
inline bool check_tautology(Lang& lang, FormulaId f) {
    FormulaTable& ft = lang.formulas();
    FormulaId n = ft.strip_double_negation(f);
    std::vector<FormulaId> letters;
    auto letter_index = [&](FormulaId g) -> std::size_t {
        for (std::size_t i = 0; i < letters.size(); ++i)
            if (letters[i] == g)
                return i;
        letters.push_back(g);
        return letters.size() - 1;
    };
    // Collect opaque letters depth-first.
    std::vector<FormulaId> stack{n};
    while (!stack.empty()) {
        FormulaId g = stack.back();
        stack.pop_back();
        switch (ft.kind(g)) {
        case FKind::Top:
            break;
        case FKind::Not:
            stack.push_back(ft[g].lhs);
            break;
        case FKind::Or:
            stack.push_back(ft[g].lhs);
            stack.push_back(ft[g].rhs);
            break;
        default:
            letter_index(g);
            break;
        }
    }
    if (letters.size() > 20)
        throw TooManyLetters("tautology check limited to 20 opaque letters, got " +
                             std::to_string(letters.size()));
    // Truth-table the Boolean skeleton.
    std::function<bool(FormulaId, std::uint32_t)> ev = [&](FormulaId g,
                                                           std::uint32_t mask) -> bool {
        switch (ft.kind(g)) {
        case FKind::Top:
            return true;
        case FKind::Not:
            return !ev(ft[g].lhs, mask);
        case FKind::Or:
            return ev(ft[g].lhs, mask) || ev(ft[g].rhs, mask);
        default:
            return (mask >> letter_index(g)) & 1;
        }
    };
    const std::uint32_t combos = 1u << letters.size();
    for (std::uint32_t mask = 0; mask < combos; ++mask)
        if (!ev(n, mask))
            return false;
    return true;
}

struct ProofLine {
    enum class Kind : std::uint8_t {
        Tautology,
        Axiom,
        MP,
        NecK,
        NecBang,
        RStarBounded,
        Hypothesis,
    };
    std::uint32_t index = 0; // 1-based, sequential
    FormulaId formula = 0;
    Kind kind = Kind::Tautology;
    AxiomSchema schema = AxiomSchema::Dist;    // Axiom
    std::uint32_t cite_i = 0, cite_j = 0;      // MP (i, j), NecK/NecBang (i)
    std::uint32_t agent = 0;                   // NecK
    WordId word = 0;                           // NecBang
    std::string template_ref;                  // RStarBounded
    std::vector<FormulaId> rstar_vocab;        // RStarBounded
    std::uint32_t rstar_bound = 0;             // RStarBounded
    std::string label;                         // Hypothesis
    std::string text;                          // source text of the line
};

struct Proof {
    std::vector<ProofLine> lines;
    FormulaId conclusion = 0; // formula of the last line
};

enum class LineVerdict : std::uint8_t { Accepted, AcceptedBounded, Rejected };

struct LineReport {
    std::uint32_t index = 0;
    LineVerdict verdict = LineVerdict::Accepted;
    std::string message;
};

struct ProofReport {
    enum class Overall : std::uint8_t { Accepted, AcceptedBounded, Rejected };
    std::vector<LineReport> lines;
    Overall overall = Overall::Accepted;
    bool uses_hypotheses = false;
    FormulaId conclusion = 0;

    bool all_lines_ok() const { return overall != Overall::Rejected; }
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(std::string_view(s).substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

} // namespace detail

// Parses the numbered lines of a proof document against an existing
// language. The document's "agents"/"atoms" declarations must match the
// language exactly (same names, same order).
//
//   # comment
//   agents a b
//   atoms p q
//   1. <formula> ; <justification>
//
// Justifications: taut | axiom <schema> | mp <i> <j> | neck <i> <agent> |
// necbang <i> <word> | rstar <ref> vocab <f,...> bound <n> | hyp <label>
inline Proof parse_proof_lines(Lang& lang, const std::string& text) {
    Proof proof;
    std::istringstream in(text);
    std::string raw;
    bool saw_agents = false, saw_atoms = false;
    std::uint32_t expected_index = 1;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        auto fail = [&](const std::string& msg) -> SyntaxError {
            return SyntaxError("proof line " + std::to_string(line_no) + ": " + msg);
        };
        if (line.rfind("agents", 0) == 0 || line.rfind("atoms", 0) == 0) {
            bool agents = line[1] == 'g';
            std::vector<std::string> toks = detail::split_ws(line);
            toks.erase(toks.begin());
            const std::vector<std::string>& want =
                agents ? lang.vocab().agents() : lang.vocab().atoms();
            if (toks != want)
                throw fail("declaration does not match the language vocabulary");
            (agents ? saw_agents : saw_atoms) = true;
            continue;
        }
        std::size_t dot = line.find('.');
        if (dot == std::string::npos)
            throw fail("expected '<index>. <formula> ; <justification>'");
        std::uint32_t idx;
        try {
            idx = static_cast<std::uint32_t>(std::stoul(line.substr(0, dot)));
        } catch (...) {
            throw fail("bad line index");
        }
        if (idx != expected_index)
            throw fail("line indices must be sequential from 1 (expected " +
                       std::to_string(expected_index) + ")");
        std::size_t semi = line.find(';', dot + 1);
        if (semi == std::string::npos)
            throw fail("missing ';' before justification");
        std::string ftext = detail::trim(std::string_view(line).substr(dot + 1, semi - dot - 1));
        std::string jtext = detail::trim(std::string_view(line).substr(semi + 1));
        ProofLine pl;
        pl.index = idx;
        pl.text = line;
        pl.formula = parse_formula(lang, ftext);
        std::vector<std::string> j = detail::split_ws(jtext);
        if (j.empty())
            throw fail("empty justification");
        auto cite = [&](const std::string& s) -> std::uint32_t {
            std::uint32_t v;
            try {
                v = static_cast<std::uint32_t>(std::stoul(s));
            } catch (...) {
                throw fail("bad cited index '" + s + "'");
            }
            if (v == 0 || v >= idx)
                throw fail("cited index " + s + " must name an earlier line");
            return v;
        };
        if (j[0] == "taut" && j.size() == 1) {
            pl.kind = ProofLine::Kind::Tautology;
        } else if (j[0] == "axiom" && j.size() == 2) {
            auto s = schema_from_name(j[1]);
            if (!s)
                throw fail("unknown axiom schema '" + j[1] + "'");
            pl.kind = ProofLine::Kind::Axiom;
            pl.schema = *s;
        } else if (j[0] == "mp" && j.size() == 3) {
            pl.kind = ProofLine::Kind::MP;
            pl.cite_i = cite(j[1]);
            pl.cite_j = cite(j[2]);
        } else if (j[0] == "neck" && j.size() == 3) {
            pl.kind = ProofLine::Kind::NecK;
            pl.cite_i = cite(j[1]);
            pl.agent = lang.agent(j[2]);
        } else if (j[0] == "necbang" && j.size() == 3) {
            pl.kind = ProofLine::Kind::NecBang;
            pl.cite_i = cite(j[1]);
            pl.word = parse_word(lang, j[2]);
        } else if (j[0] == "rstar") {
            // rstar <ref> vocab <f1,f2,...> bound <n>
            if (j.size() < 5)
                throw fail("rstar needs '<ref> vocab <formulas> bound <n>'");
            pl.kind = ProofLine::Kind::RStarBounded;
            pl.template_ref = j[1];
            std::size_t k = 2;
            if (j[k] != "vocab")
                throw fail("rstar: expected 'vocab'");
            ++k;
            std::string vocab_text;
            while (k < j.size() && j[k] != "bound")
                vocab_text += (vocab_text.empty() ? "" : " ") + j[k++];
            if (k + 1 >= j.size() || j[k] != "bound")
                throw fail("rstar: expected 'bound <n>'");
            for (const std::string& part : detail::split_on(vocab_text, ','))
                pl.rstar_vocab.push_back(parse_formula(lang, part));
            try {
                pl.rstar_bound = static_cast<std::uint32_t>(std::stoul(j[k + 1]));
            } catch (...) {
                throw fail("rstar: bad bound");
            }
        } else if (j[0] == "hyp" && j.size() >= 2) {
            pl.kind = ProofLine::Kind::Hypothesis;
            pl.label = j[1];
        } else {
            throw fail("unrecognized justification '" + jtext + "'");
        }
        proof.lines.push_back(std::move(pl));
        ++expected_index;
    }
    if (!saw_agents || !saw_atoms)
        throw SyntaxError("proof document must declare 'agents' and 'atoms'");
    if (proof.lines.empty())
        throw SyntaxError("proof document has no lines");
    proof.conclusion = proof.lines.back().formula;
    return proof;
}

struct ParsedProof {
    std::unique_ptr<Lang> lang;
    Proof proof;
};

// Parses a standalone proof document, building the language it declares.
inline ParsedProof parse_proof_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::vector<std::string> agents, atoms;
    while (std::getline(in, raw)) {
        std::string line = detail::trim(raw);
        if (line.rfind("agents", 0) == 0) {
            agents = detail::split_ws(line);
            agents.erase(agents.begin());
        } else if (line.rfind("atoms", 0) == 0) {
            atoms = detail::split_ws(line);
            atoms.erase(atoms.begin());
        }
    }
    if (agents.empty())
        throw SyntaxError("proof document must declare at least one agent");
    ParsedProof pp;
    pp.lang = std::make_unique<Lang>(agents, atoms);
    pp.proof = parse_proof_lines(*pp.lang, text);
    return pp;
}

// Resolves a template reference to its document text.
using TemplateLoader = std::function<std::string(const std::string&)>;

namespace detail {

inline std::string substitute_word_var(const std::string& text, const std::string& word) {
    std::string out;
    std::size_t pos = 0;
    for (;;) {
        std::size_t hit = text.find("@w", pos);
        if (hit == std::string::npos) {
            out += text.substr(pos);
            return out;
        }
        out += text.substr(pos, hit - pos);
        out += word;
        pos = hit + 2;
    }
}

} // namespace detail

inline ProofReport check_proof(Lang& lang, const Proof& proof, const TemplateLoader& loader,
                               bool allow_rstar = true);

namespace detail {

inline LineReport check_line(Lang& lang, const Proof& proof, const ProofLine& pl,
                             const TemplateLoader& loader, bool allow_rstar) {
    FormulaTable& ft = lang.formulas();
    auto norm = [&](FormulaId g) { return ft.strip_double_negation(g); };
    LineReport lr;
    lr.index = pl.index;
    auto reject = [&](const std::string& msg) {
        lr.verdict = LineVerdict::Rejected;
        lr.message = msg;
        return lr;
    };
    auto earlier = [&](std::uint32_t i) -> FormulaId { return proof.lines[i - 1].formula; };
    switch (pl.kind) {
    case ProofLine::Kind::Tautology:
        try {
            if (!check_tautology(lang, pl.formula))
                return reject("not a tautology instance");
        } catch (const TooManyLetters& e) {
            return reject(e.what());
        }
        break;
    case ProofLine::Kind::Axiom:
        if (!match_axiom(lang, pl.formula, pl.schema))
            return reject(std::string("not an instance of schema ") + schema_name(pl.schema));
        break;
    case ProofLine::Kind::MP: {
        FormulaId fi = earlier(pl.cite_i);
        FormulaId fj = earlier(pl.cite_j);
        if (norm(fj) != norm(ft.implies(fi, pl.formula)))
            return reject("line " + std::to_string(pl.cite_j) + " is not (line " +
                          std::to_string(pl.cite_i) + ") -> (this line)");
        break;
    }
    case ProofLine::Kind::NecK:
        if (norm(pl.formula) != norm(ft.knows(pl.agent, earlier(pl.cite_i))))
            return reject("formula is not K " + lang.vocab().agent_name(pl.agent) + " (line " +
                          std::to_string(pl.cite_i) + ")");
        break;
    case ProofLine::Kind::NecBang:
        if (norm(pl.formula) != norm(fold_word(lang, pl.word, earlier(pl.cite_i), Fold::Box)))
            return reject("formula is not [" + print_word(lang, pl.word) + "] of line " +
                          std::to_string(pl.cite_i));
        break;
    case ProofLine::Kind::RStarBounded: {
        if (!allow_rstar)
            return reject("nested rstar justifications are not allowed in templates");
        if (!loader)
            return reject("no template loader supplied");
        std::string tmpl;
        try {
            tmpl = loader(pl.template_ref);
        } catch (const std::exception& e) {
            return reject(std::string("cannot load template: ") + e.what());
        }
        if (tmpl.find("@w") == std::string::npos)
            return reject("template has no @w word metavariable");
        std::vector<WordId> hs = enumerate_histories(lang, pl.rstar_vocab, pl.rstar_bound);
        for (WordId h : hs) {
            std::string inst = substitute_word_var(tmpl, print_word(lang, h));
            Proof sub;
            try {
                sub = parse_proof_lines(lang, inst);
            } catch (const Error& e) {
                return reject("template at word '" + print_word(lang, h) +
                              "' does not parse: " + e.what());
            }
            ProofReport sr = check_proof(lang, sub, loader, /*allow_rstar=*/false);
            if (sr.overall != ProofReport::Overall::Accepted)
                return reject("template proof fails at word '" + print_word(lang, h) + "'" +
                              (sr.uses_hypotheses ? " (uses hypotheses)" : ""));
            FormulaId want = ft.implies(empty_formula(lang).formula,
                                        fold_word(lang, h, pl.formula, Fold::Box));
            if (norm(sr.conclusion) != norm(want))
                return reject("template conclusion at word '" + print_word(lang, h) +
                              "' is not empty -> [word](this line)");
        }
        lr.verdict = LineVerdict::AcceptedBounded;
        lr.message = "checked " + std::to_string(hs.size()) + " words up to length " +
                     std::to_string(pl.rstar_bound) + "; bounded evidence, not a proof of the "
                     "unbounded rule";
        break;
    }
    case ProofLine::Kind::Hypothesis:
        lr.message = "hypothesis '" + pl.label + "'";
        break;
    }
    return lr;
}

} // namespace detail

// Checks every line; the report never throws for content failures. A proof
// whose lines all check, with no bounded rule uses, is Accepted; any use of
// the bounded word-generalization rule caps the verdict at AcceptedBounded.
inline ProofReport check_proof(Lang& lang, const Proof& proof, const TemplateLoader& loader,
                               bool allow_rstar) {
    ProofReport rep;
    rep.conclusion = proof.conclusion;
    rep.overall = ProofReport::Overall::Accepted;
    for (const ProofLine& pl : proof.lines) {
        LineReport lr = detail::check_line(lang, proof, pl, loader, allow_rstar);
        if (pl.kind == ProofLine::Kind::Hypothesis)
            rep.uses_hypotheses = true;
        if (lr.verdict == LineVerdict::Rejected)
            rep.overall = ProofReport::Overall::Rejected;
        else if (lr.verdict == LineVerdict::AcceptedBounded &&
                 rep.overall == ProofReport::Overall::Accepted)
            rep.overall = ProofReport::Overall::AcceptedBounded;
        rep.lines.push_back(std::move(lr));
    }
    return rep;
}

} // namespace aal

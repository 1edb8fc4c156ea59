// aal — a language instance: vocabulary plus formula and word tables.
// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <string_view>

#include "aal/error.hpp"
#include "aal/formula.hpp"
#include "aal/vocab.hpp"
#include "aal/word.hpp"

namespace aal {

// Bundles one vocabulary with the interning tables built over it. All
// FormulaId / WordId values are meaningful only relative to one Lang.
// Non-copyable and non-movable: the tables hold references to each other.
class Lang {
  public:
    Lang(std::vector<std::string> agents, std::vector<std::string> atoms)
        : vocab_(std::move(agents), std::move(atoms)),
          words_(formulas_, vocab_.n_agents()) {}
    Lang(const Lang&) = delete;
    Lang& operator=(const Lang&) = delete;

    const Vocabulary& vocab() const { return vocab_; }
    FormulaTable& formulas() { return formulas_; }
    const FormulaTable& formulas() const { return formulas_; }
    WordTable& words() { return words_; }
    const WordTable& words() const { return words_; }

    // Name-based conveniences.
    FormulaId atom(std::string_view name) {
        auto i = vocab_.atom_index(name);
        if (!i)
            throw UnknownAtom("unknown atom: '" + std::string(name) + "'");
        return formulas_.atom(*i);
    }
    std::uint32_t agent(std::string_view name) const {
        auto i = vocab_.agent_index(name);
        if (!i)
            throw UnknownAgent("unknown agent: '" + std::string(name) + "'");
        return *i;
    }

  private:
    Vocabulary vocab_;
    FormulaTable formulas_;
    WordTable words_;
};

} // namespace aal

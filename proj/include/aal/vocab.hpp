// aal — declared agent and atom vocabularies.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aal/error.hpp"

namespace aal {

// A vocabulary fixes the finite, disjoint sets of agent names and atom
// names. Identifiers are lowercase ASCII: [a-z][a-z0-9_]*. The words
// "T", "F", "K", "Khat" and "eps" are reserved by the concrete syntax.
class Vocabulary {
  public:
    Vocabulary(std::vector<std::string> agents, std::vector<std::string> atoms)
        : agents_(std::move(agents)), atoms_(std::move(atoms)) {
        for (std::size_t i = 0; i < agents_.size(); ++i) {
            require_identifier(agents_[i]);
            if (!agent_index_.emplace(agents_[i], static_cast<std::uint32_t>(i)).second)
                throw VocabError("duplicate agent name: " + agents_[i]);
        }
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            require_identifier(atoms_[i]);
            if (agent_index_.count(atoms_[i]))
                throw VocabError("name declared as both agent and atom: " + atoms_[i]);
            if (!atom_index_.emplace(atoms_[i], static_cast<std::uint32_t>(i)).second)
                throw VocabError("duplicate atom name: " + atoms_[i]);
        }
    }

    static bool is_identifier(std::string_view s) {
        if (s.empty())
            return false;
        if (s[0] < 'a' || s[0] > 'z')
            return false;
        for (char c : s)
            if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'))
                return false;
        return !is_reserved(s);
    }

    static bool is_reserved(std::string_view s) {
        return s == "T" || s == "F" || s == "K" || s == "Khat" || s == "eps";
    }

    const std::vector<std::string>& agents() const { return agents_; }
    const std::vector<std::string>& atoms() const { return atoms_; }
    std::uint32_t n_agents() const { return static_cast<std::uint32_t>(agents_.size()); }
    std::uint32_t n_atoms() const { return static_cast<std::uint32_t>(atoms_.size()); }

    const std::string& agent_name(std::uint32_t i) const { return agents_.at(i); }
    const std::string& atom_name(std::uint32_t i) const { return atoms_.at(i); }

    std::optional<std::uint32_t> agent_index(std::string_view name) const {
        auto it = agent_index_.find(std::string(name));
        return it == agent_index_.end() ? std::nullopt : std::optional(it->second);
    }

    std::optional<std::uint32_t> atom_index(std::string_view name) const {
        auto it = atom_index_.find(std::string(name));
        return it == atom_index_.end() ? std::nullopt : std::optional(it->second);
    }

  private:
    static void require_identifier(const std::string& s) {
        if (!is_identifier(s))
            throw VocabError("invalid identifier: '" + s + "'");
    }

    std::vector<std::string> agents_;
    std::vector<std::string> atoms_;
    std::unordered_map<std::string, std::uint32_t> agent_index_;
    std::unordered_map<std::string, std::uint32_t> atom_index_;
};

} // namespace aal

// aal — hash-consed formula representation with cached measures.
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "aal/error.hpp"
#include "aal/vocab.hpp"

namespace aal {

using FormulaId = std::uint32_t;

// Primitive connectives. Everything else (F, &, ->, <->, K, box modalities)
// is rewritten into these seven at construction time.
enum class FKind : std::uint8_t {
    Atom, // p
    Top,  // T
    Not,  // ~f            (child: lhs)
    Or,   // (f | g)       (children: lhs, rhs)
    HatK, // Khat a f      (agent: idx, child: lhs)
    Send, // <mu>f         (announced: lhs, continuation: rhs)
    Recv, // <a>f          (agent: idx, child: lhs)
};

struct FormulaNode {
    FKind kind;
    std::uint32_t idx;  // atom index (Atom) or agent index (HatK, Recv)
    FormulaId lhs;      // first child, if any
    FormulaId rhs;      // second child (Or, Send)
    std::uint32_t size; // structural weight used by the recursion measure
    std::uint32_t deg;  // alternation-style degree used by the recursion measure
};

// Interning table: structurally equal formulas share one id, so equality is
// id equality and the measures are O(1) lookups. A table is tied to one
// vocabulary's index spaces but stores indices only.
class FormulaTable {
  public:
    FormulaTable() = default;
    FormulaTable(const FormulaTable&) = delete;
    FormulaTable& operator=(const FormulaTable&) = delete;

    std::uint32_t count() const { return static_cast<std::uint32_t>(nodes_.size()); }

    const FormulaNode& operator[](FormulaId f) const { return nodes_[f]; }
    FKind kind(FormulaId f) const { return nodes_[f].kind; }
    std::uint32_t size(FormulaId f) const { return nodes_[f].size; }
    std::uint32_t deg(FormulaId f) const { return nodes_[f].deg; }

    // --- primitive constructors -----------------------------------------
    FormulaId atom(std::uint32_t p) { return intern({FKind::Atom, p, 0, 0, 2, 0}); }
    FormulaId top() { return intern({FKind::Top, 0, 0, 0, 1, 0}); }
    FormulaId lnot(FormulaId f) {
        return intern({FKind::Not, 0, f, 0, nodes_[f].size + 1, nodes_[f].deg});
    }
    FormulaId lor(FormulaId f, FormulaId g) {
        return intern({FKind::Or, 0, f, g, nodes_[f].size + nodes_[g].size,
                       std::max(nodes_[f].deg, nodes_[g].deg)});
    }
    FormulaId hatk(std::uint32_t a, FormulaId f) {
        return intern({FKind::HatK, a, f, 0, nodes_[f].size + 1, nodes_[f].deg + 1});
    }
    FormulaId send(FormulaId mu, FormulaId f) {
        return intern({FKind::Send, 0, mu, f, 2 * nodes_[mu].size + nodes_[f].size,
                       nodes_[mu].deg + nodes_[f].deg});
    }
    FormulaId recv(std::uint32_t a, FormulaId f) {
        return intern({FKind::Recv, a, f, 0, nodes_[f].size + 2, nodes_[f].deg});
    }

    // --- defined connectives (rewritten eagerly) --------------------------
    FormulaId bot() { return lnot(top()); }
    FormulaId land(FormulaId f, FormulaId g) { return lnot(lor(lnot(f), lnot(g))); }
    FormulaId implies(FormulaId f, FormulaId g) { return lor(lnot(f), g); }
    FormulaId iff(FormulaId f, FormulaId g) { return land(implies(f, g), implies(g, f)); }
    FormulaId knows(std::uint32_t a, FormulaId f) { return lnot(hatk(a, lnot(f))); }
    FormulaId box_send(FormulaId mu, FormulaId f) { return lnot(send(mu, lnot(f))); }
    FormulaId box_recv(std::uint32_t a, FormulaId f) { return lnot(recv(a, lnot(f))); }

    // Canonical total order: by size, then degree, then kind, then head
    // index, then children. Used wherever a deterministic formula order is
    // needed (vocabularies, enumeration, printing of generated conjunctions).
    int compare(FormulaId a, FormulaId b) const {
        if (a == b)
            return 0;
        const FormulaNode& x = nodes_[a];
        const FormulaNode& y = nodes_[b];
        if (x.size != y.size)
            return x.size < y.size ? -1 : 1;
        if (x.deg != y.deg)
            return x.deg < y.deg ? -1 : 1;
        if (x.kind != y.kind)
            return static_cast<int>(x.kind) < static_cast<int>(y.kind) ? -1 : 1;
        if (x.idx != y.idx)
            return x.idx < y.idx ? -1 : 1;
        switch (x.kind) {
        case FKind::Atom:
        case FKind::Top:
            return 0;
        case FKind::Not:
        case FKind::HatK:
        case FKind::Recv:
            return compare(x.lhs, y.lhs);
        case FKind::Or:
        case FKind::Send: {
            int c = compare(x.lhs, y.lhs);
            return c != 0 ? c : compare(x.rhs, y.rhs);
        }
        }
        return 0;
    }
    bool less(FormulaId a, FormulaId b) const { return compare(a, b) < 0; }

    // Distinct structural subformulas of f, including f, in canonical order.
    std::vector<FormulaId> subformulas(FormulaId f) const {
        std::vector<FormulaId> out;
        std::vector<bool> seen(nodes_.size(), false);
        collect(f, seen, out);
        std::sort(out.begin(), out.end(), [this](FormulaId a, FormulaId b) { return less(a, b); });
        return out;
    }

    // Atom indices occurring in f, ascending.
    std::vector<std::uint32_t> atoms_of(FormulaId f) const {
        std::vector<std::uint32_t> out;
        for (FormulaId g : subformulas(f))
            if (nodes_[g].kind == FKind::Atom)
                out.push_back(nodes_[g].idx);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Removes every ~~ pair, recursively, including inside announced
    // formulas. Fixpoint of the rewrite ~~f => f; used as the formula
    // identity for proof checking and schema matching.
    FormulaId strip_double_negation(FormulaId f) {
        auto it = nn_cache_.find(f);
        if (it != nn_cache_.end())
            return it->second;
        const FormulaNode n = nodes_[f]; // copy: constructors below may reallocate
        FormulaId r;
        switch (n.kind) {
        case FKind::Atom:
        case FKind::Top:
            r = f;
            break;
        case FKind::Not:
            if (nodes_[n.lhs].kind == FKind::Not)
                r = strip_double_negation(nodes_[n.lhs].lhs);
            else
                r = lnot(strip_double_negation(n.lhs));
            break;
        case FKind::Or:
            r = lor(strip_double_negation(n.lhs), strip_double_negation(n.rhs));
            break;
        case FKind::HatK:
            r = hatk(n.idx, strip_double_negation(n.lhs));
            break;
        case FKind::Send:
            r = send(strip_double_negation(n.lhs), strip_double_negation(n.rhs));
            break;
        case FKind::Recv:
            r = recv(n.idx, strip_double_negation(n.lhs));
            break;
        }
        nn_cache_.emplace(f, r);
        return r;
    }

  private:
    struct Key {
        FKind kind;
        std::uint32_t idx;
        FormulaId lhs, rhs;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = static_cast<std::uint64_t>(k.kind);
            h = h * 0x9e3779b97f4a7c15ull + k.idx;
            h = h * 0x9e3779b97f4a7c15ull + k.lhs;
            h = h * 0x9e3779b97f4a7c15ull + k.rhs;
            return static_cast<std::size_t>(h ^ (h >> 32));
        }
    };

    FormulaId intern(FormulaNode n) {
        Key k{n.kind, n.idx, n.lhs, n.rhs};
        auto it = intern_.find(k);
        if (it != intern_.end())
            return it->second;
        FormulaId id = static_cast<FormulaId>(nodes_.size());
        nodes_.push_back(n);
        intern_.emplace(k, id);
        return id;
    }

    void collect(FormulaId f, std::vector<bool>& seen, std::vector<FormulaId>& out) const {
        if (seen[f])
            return;
        seen[f] = true;
        out.push_back(f);
        const FormulaNode& n = nodes_[f];
        switch (n.kind) {
        case FKind::Atom:
        case FKind::Top:
            break;
        case FKind::Not:
        case FKind::HatK:
        case FKind::Recv:
            collect(n.lhs, seen, out);
            break;
        case FKind::Or:
        case FKind::Send:
            collect(n.lhs, seen, out);
            collect(n.rhs, seen, out);
            break;
        }
    }

    std::vector<FormulaNode> nodes_;
    std::unordered_map<Key, FormulaId, KeyHash> intern_;
    std::unordered_map<FormulaId, FormulaId> nn_cache_;
};

} // namespace aal

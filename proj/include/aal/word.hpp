// aal — interned words over agents and formulas, histories, views.
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "aal/formula.hpp"

namespace aal {

using WordId = std::uint32_t; // id 0 is the empty word

// One letter of a word: an agent (a reception) or a formula (an announcement).
struct Letter {
    enum class Kind : std::uint8_t { Agent, Formula };
    Kind kind;
    std::uint32_t agent;
    FormulaId formula;

    static Letter recv(std::uint32_t a) { return {Kind::Agent, a, 0}; }
    static Letter ann(FormulaId f) { return {Kind::Formula, 0, f}; }
    bool is_agent() const { return kind == Kind::Agent; }
};

// Words are interned as reversed chains (each node = parent word + one final
// letter), so extending, equality and every counting measure are O(1).
class WordTable {
  public:
    explicit WordTable(const FormulaTable& ft, std::uint32_t n_agents)
        : ft_(&ft), n_agents_(n_agents) {
        nodes_.push_back({0, Letter::recv(0), 0, 0, 0, 0, true});
        counts_.resize(n_agents_, 0);
    }
    WordTable(const WordTable&) = delete;
    WordTable& operator=(const WordTable&) = delete;

    WordId epsilon() const { return 0; }
    std::uint32_t count() const { return static_cast<std::uint32_t>(nodes_.size()); }
    std::uint32_t n_agents() const { return n_agents_; }

    std::uint32_t len(WordId w) const { return nodes_[w].len; }
    std::uint32_t n_ann(WordId w) const { return nodes_[w].n_ann; }
    std::uint32_t agent_count(WordId w, std::uint32_t a) const {
        return counts_[static_cast<std::size_t>(w) * n_agents_ + a];
    }
    // Number of announcements agent a has received so far: min(|w|_a, |w|_!).
    std::uint32_t read_count(WordId w, std::uint32_t a) const {
        return std::min(agent_count(w, a), n_ann(w));
    }
    bool is_history(WordId w) const { return nodes_[w].history; }
    std::uint32_t word_size(WordId w) const { return nodes_[w].wsize; }
    std::uint32_t deg_sum(WordId w) const { return nodes_[w].degsum; }

    WordId extend(WordId w, Letter l) {
        Key k{w, l.is_agent() ? std::uint32_t(0) : std::uint32_t(1),
              l.is_agent() ? l.agent : l.formula};
        auto it = intern_.find(k);
        if (it != intern_.end())
            return it->second;
        const Node& p = nodes_[w];
        Node n;
        n.parent = w;
        n.letter = l;
        n.len = p.len + 1;
        if (l.is_agent()) {
            n.n_ann = p.n_ann;
            n.wsize = p.wsize + 1;
            n.degsum = p.degsum;
            n.history = p.history && agent_count(w, l.agent) < p.n_ann;
        } else {
            n.n_ann = p.n_ann + 1;
            n.wsize = p.wsize + ft_->size(l.formula);
            n.degsum = p.degsum + ft_->deg(l.formula);
            n.history = p.history;
        }
        WordId id = static_cast<WordId>(nodes_.size());
        nodes_.push_back(n);
        std::size_t base = counts_.size();
        counts_.resize(base + n_agents_);
        for (std::uint32_t a = 0; a < n_agents_; ++a)
            counts_[base + a] = counts_[static_cast<std::size_t>(w) * n_agents_ + a];
        if (l.is_agent())
            ++counts_[base + l.agent];
        intern_.emplace(k, id);
        return id;
    }
    WordId extend_recv(WordId w, std::uint32_t a) { return extend(w, Letter::recv(a)); }
    WordId extend_ann(WordId w, FormulaId f) { return extend(w, Letter::ann(f)); }

    WordId concat(WordId w, WordId v) {
        for (const Letter& l : letters(v))
            w = extend(w, l);
        return w;
    }

    const Letter& last(WordId w) const { return nodes_[w].letter; }
    WordId parent(WordId w) const { return nodes_[w].parent; }

    std::vector<Letter> letters(WordId w) const {
        std::vector<Letter> out(nodes_[w].len);
        for (std::uint32_t i = nodes_[w].len; i-- > 0; w = nodes_[w].parent)
            out[i] = nodes_[w].letter;
        return out;
    }

    // All prefixes from the empty word up to w itself, shortest first.
    std::vector<WordId> prefixes(WordId w) const {
        std::vector<WordId> out(nodes_[w].len + 1);
        for (std::uint32_t i = nodes_[w].len + 1; i-- > 0; w = nodes_[w].parent)
            out[i] = w;
        return out;
    }

    // The announcements of w, in order.
    std::vector<FormulaId> proj_ann(WordId w) const {
        std::vector<FormulaId> out;
        out.reserve(nodes_[w].n_ann);
        for (const Letter& l : letters(w))
            if (!l.is_agent())
                out.push_back(l.formula);
        return out;
    }

    // The announcements agent a has received: the first read_count(w, a)
    // announcements of w.
    std::vector<FormulaId> proj_read(WordId w, std::uint32_t a) const {
        std::vector<FormulaId> out = proj_ann(w);
        out.resize(read_count(w, a));
        return out;
    }

    // beta is one of agent a's possible pasts at alpha: beta is a history in
    // which a has received every announcement, and those announcements are
    // exactly what a has received in alpha.
    bool view_rel(WordId alpha, WordId beta, std::uint32_t a) {
        if (!is_history(beta))
            return false;
        if (agent_count(beta, a) != n_ann(beta))
            return false;
        return proj_ann(beta) == proj_read(alpha, a);
    }

    // All words beta with view_rel(alpha, beta, a), in canonical order
    // (length, then letter-by-letter). Cached per (alpha, a).
    const std::vector<WordId>& views(WordId alpha, std::uint32_t a) {
        std::uint64_t key = (static_cast<std::uint64_t>(alpha) << 8) | a;
        auto it = views_cache_.find(key);
        if (it != views_cache_.end())
            return it->second;
        std::vector<FormulaId> f = proj_read(alpha, a);
        std::vector<WordId> out;
        std::vector<std::uint32_t> rec(n_agents_, 0);
        views_rec(epsilon(), 0, f, a, rec, out);
        std::sort(out.begin(), out.end(), [this](WordId x, WordId y) { return less(x, y); });
        return views_cache_.emplace(key, std::move(out)).first->second;
    }

    // Canonical order on words: shorter first; at equal length compare
    // letters from the front (agents before formulas, agents by declaration
    // order, formulas by the formula table's canonical order).
    int compare(WordId v, WordId w) const {
        if (v == w)
            return 0;
        if (nodes_[v].len != nodes_[w].len)
            return nodes_[v].len < nodes_[w].len ? -1 : 1;
        std::vector<Letter> lv = letters(v), lw = letters(w);
        for (std::size_t i = 0; i < lv.size(); ++i) {
            const Letter &x = lv[i], &y = lw[i];
            if (x.is_agent() != y.is_agent())
                return x.is_agent() ? -1 : 1;
            if (x.is_agent()) {
                if (x.agent != y.agent)
                    return x.agent < y.agent ? -1 : 1;
            } else {
                int c = ft_->compare(x.formula, y.formula);
                if (c != 0)
                    return c;
            }
        }
        return 0;
    }
    bool less(WordId v, WordId w) const { return compare(v, w) < 0; }

    // The well-founded order that drives the mutual recursion of
    // executability and satisfaction: degree first, then combined size.
    std::uint64_t pair_deg(WordId w, FormulaId f) const { return nodes_[w].degsum + ft_->deg(f); }
    std::uint64_t pair_size(WordId w, FormulaId f) const {
        return nodes_[w].wsize + ft_->size(f);
    }
    bool ll_less(WordId w1, FormulaId f1, WordId w2, FormulaId f2) const {
        std::uint64_t d1 = pair_deg(w1, f1), d2 = pair_deg(w2, f2);
        if (d1 != d2)
            return d1 < d2;
        return pair_size(w1, f1) < pair_size(w2, f2);
    }

  private:
    struct Node {
        WordId parent;
        Letter letter;
        std::uint32_t len;
        std::uint32_t n_ann;
        std::uint32_t wsize;
        std::uint32_t degsum;
        bool history;
    };
    struct Key {
        WordId parent;
        std::uint32_t tag; // 0 = agent letter, 1 = formula letter
        std::uint32_t payload;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = k.parent;
            h = h * 0x9e3779b97f4a7c15ull + k.tag;
            h = h * 0x9e3779b97f4a7c15ull + k.payload;
            return static_cast<std::size_t>(h ^ (h >> 32));
        }
    };

    void views_rec(WordId w, std::uint32_t i, const std::vector<FormulaId>& f, std::uint32_t a,
                   std::vector<std::uint32_t>& rec, std::vector<WordId>& out) {
        if (i == f.size() && rec[a] == f.size())
            out.push_back(w);
        if (i < f.size())
            views_rec(extend_ann(w, f[i]), i + 1, f, a, rec, out);
        for (std::uint32_t c = 0; c < n_agents_; ++c) {
            if (rec[c] < i) {
                ++rec[c];
                views_rec(extend_recv(w, c), i, f, a, rec, out);
                --rec[c];
            }
        }
    }

    const FormulaTable* ft_;
    std::uint32_t n_agents_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> counts_; // flat [word][agent] occurrence counts
    std::unordered_map<Key, WordId, KeyHash> intern_;
    std::unordered_map<std::uint64_t, std::vector<WordId>> views_cache_;
};

} // namespace aal

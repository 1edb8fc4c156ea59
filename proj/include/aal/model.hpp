// aal — finite epistemic models: states, per-agent partitions, valuation.
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "aal/lang.hpp"

namespace aal {

// States are indexed densely; each agent's indistinguishability relation is
// stored as a partition of the state set (class ids + member lists), which
// keeps the relation an equivalence by construction.
struct EpistemicModel {
    std::vector<std::string> states;
    std::unordered_map<std::string, std::uint32_t> state_index;
    std::vector<std::vector<std::uint32_t>> class_of; // [agent][state] -> class id
    std::vector<std::vector<std::vector<std::uint32_t>>> classes; // [agent][class] -> members
    std::vector<std::vector<bool>> val; // [atom][state]

    std::uint32_t n_states() const { return static_cast<std::uint32_t>(states.size()); }

    bool related(std::uint32_t agent, std::uint32_t s, std::uint32_t t) const {
        return class_of[agent][s] == class_of[agent][t];
    }

    // The members of s's indistinguishability class for the given agent.
    const std::vector<std::uint32_t>& block(std::uint32_t agent, std::uint32_t s) const {
        return classes[agent][class_of[agent][s]];
    }

    bool value(std::uint32_t atom, std::uint32_t s) const { return val[atom][s]; }

    std::uint32_t state_id(const std::string& name) const {
        auto it = state_index.find(name);
        if (it == state_index.end())
            throw UnknownState("unknown state: '" + name + "'");
        return it->second;
    }
};

namespace detail {

inline void rebuild_index(EpistemicModel& m) {
    m.state_index.clear();
    for (std::size_t i = 0; i < m.states.size(); ++i)
        m.state_index.emplace(m.states[i], static_cast<std::uint32_t>(i));
}

} // namespace detail

// Internal consistency check; appends human-readable findings to `diags`
// when provided. load_model() output and update_model() output always pass.
inline bool validate_model(const Lang& lang, const EpistemicModel& m,
                           std::vector<std::string>* diags = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (diags)
            diags->push_back(msg);
        return false;
    };
    bool ok = true;
    const std::uint32_t ns = m.n_states();
    if (ns == 0)
        ok = fail("model has no states");
    if (m.state_index.size() != m.states.size())
        ok = fail("state index out of sync with state list");
    for (const auto& [name, idx] : m.state_index)
        if (idx >= ns || m.states[idx] != name)
            ok = fail("state index entry mismatched: " + name);
    if (m.class_of.size() != lang.vocab().n_agents() || m.classes.size() != lang.vocab().n_agents())
        ok = fail("per-agent tables do not match the declared agent count");
    for (std::uint32_t a = 0; a < m.class_of.size() && a < m.classes.size(); ++a) {
        if (m.class_of[a].size() != ns) {
            ok = fail("agent " + lang.vocab().agent_name(a) + ": class map has wrong size");
            continue;
        }
        std::vector<std::uint32_t> seen(ns, 0);
        for (std::uint32_t c = 0; c < m.classes[a].size(); ++c) {
            if (m.classes[a][c].empty())
                ok = fail("agent " + lang.vocab().agent_name(a) + ": empty class");
            for (std::uint32_t s : m.classes[a][c]) {
                if (s >= ns) {
                    ok = fail("agent " + lang.vocab().agent_name(a) + ": state out of range");
                    continue;
                }
                ++seen[s];
                if (m.class_of[a][s] != c)
                    ok = fail("agent " + lang.vocab().agent_name(a) + ": class map disagrees at " +
                              m.states[s]);
            }
        }
        for (std::uint32_t s = 0; s < ns; ++s)
            if (seen[s] != 1)
                ok = fail("agent " + lang.vocab().agent_name(a) + ": state " + m.states[s] +
                          (seen[s] == 0 ? " not covered" : " covered twice"));
    }
    if (m.val.size() != lang.vocab().n_atoms())
        ok = fail("valuation does not match the declared atom count");
    for (const auto& row : m.val)
        if (row.size() != ns)
            ok = fail("valuation row has wrong size");
    return ok;
}

// Loads a model document (schema version 1) against a language. Document
// agents and atoms must be exactly the declared sets (any order).
//
// {
//   "version": 1,
//   "states": ["s0", ...],
//   "agents": ["a", ...],
//   "atoms": ["p", ...],
//   "partitions": {"a": [["s0"], ["s1", "s2"]], ...},
//   "valuation": {"p": ["s0", ...], ...}        // omitted atom = false everywhere
// }
inline EpistemicModel load_model(const Lang& lang, const nlohmann::json& doc) {
    if (!doc.is_object())
        throw SchemaError("model document must be a JSON object");
    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != 1)
        throw SchemaError("model document must declare \"version\": 1");
    for (const char* field : {"states", "agents", "atoms", "partitions", "valuation"})
        if (!doc.contains(field))
            throw SchemaError(std::string("missing field \"") + field + "\"");

    EpistemicModel m;
    if (!doc["states"].is_array() || doc["states"].empty())
        throw SchemaError("\"states\" must be a non-empty array");
    for (const auto& s : doc["states"]) {
        if (!s.is_string() || s.get<std::string>().empty())
            throw SchemaError("state names must be non-empty strings");
        if (!m.state_index.emplace(s.get<std::string>(), m.n_states()).second)
            throw SchemaError("duplicate state name: " + s.get<std::string>());
        m.states.push_back(s.get<std::string>());
    }

    auto check_name_set = [&](const char* field, const std::vector<std::string>& declared) {
        const auto& arr = doc[field];
        if (!arr.is_array())
            throw SchemaError(std::string("\"") + field + "\" must be an array");
        std::vector<std::string> got;
        for (const auto& x : arr) {
            if (!x.is_string())
                throw SchemaError(std::string("\"") + field + "\" must contain strings");
            got.push_back(x.get<std::string>());
        }
        std::vector<std::string> want = declared;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want)
            throw SchemaError(std::string("model \"") + field +
                              "\" must match the declared vocabulary exactly");
    };
    check_name_set("agents", lang.vocab().agents());
    check_name_set("atoms", lang.vocab().atoms());

    const std::uint32_t na = lang.vocab().n_agents();
    const std::uint32_t ns = m.n_states();
    if (!doc["partitions"].is_object())
        throw SchemaError("\"partitions\" must be an object");
    m.class_of.assign(na, std::vector<std::uint32_t>(ns, UINT32_MAX));
    m.classes.assign(na, {});
    for (const auto& [key, blocks] : doc["partitions"].items()) {
        auto a = lang.vocab().agent_index(key);
        if (!a)
            throw UnknownAgent("partition for undeclared agent: '" + key + "'");
        if (!blocks.is_array())
            throw SchemaError("partition for agent '" + key + "' must be an array of arrays");
        for (const auto& blk : blocks) {
            if (!blk.is_array() || blk.empty())
                throw PartitionError("agent '" + key + "': classes must be non-empty arrays");
            std::vector<std::uint32_t> members;
            for (const auto& sn : blk) {
                if (!sn.is_string())
                    throw SchemaError("partition entries must be state names");
                auto it = m.state_index.find(sn.get<std::string>());
                if (it == m.state_index.end())
                    throw UnknownState("partition for agent '" + key + "' mentions unknown state '" +
                                       sn.get<std::string>() + "'");
                if (m.class_of[*a][it->second] != UINT32_MAX)
                    throw PartitionError("agent '" + key + "': state '" + sn.get<std::string>() +
                                         "' appears in two classes");
                m.class_of[*a][it->second] = static_cast<std::uint32_t>(m.classes[*a].size());
                members.push_back(it->second);
            }
            std::sort(members.begin(), members.end());
            m.classes[*a].push_back(std::move(members));
        }
    }
    for (std::uint32_t a = 0; a < na; ++a)
        for (std::uint32_t s = 0; s < ns; ++s)
            if (m.class_of[a][s] == UINT32_MAX)
                throw PartitionError("agent '" + lang.vocab().agent_name(a) +
                                     "': state '" + m.states[s] + "' is not covered");

    if (!doc["valuation"].is_object())
        throw SchemaError("\"valuation\" must be an object");
    m.val.assign(lang.vocab().n_atoms(), std::vector<bool>(ns, false));
    for (const auto& [key, arr] : doc["valuation"].items()) {
        auto p = lang.vocab().atom_index(key);
        if (!p)
            throw UnknownAtom("valuation for undeclared atom: '" + key + "'");
        if (!arr.is_array())
            throw SchemaError("valuation for atom '" + key + "' must be an array of state names");
        for (const auto& sn : arr) {
            if (!sn.is_string())
                throw SchemaError("valuation entries must be state names");
            auto it = m.state_index.find(sn.get<std::string>());
            if (it == m.state_index.end())
                throw UnknownState("valuation for atom '" + key + "' mentions unknown state '" +
                                   sn.get<std::string>() + "'");
            m.val[*p][it->second] = true;
        }
    }
    return m;
}

// Serializes in the load_model schema; key order and class/member order are
// canonical, so equal models produce identical bytes.
inline nlohmann::json model_to_json(const Lang& lang, const EpistemicModel& m) {
    nlohmann::json doc;
    doc["version"] = 1;
    doc["states"] = m.states;
    doc["agents"] = lang.vocab().agents();
    doc["atoms"] = lang.vocab().atoms();
    nlohmann::json parts = nlohmann::json::object();
    for (std::uint32_t a = 0; a < lang.vocab().n_agents(); ++a) {
        std::vector<std::vector<std::uint32_t>> blocks = m.classes[a];
        std::sort(blocks.begin(), blocks.end());
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& blk : blocks) {
            nlohmann::json b = nlohmann::json::array();
            for (std::uint32_t s : blk)
                b.push_back(m.states[s]);
            arr.push_back(std::move(b));
        }
        parts[lang.vocab().agent_name(a)] = std::move(arr);
    }
    doc["partitions"] = std::move(parts);
    nlohmann::json valn = nlohmann::json::object();
    for (std::uint32_t p = 0; p < lang.vocab().n_atoms(); ++p) {
        nlohmann::json arr = nlohmann::json::array();
        for (std::uint32_t s = 0; s < m.n_states(); ++s)
            if (m.val[p][s])
                arr.push_back(m.states[s]);
        valn[lang.vocab().atom_name(p)] = std::move(arr);
    }
    doc["valuation"] = std::move(valn);
    return doc;
}

// Deterministic pseudorandom model with states s0..s{n-1}: per agent, a
// sequential random partition (each state joins an existing class or opens
// a new one); per atom, a fair coin per state. Only raw engine draws are
// used, so results are reproducible across platforms.
inline EpistemicModel random_model(std::uint32_t n_states, const Lang& lang, std::uint64_t seed) {
    if (n_states == 0)
        throw SchemaError("random_model requires at least one state");
    std::mt19937_64 g(seed);
    EpistemicModel m;
    for (std::uint32_t i = 0; i < n_states; ++i) {
        m.states.push_back("s" + std::to_string(i));
        m.state_index.emplace(m.states.back(), i);
    }
    const std::uint32_t na = lang.vocab().n_agents();
    m.class_of.assign(na, std::vector<std::uint32_t>(n_states, 0));
    m.classes.assign(na, {});
    for (std::uint32_t a = 0; a < na; ++a) {
        for (std::uint32_t s = 0; s < n_states; ++s) {
            std::uint32_t k = static_cast<std::uint32_t>(m.classes[a].size());
            std::uint32_t c = static_cast<std::uint32_t>(g() % (k + 1));
            if (c == k)
                m.classes[a].push_back({});
            m.class_of[a][s] = c;
            m.classes[a][c].push_back(s);
        }
    }
    m.val.assign(lang.vocab().n_atoms(), std::vector<bool>(n_states, false));
    for (auto& row : m.val)
        for (std::uint32_t s = 0; s < n_states; ++s)
            row[s] = (g() & 1) != 0;
    return m;
}

// The (state count, seed) pairs a family draws from its master engine.
// Exposed so that any family member can be regenerated in isolation.
inline std::vector<std::pair<std::uint32_t, std::uint64_t>>
random_family_params(std::size_t count, std::uint32_t max_states, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t n = 1 + static_cast<std::uint32_t>(g() % max_states);
        out.emplace_back(n, g());
    }
    return out;
}

// A reproducible family of models: sizes 1..max_states, seeds drawn from a
// family-level engine.
inline std::vector<EpistemicModel> random_family(const Lang& lang, std::size_t count,
                                                 std::uint32_t max_states, std::uint64_t seed) {
    std::vector<EpistemicModel> out;
    out.reserve(count);
    for (auto [n, s] : random_family_params(count, max_states, seed))
        out.push_back(random_model(n, lang, s));
    return out;
}

} // namespace aal

// aal — command-line front end for the asynchronous-announcement toolkit.
//
// Exit codes, uniformly: 0 the queried property holds (formula satisfied,
// word executable, proof accepted, ...); 1 it does not; 2 usage or input
// error. All randomness flows from explicit --seed flags, and --format json
// produces byte-stable, versioned output for fixed inputs.
// SPDX-License-Identifier: MIT
#include "aal/aal.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw aal::Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty())
        out.push_back(cur);
    return out;
}

// Shell-quote an argument for the replay command lines we print.
std::string shq(const std::string& s) { return "'" + s + "'"; }

void emit_json(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Vocabulary plumbing: commands accept either --model FILE (vocabulary read
// from the file) or explicit --agents/--atoms lists.

struct VocabFlags {
    std::string agents;
    std::string atoms;
    std::string model_path;
};

void add_vocab_flags(CLI::App* cmd, VocabFlags& v, bool with_model) {
    cmd->add_option("--agents", v.agents, "comma-separated agent names");
    cmd->add_option("--atoms", v.atoms, "comma-separated atom names");
    if (with_model)
        cmd->add_option("--model", v.model_path,
                        "model file; its agents/atoms define the vocabulary");
}

std::unique_ptr<aal::Lang> lang_from_doc(const json& doc) {
    return std::make_unique<aal::Lang>(doc.at("agents").get<std::vector<std::string>>(),
                                       doc.at("atoms").get<std::vector<std::string>>());
}

std::unique_ptr<aal::Lang> make_lang(const VocabFlags& v) {
    if (!v.model_path.empty()) {
        if (!v.agents.empty() || !v.atoms.empty())
            throw aal::Error("give either --model or --agents/--atoms, not both");
        return lang_from_doc(json::parse(slurp(v.model_path)));
    }
    if (v.agents.empty())
        throw aal::Error("a vocabulary is required: --agents a,b [--atoms p,q] or --model FILE");
    return std::make_unique<aal::Lang>(split_csv(v.agents),
                                       v.atoms.empty() ? std::vector<std::string>{}
                                                       : split_csv(v.atoms));
}

struct LoadedModel {
    std::unique_ptr<aal::Lang> lang;
    aal::EpistemicModel model;
};

LoadedModel load_model_file(const std::string& path) {
    json doc = json::parse(slurp(path));
    LoadedModel lm;
    lm.lang = lang_from_doc(doc);
    lm.model = aal::load_model(*lm.lang, doc);
    return lm;
}

// ---------------------------------------------------------------------------
// eval / exec

struct EvalArgs {
    std::string model_path, state, word, formula, format = "text";
    bool minus = false;
};

int run_eval(const EvalArgs& a, bool with_formula) {
    LoadedModel lm = load_model_file(a.model_path);
    aal::Lang& lang = *lm.lang;
    std::uint32_t s = lm.model.state_id(a.state);
    aal::WordId w = aal::parse_word(lang, a.word);
    aal::FormulaId f = with_formula ? aal::parse_formula(lang, a.formula) : 0;
    aal::EvalContext ctx(lang, lm.model);

    bool ex = a.minus ? ctx.executable_minus(s, w) : ctx.executable(s, w);
    std::optional<bool> sat;
    if (with_formula)
        sat = a.minus ? ctx.eval_minus(s, w, f) : ctx.eval(s, w, f);

    json out;
    out["format_version"] = kFormatVersion;
    out["command"] = with_formula ? "eval" : "exec";
    out["model"] = a.model_path;
    out["state"] = a.state;
    out["word"] = aal::print_word(lang, w);
    out["semantics"] = a.minus ? "history-only" : "guarded";
    out["executable"] = ex;
    if (with_formula) {
        out["formula"] = aal::print_formula(lang, f);
        out["satisfied"] = *sat;
    }
    if (a.format == "json") {
        emit_json(out);
    } else {
        std::cout << "word: " << out["word"].get<std::string>() << "\n";
        if (with_formula)
            std::cout << "formula: " << out["formula"].get<std::string>() << "\n";
        std::cout << "executable: " << (ex ? "yes" : "no") << "\n";
        if (with_formula)
            std::cout << "satisfied: " << (*sat ? "yes" : "no") << "\n";
    }
    bool verdict = with_formula ? *sat : ex;
    return verdict ? 0 : 1;
}

// ---------------------------------------------------------------------------
// views / history

int run_views(const VocabFlags& v, const std::string& word, const std::string& agent,
              const std::string& format) {
    std::unique_ptr<aal::Lang> lang = make_lang(v);
    aal::WordId w = aal::parse_word(*lang, word);
    std::uint32_t a = lang->agent(agent);
    const std::vector<aal::WordId>& vs = lang->words().views(w, a);
    std::vector<std::string> printed;
    printed.reserve(vs.size());
    for (aal::WordId b : vs)
        printed.push_back(aal::print_word(*lang, b));
    if (format == "json") {
        json out;
        out["format_version"] = kFormatVersion;
        out["command"] = "views";
        out["word"] = aal::print_word(*lang, w);
        out["agent"] = agent;
        out["views"] = printed;
        emit_json(out);
    } else {
        for (const std::string& p : printed)
            std::cout << p << "\n";
    }
    return 0;
}

int run_history(const VocabFlags& v, const std::string& word, const std::string& format) {
    std::unique_ptr<aal::Lang> lang = make_lang(v);
    aal::WordId w = aal::parse_word(*lang, word);
    bool h = lang->words().is_history(w);
    if (format == "json") {
        json out;
        out["format_version"] = kFormatVersion;
        out["command"] = "history";
        out["word"] = aal::print_word(*lang, w);
        out["history"] = h;
        emit_json(out);
    } else {
        std::cout << "word: " << aal::print_word(*lang, w) << "\n"
                  << "history: " << (h ? "yes" : "no") << "\n";
    }
    return h ? 0 : 1;
}

// ---------------------------------------------------------------------------
// validity

struct ValidityArgs {
    VocabFlags vocab_flags;
    std::string formula, mode = "star", vocab_csv, format = "text";
    std::vector<std::string> model_paths;
    std::uint32_t models = 20, max_states = 4, bound = 3;
    std::uint64_t seed = 0;
};

int run_validity(const ValidityArgs& a) {
    std::unique_ptr<aal::Lang> lang;
    aal::ValidityQuery q;
    bool from_files = !a.model_paths.empty();
    if (from_files) {
        LoadedModel first = load_model_file(a.model_paths.front());
        lang = std::move(first.lang);
        q.models.push_back(std::move(first.model));
        for (std::size_t i = 1; i < a.model_paths.size(); ++i)
            q.models.push_back(
                aal::load_model(*lang, json::parse(slurp(a.model_paths[i]))));
    } else {
        lang = make_lang(a.vocab_flags);
        q.models = aal::random_family(*lang, a.models, a.max_states, a.seed);
    }
    q.formula = aal::parse_formula(*lang, a.formula);
    q.mode = a.mode == "eps" ? aal::ValidityMode::Epsilon : aal::ValidityMode::Star;
    q.max_len = a.bound;
    if (!a.vocab_csv.empty())
        for (const std::string& t : split_csv(a.vocab_csv))
            q.vocabulary.push_back(aal::parse_formula(*lang, t));

    aal::ValidityReport rep = q.mode == aal::ValidityMode::Epsilon
                                  ? aal::check_epsilon(*lang, q)
                                  : aal::check_star(*lang, q);

    std::vector<std::string> vocab_printed;
    if (q.mode == aal::ValidityMode::Star) {
        std::vector<aal::FormulaId> used =
            q.vocabulary.empty() ? aal::default_star_vocabulary(*lang, q.formula)
                                 : q.vocabulary;
        for (aal::FormulaId vf : used)
            vocab_printed.push_back(aal::print_formula(*lang, vf));
    }

    json out;
    out["format_version"] = kFormatVersion;
    out["command"] = "validity";
    out["formula"] = aal::print_formula(*lang, q.formula);
    out["mode"] = a.mode == "eps" ? "eps" : "star";
    out["bound"] = rep.bound_used;
    out["vocabulary"] = vocab_printed;
    out["checked_models"] = rep.checked_models;
    out["checked_histories"] = rep.checked_histories;
    out["verdict"] = rep.valid_up_to_bound ? "no-counterexample" : "refuted";
    out["counterexample"] = nullptr;

    std::string replay;
    if (rep.counterexample) {
        const aal::Counterexample& cx = *rep.counterexample;
        const aal::EpistemicModel& m = q.models[cx.model_index];
        std::string word_txt = aal::print_word(*lang, cx.word);
        std::string state_txt = m.states[cx.state];
        json jcx;
        jcx["model_index"] = cx.model_index;
        jcx["state"] = state_txt;
        jcx["word"] = word_txt;
        if (from_files) {
            jcx["model"] = a.model_paths[cx.model_index];
            replay = "aal eval --model " + shq(a.model_paths[cx.model_index]);
        } else {
            auto params = aal::random_family_params(a.models, a.max_states, a.seed);
            auto [n, s] = params[cx.model_index];
            jcx["model"] = json{{"states", n}, {"seed", s}};
            replay = "aal gen-model --agents " + shq(a.vocab_flags.agents) + " --atoms " +
                     shq(a.vocab_flags.atoms) + " --states " + std::to_string(n) +
                     " --seed " + std::to_string(s) + " > cx-model.json && aal eval --model cx-model.json";
        }
        replay += " --state " + shq(state_txt) + " --word " + shq(word_txt) +
                  " --formula " + shq(aal::print_formula(*lang, q.formula));
        jcx["replay"] = replay;
        out["counterexample"] = jcx;
    }

    if (a.format == "json") {
        emit_json(out);
    } else {
        std::cout << "formula: " << out["formula"].get<std::string>() << "\n"
                  << "mode: " << out["mode"].get<std::string>() << "\n";
        if (q.mode == aal::ValidityMode::Star) {
            std::cout << "bound: " << rep.bound_used << "\nvocabulary:";
            for (const std::string& vtxt : vocab_printed)
                std::cout << " " << vtxt << " ;";
            std::cout << "\n";
        }
        std::cout << "checked models: " << rep.checked_models << "\n"
                  << "checked histories: " << rep.checked_histories << "\n";
        if (rep.counterexample) {
            std::cout << "verdict: refuted\n"
                      << "counterexample: model " << rep.counterexample->model_index
                      << ", state " << out["counterexample"]["state"].get<std::string>()
                      << ", word " << out["counterexample"]["word"].get<std::string>()
                      << "\nreplay: " << replay << "\n";
        } else {
            std::cout << "verdict: no counterexample up to bound\n";
        }
    }
    return rep.valid_up_to_bound ? 0 : 1;
}

// ---------------------------------------------------------------------------
// axiom

struct AxiomArgs {
    VocabFlags vocab_flags;
    std::string schema, match, phi, psi, agent, atom, alpha, format = "text";
    bool list = false, instantiate = false;
};

int run_axiom(const AxiomArgs& a) {
    if (a.list) {
        json rows = json::array();
        for (aal::AxiomSchema s : aal::all_schemas()) {
            json row;
            row["schema"] = aal::schema_name(s);
            row["metavariables"] = aal::schema_metavars(s);
            rows.push_back(row);
        }
        if (a.format == "json") {
            json out;
            out["format_version"] = kFormatVersion;
            out["command"] = "axiom";
            out["schemas"] = rows;
            emit_json(out);
        } else {
            for (const json& row : rows) {
                std::cout << row["schema"].get<std::string>() << ":";
                for (const json& mv : row["metavariables"])
                    std::cout << " " << mv.get<std::string>();
                std::cout << "\n";
            }
        }
        return 0;
    }

    if (a.schema.empty())
        throw aal::Error("--schema is required unless --list is given");
    auto schema = aal::schema_from_name(a.schema);
    if (!schema)
        throw aal::Error("unknown schema: '" + a.schema + "' (see aal axiom --list)");
    if (a.instantiate == !a.match.empty())
        throw aal::Error("give exactly one of --match FORMULA or --instantiate");
    std::unique_ptr<aal::Lang> lang = make_lang(a.vocab_flags);

    if (a.instantiate) {
        // Instantiate from the binding flags.
        aal::Bindings b;
        if (!a.phi.empty())
            b.phi = aal::parse_formula(*lang, a.phi);
        if (!a.psi.empty())
            b.psi = aal::parse_formula(*lang, a.psi);
        if (!a.agent.empty())
            b.agent = lang->agent(a.agent);
        if (!a.atom.empty()) {
            auto i = lang->vocab().atom_index(a.atom);
            if (!i)
                throw aal::UnknownAtom("unknown atom: '" + a.atom + "'");
            b.atom = *i;
        }
        if (!a.alpha.empty())
            b.alpha = aal::parse_word(*lang, a.alpha);
        aal::FormulaId inst = aal::instantiate_axiom(*lang, *schema, b);
        std::string txt = aal::print_formula(*lang, inst);
        if (a.format == "json") {
            json out;
            out["format_version"] = kFormatVersion;
            out["command"] = "axiom";
            out["schema"] = a.schema;
            out["instance"] = txt;
            emit_json(out);
        } else {
            std::cout << txt << "\n";
        }
        return 0;
    }

    aal::FormulaId f = aal::parse_formula(*lang, a.match);
    std::optional<aal::Bindings> b = aal::match_axiom(*lang, f, *schema);
    json out;
    out["format_version"] = kFormatVersion;
    out["command"] = "axiom";
    out["schema"] = a.schema;
    out["formula"] = aal::print_formula(*lang, f);
    if (b) {
        json jb = json::object();
        if (b->phi)
            jb["phi"] = aal::print_formula(*lang, *b->phi);
        if (b->psi)
            jb["psi"] = aal::print_formula(*lang, *b->psi);
        if (b->agent)
            jb["agent"] = lang->vocab().agent_name(*b->agent);
        if (b->atom)
            jb["atom"] = lang->vocab().atom_name(*b->atom);
        if (b->alpha)
            jb["alpha"] = aal::print_word(*lang, *b->alpha);
        out["bindings"] = jb;
    } else {
        out["bindings"] = nullptr;
    }
    if (a.format == "json") {
        emit_json(out);
    } else if (b) {
        for (auto& [key, val] : out["bindings"].items())
            std::cout << key << ": " << val.get<std::string>() << "\n";
    } else {
        std::cout << "no match\n";
    }
    return b ? 0 : 1;
}

// ---------------------------------------------------------------------------
// check-proof

int run_check_proof(const std::string& path, bool allow_bounded, const std::string& format) {
    aal::ParsedProof pp = aal::parse_proof_text(slurp(path));
    std::filesystem::path dir = std::filesystem::path(path).parent_path();
    aal::TemplateLoader loader = [&dir](const std::string& ref) {
        return slurp((dir / ref).string());
    };
    aal::ProofReport rep = aal::check_proof(*pp.lang, pp.proof, loader);

    auto verdict_str = [](aal::LineVerdict v) {
        switch (v) {
        case aal::LineVerdict::Accepted: return "accepted";
        case aal::LineVerdict::AcceptedBounded: return "accepted-bounded";
        default: return "rejected";
        }
    };
    const char* overall = rep.overall == aal::ProofReport::Overall::Accepted
                              ? "accepted"
                          : rep.overall == aal::ProofReport::Overall::AcceptedBounded
                              ? "accepted-bounded"
                              : "rejected";

    json out;
    out["format_version"] = kFormatVersion;
    out["command"] = "check-proof";
    out["proof"] = path;
    json lines = json::array();
    for (const aal::LineReport& lr : rep.lines) {
        json jl;
        jl["index"] = lr.index;
        jl["verdict"] = verdict_str(lr.verdict);
        jl["message"] = lr.message;
        lines.push_back(jl);
    }
    out["lines"] = lines;
    out["overall"] = overall;
    out["uses_hypotheses"] = rep.uses_hypotheses;
    out["conclusion"] =
        rep.lines.empty() ? "" : aal::print_formula(*pp.lang, rep.conclusion);

    int rc;
    if (rep.overall == aal::ProofReport::Overall::Accepted)
        rc = 0;
    else if (rep.overall == aal::ProofReport::Overall::AcceptedBounded)
        rc = allow_bounded ? 0 : 1;
    else
        rc = 1;

    if (format == "json") {
        emit_json(out);
    } else {
        for (const aal::LineReport& lr : rep.lines) {
            std::cout << "line " << lr.index << ": " << verdict_str(lr.verdict);
            if (!lr.message.empty())
                std::cout << " — " << lr.message;
            std::cout << "\n";
        }
        std::cout << "overall: " << overall << "\n";
        if (!rep.lines.empty())
            std::cout << "conclusion: " << out["conclusion"].get<std::string>() << "\n";
        if (rep.uses_hypotheses)
            std::cout << "note: proof uses hypotheses; conclusion is relative to them\n";
        if (rep.overall == aal::ProofReport::Overall::AcceptedBounded && !allow_bounded)
            std::cout << "note: bounded word-generalization evidence only; pass "
                         "--allow-bounded to accept\n";
    }
    return rc;
}

// ---------------------------------------------------------------------------
// gen-model

int run_gen_model(const VocabFlags& v, std::uint32_t states, std::uint64_t seed) {
    std::unique_ptr<aal::Lang> lang = make_lang(v);
    aal::EpistemicModel m = aal::random_model(states, *lang, seed);
    emit_json(aal::model_to_json(*lang, m));
    return 0;
}

void add_format_flag(CLI::App* cmd, std::string& fmt) {
    cmd->add_option("--format", fmt, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"asynchronous-announcement logic toolkit"};
    app.require_subcommand(1);

    EvalArgs ev;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a formula after a word");
    eval_cmd->add_option("--model", ev.model_path, "model file")->required();
    eval_cmd->add_option("--state", ev.state, "state name")->required();
    eval_cmd->add_option("--word", ev.word, "word in dot syntax")->required();
    eval_cmd->add_option("--formula", ev.formula, "formula to evaluate")->required();
    eval_cmd->add_flag("--minus", ev.minus, "use the history-only semantics");
    add_format_flag(eval_cmd, ev.format);

    EvalArgs ex;
    CLI::App* exec_cmd = app.add_subcommand("exec", "test whether a state can run a word");
    exec_cmd->add_option("--model", ex.model_path, "model file")->required();
    exec_cmd->add_option("--state", ex.state, "state name")->required();
    exec_cmd->add_option("--word", ex.word, "word in dot syntax")->required();
    exec_cmd->add_flag("--minus", ex.minus, "use the history-only semantics");
    add_format_flag(exec_cmd, ex.format);

    VocabFlags views_vocab;
    std::string views_word, views_agent, views_format = "text";
    CLI::App* views_cmd =
        app.add_subcommand("views", "enumerate the histories an agent considers possible");
    views_cmd->add_option("--word", views_word, "word in dot syntax")->required();
    views_cmd->add_option("--agent", views_agent, "agent name")->required();
    add_vocab_flags(views_cmd, views_vocab, true);
    add_format_flag(views_cmd, views_format);

    VocabFlags hist_vocab;
    std::string hist_word, hist_format = "text";
    CLI::App* hist_cmd = app.add_subcommand("history", "test whether a word is a history");
    hist_cmd->add_option("--word", hist_word, "word in dot syntax")->required();
    add_vocab_flags(hist_cmd, hist_vocab, true);
    add_format_flag(hist_cmd, hist_format);

    ValidityArgs va;
    CLI::App* val_cmd = app.add_subcommand(
        "validity", "search for counterexamples to empty-history or all-history validity");
    val_cmd->add_option("--formula", va.formula, "formula to test")->required();
    val_cmd->add_option("--mode", va.mode, "eps (empty history) or star (all histories)")
        ->check(CLI::IsMember({"eps", "star"}));
    val_cmd->add_option("--model", va.model_paths,
                        "model file (repeatable); otherwise a random family is used");
    val_cmd->add_option("--models", va.models, "random family size [20]");
    val_cmd->add_option("--max-states", va.max_states, "random model size cap [4]");
    val_cmd->add_option("--seed", va.seed, "random family seed [0]");
    val_cmd->add_option("--bound", va.bound, "history length bound for star mode [3]");
    val_cmd->add_option("--vocab", va.vocab_csv,
                        "comma-separated announcement vocabulary for star mode");
    add_vocab_flags(val_cmd, va.vocab_flags, false);
    add_format_flag(val_cmd, va.format);

    AxiomArgs ax;
    CLI::App* ax_cmd = app.add_subcommand("axiom", "instantiate or recognize axiom schemas");
    ax_cmd->add_option("--schema", ax.schema, "schema name (see --list)");
    ax_cmd->add_flag("--list", ax.list, "list schemas and their metavariables");
    ax_cmd->add_option("--match", ax.match, "formula to match against the schema");
    ax_cmd->add_flag("--instantiate", ax.instantiate, "build an instance from bindings");
    ax_cmd->add_option("--phi", ax.phi, "binding for phi");
    ax_cmd->add_option("--psi", ax.psi, "binding for psi");
    ax_cmd->add_option("--agent", ax.agent, "binding for agent");
    ax_cmd->add_option("--atom", ax.atom, "binding for atom");
    ax_cmd->add_option("--alpha", ax.alpha, "binding for alpha (word)");
    add_vocab_flags(ax_cmd, ax.vocab_flags, true);
    add_format_flag(ax_cmd, ax.format);

    std::string proof_path, proof_format = "text";
    bool allow_bounded = false;
    CLI::App* prf_cmd = app.add_subcommand("check-proof", "check a Hilbert-style proof file");
    prf_cmd->add_option("proof", proof_path, "proof file")->required();
    prf_cmd->add_flag("--allow-bounded", allow_bounded,
                      "exit 0 even when the bounded word-generalization rule is used");
    add_format_flag(prf_cmd, proof_format);

    VocabFlags gen_vocab;
    std::uint32_t gen_states = 4;
    std::uint64_t gen_seed = 0;
    CLI::App* gen_cmd = app.add_subcommand("gen-model", "generate a reproducible random model");
    gen_cmd->add_option("--states", gen_states, "number of states [4]");
    gen_cmd->add_option("--seed", gen_seed, "generator seed [0]");
    add_vocab_flags(gen_cmd, gen_vocab, false);

    try {
        app.parse(argc, argv);
        if (*eval_cmd)
            return run_eval(ev, true);
        if (*exec_cmd)
            return run_eval(ex, false);
        if (*views_cmd)
            return run_views(views_vocab, views_word, views_agent, views_format);
        if (*hist_cmd)
            return run_history(hist_vocab, hist_word, hist_format);
        if (*val_cmd)
            return run_validity(va);
        if (*ax_cmd)
            return run_axiom(ax);
        if (*prf_cmd)
            return run_check_proof(proof_path, allow_bounded, proof_format);
        if (*gen_cmd)
            return run_gen_model(gen_vocab, gen_states, gen_seed);
        return 2;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const aal::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

// End-to-end checks of the command-line front end: exit codes, output
// formats, determinism, and counterexample replay.
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "aal/aal.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = AAL_CLI_PATH;
const std::string kModels = std::string(AAL_FIXTURE_DIR) + "/models/";
const std::string kProofs = std::string(AAL_FIXTURE_DIR) + "/proofs/";

struct RunResult {
    int rc = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs a shell command, capturing stdout+stderr and the exit code.
RunResult sh(const std::string& cmd) {
    static int counter = 0;
    std::string capture = "/tmp/aal_cli_" + std::to_string(::getpid()) + "_" +
                          std::to_string(counter++) + ".out";
    int status = std::system((cmd + " > " + capture + " 2>&1").c_str());
    RunResult r;
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(capture);
    std::remove(capture.c_str());
    return r;
}

RunResult aal_cmd(const std::string& args) { return sh(kCli + " " + args); }

const std::string kTwoObs = kModels + "two_observers.json";
const std::string kVocab = " --agents a,b --atoms p,q ";

} // namespace

TEST_CASE("cli usage errors exit 2 and help exits 0") {
    CHECK(aal_cmd("--help").rc == 0);
    CHECK(aal_cmd("--help").out.find("eval") != std::string::npos);
    CHECK(aal_cmd("").rc == 2);                       // subcommand required
    CHECK(aal_cmd("frobnicate").rc == 2);             // unknown subcommand
    CHECK(aal_cmd("eval --state pq").rc == 2);        // missing required flags
    CHECK(aal_cmd("views --word p.a --agent a" + kVocab + "--format yaml").rc == 2);
    CHECK(aal_cmd("eval --model /nonexistent.json --state pq --word eps --formula T").rc == 2);
    CHECK(aal_cmd("eval --model " + kTwoObs + " --state bogus --word eps --formula T").rc == 2);
    CHECK(aal_cmd("eval --model " + kTwoObs + " --state pq --word eps --formula '(p'").rc == 2);
    // A language comes from --model or --agents/--atoms, never both.
    CHECK(aal_cmd("views --word p.a --agent a --model " + kTwoObs + kVocab).rc == 2);
    CHECK(aal_cmd("validity --formula T").rc == 2);   // no language given at all
}

TEST_CASE("eval and exec report satisfaction through the exit code") {
    std::string base = "eval --model " + kTwoObs + " --state pq --word p.a --formula ";
    RunResult yes = aal_cmd(base + "'K a p'");
    CHECK(yes.rc == 0);
    CHECK(yes.out.find("satisfied: yes") != std::string::npos);
    CHECK(yes.out.find("executable: yes") != std::string::npos);
    RunResult no = aal_cmd(base + "'K b p'");
    CHECK(no.rc == 1);
    CHECK(no.out.find("satisfied: no") != std::string::npos);

    CHECK(aal_cmd("exec --model " + kTwoObs + " --state pq --word p.a").rc == 0);
    // Announcing p where p is false is not executable.
    CHECK(aal_cmd("exec --model " + kTwoObs + " --state npnq --word p").rc == 1);
    // Non-history words are never executable.
    CHECK(aal_cmd("exec --model " + kTwoObs + " --state pq --word p.a.a").rc == 1);
}

TEST_CASE("the history-only semantics drops the truthfulness guard") {
    std::string args = " --model " + kTwoObs + " --state npnq --word p --formula T";
    CHECK(aal_cmd("eval" + args).rc == 1);
    CHECK(aal_cmd("eval --minus" + args).rc == 0);
    // ... but still insists on history inputs.
    CHECK(aal_cmd("eval --minus --model " + kTwoObs +
                  " --state pq --word p.a.a --formula T")
              .rc == 2);
}

TEST_CASE("views prints one history per line in canonical order") {
    RunResult r = aal_cmd("views --word p.a --agent a" + kVocab);
    CHECK(r.rc == 0);
    CHECK(r.out == "p.a\np.a.b\np.b.a\n");
    RunResult other = aal_cmd("views --word p.a --agent b" + kVocab);
    CHECK(other.rc == 0);
    CHECK(other.out == "eps\n");
}

TEST_CASE("history classification through the exit code") {
    RunResult yes = aal_cmd("history --word p.q.a.a" + kVocab);
    CHECK(yes.rc == 0);
    CHECK(yes.out.find("history: yes") != std::string::npos);
    RunResult no = aal_cmd("history --word p.a.a.q" + kVocab);
    CHECK(no.rc == 1);
    CHECK(no.out.find("history: no") != std::string::npos);
}

TEST_CASE("validity verdicts and the replay line") {
    std::string common = "validity --formula '[a]F'" + kVocab + "--models 10 --max-states 4";
    RunResult eps = aal_cmd(common + " --mode eps");
    CHECK(eps.rc == 0);
    CHECK(eps.out.find("verdict: no counterexample") != std::string::npos);

    RunResult star = aal_cmd(common + " --mode star --bound 2");
    CHECK(star.rc == 1);
    CHECK(star.out.find("verdict: refuted") != std::string::npos);
    REQUIRE(star.out.find("replay: ") != std::string::npos);

    // The printed replay command, run with `aal` on PATH, reproduces the
    // refutation: the formula evaluates unsatisfied (exit 1, "satisfied: no").
    std::string replay = star.out.substr(star.out.find("replay: ") + 8);
    replay = replay.substr(0, replay.find('\n'));
    fs::path dir = "/tmp/aal_replay_" + std::to_string(::getpid());
    fs::create_directories(dir / "bin");
    fs::create_directories(dir / "work");
    fs::remove(dir / "bin" / "aal");
    fs::create_symlink(fs::absolute(kCli), dir / "bin" / "aal");
    RunResult rr = sh("cd " + (dir / "work").string() + " && export PATH=" +
                      (dir / "bin").string() + ":$PATH && " + replay);
    CHECK(rr.rc == 1);
    CHECK(rr.out.find("satisfied: no") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("validity over model files") {
    RunResult r = aal_cmd("validity --formula 'p | ~p' --mode eps --model " + kTwoObs);
    CHECK(r.rc == 0);
    CHECK(r.out.find("checked models: 1") != std::string::npos);
    RunResult refuted = aal_cmd("validity --formula p --mode eps --model " + kTwoObs);
    CHECK(refuted.rc == 1);
    CHECK(refuted.out.find("replay: aal eval --model '" + kTwoObs + "'") !=
          std::string::npos);
}

TEST_CASE("json output is byte-stable across runs") {
    std::string gen = "gen-model" + kVocab + "--states 4 --seed 7";
    RunResult a = aal_cmd(gen);
    RunResult b = aal_cmd(gen);
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
    // A different seed gives a different model.
    CHECK(aal_cmd("gen-model" + kVocab + "--states 4 --seed 8").out != a.out);

    std::string val = "validity --formula '[a]F'" + kVocab +
                      "--models 5 --max-states 3 --bound 1 --format json";
    CHECK(aal_cmd(val).out == aal_cmd(val).out);

    std::string ev = "eval --model " + kTwoObs +
                     " --state pq --word p.a --formula 'K a p' --format json";
    RunResult j1 = aal_cmd(ev);
    CHECK(j1.out == aal_cmd(ev).out);
    json doc = json::parse(j1.out);
    CHECK(doc["format_version"] == 1);
    CHECK(doc["command"] == "eval");
    CHECK(doc["satisfied"] == true);
    CHECK(doc["executable"] == true);
    CHECK(doc["semantics"] == "guarded");
}

TEST_CASE("generated models feed back into eval") {
    std::string path = "/tmp/aal_genmodel_" + std::to_string(::getpid()) + ".json";
    RunResult gen = aal_cmd("gen-model" + kVocab + "--states 3 --seed 11");
    REQUIRE(gen.rc == 0);
    std::ofstream(path) << gen.out;
    RunResult ev = aal_cmd("eval --model " + path + " --state s0 --word eps --formula T");
    CHECK(ev.rc == 0);
    std::remove(path.c_str());
}

TEST_CASE("axiom listing, instantiation, and matching") {
    RunResult list = aal_cmd("axiom --list" + kVocab);
    CHECK(list.rc == 0);
    CHECK(list.out.find("dist_w: alpha phi psi") != std::string::npos);
    CHECK(list.out.find("empty_w: alpha agent phi") != std::string::npos);

    // The printed instance matches what the library builds.
    aal::Lang lang({"a", "b"}, {"p", "q"});
    aal::Bindings bind;
    bind.agent = 0;
    bind.phi = lang.atom("p");
    std::string expect =
        aal::print_formula(lang, aal::instantiate_axiom(lang, aal::AxiomSchema::Four, bind));
    RunResult inst =
        aal_cmd("axiom --schema four --instantiate --agent a --phi p" + kVocab);
    CHECK(inst.rc == 0);
    CHECK(inst.out == expect + "\n");

    RunResult match = aal_cmd("axiom --schema exec_w2 --match '[T]<a>T'" + kVocab);
    CHECK(match.rc == 0);
    CHECK(match.out == "agent: a\nalpha: T\n");
    RunResult nomatch = aal_cmd("axiom --schema dist --match 'p -> q'" + kVocab);
    CHECK(nomatch.rc == 1);
    CHECK(nomatch.out == "no match\n");

    // Side conditions surface as input errors.
    CHECK(aal_cmd("axiom --schema exec_w2 --instantiate --alpha p.a --agent a" + kVocab).rc == 2);
    // Exactly one of --match / --instantiate, and --schema is mandatory.
    CHECK(aal_cmd("axiom --schema dist" + kVocab).rc == 2);
    CHECK(aal_cmd("axiom --schema dist --match p --instantiate" + kVocab).rc == 2);
    CHECK(aal_cmd("axiom --schema bogus --match p" + kVocab).rc == 2);
}

TEST_CASE("check-proof exit codes track the flag and verdict") {
    RunResult ok = aal_cmd("check-proof " + kProofs + "box_diamond.prf");
    CHECK(ok.rc == 0);
    CHECK(ok.out.find("overall: accepted") != std::string::npos);

    RunResult bounded = aal_cmd("check-proof " + kProofs + "rstar_demo.prf");
    CHECK(bounded.rc == 1);
    CHECK(bounded.out.find("overall: accepted-bounded") != std::string::npos);
    CHECK(bounded.out.find("--allow-bounded") != std::string::npos);
    CHECK(aal_cmd("check-proof --allow-bounded " + kProofs + "rstar_demo.prf").rc == 0);

    std::string bad = "/tmp/aal_badproof_" + std::to_string(::getpid()) + ".prf";
    {
        std::ofstream f(bad);
        f << "agents a b\natoms p q\n"
          << "1. p -> (q -> p) ; taut\n"
          << "2. p ; hyp h\n"
          << "3. q ; mp 2 1\n";
    }
    RunResult rej = aal_cmd("check-proof " + bad);
    CHECK(rej.rc == 1);
    CHECK(rej.out.find("line 3: rejected") != std::string::npos);
    CHECK(rej.out.find("overall: rejected") != std::string::npos);
    std::remove(bad.c_str());

    CHECK(aal_cmd("check-proof /nonexistent.prf").rc == 2);
}

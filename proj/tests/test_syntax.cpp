// Formula construction, parsing, printing, and the structural measures.
#include <catch2/catch_amalgamated.hpp>

#include "aal/aal.hpp"
#include "gen.hpp"

using namespace aal;

namespace {
std::unique_ptr<Lang> two_agent_lang() {
    return std::make_unique<Lang>(std::vector<std::string>{"a", "b"},
                                  std::vector<std::string>{"p", "q"});
}
} // namespace

TEST_CASE("vocabulary rejects malformed and colliding names") {
    CHECK_THROWS_AS(Vocabulary({"a", "a"}, {"p"}), VocabError);
    CHECK_THROWS_AS(Vocabulary({"a"}, {"p", "p"}), VocabError);
    CHECK_THROWS_AS(Vocabulary({"a"}, {"a"}), VocabError); // agent/atom overlap
    CHECK_THROWS_AS(Vocabulary({"K"}, {"p"}), VocabError); // reserved word
    CHECK_THROWS_AS(Vocabulary({"a"}, {"eps"}), VocabError);
    CHECK_THROWS_AS(Vocabulary({"A"}, {"p"}), VocabError); // must start lowercase
    CHECK_THROWS_AS(Vocabulary({"a"}, {"p-q"}), VocabError);
    Vocabulary ok({"a", "b2"}, {"p", "q_0"});
    CHECK(ok.agent_index("b2") == 1u);
    CHECK(ok.atom_index("q_0") == 1u);
    CHECK(!ok.atom_index("r"));
}

TEST_CASE("connective sugar desugars to the primitive forms") {
    auto lang = two_agent_lang();
    FormulaTable& ft = lang->formulas();
    FormulaId p = lang->atom("p");
    FormulaId q = lang->atom("q");

    CHECK(parse_formula(*lang, "F") == ft.lnot(ft.top()));
    CHECK(parse_formula(*lang, "p & q") == ft.lnot(ft.lor(ft.lnot(p), ft.lnot(q))));
    CHECK(parse_formula(*lang, "p -> q") == ft.lor(ft.lnot(p), q));
    CHECK(parse_formula(*lang, "p <-> q") ==
          ft.land(ft.implies(p, q), ft.implies(q, p)));
    CHECK(parse_formula(*lang, "K a p") == ft.lnot(ft.hatk(0, ft.lnot(p))));
    CHECK(parse_formula(*lang, "[a]p") == ft.lnot(ft.recv(0, ft.lnot(p))));
    CHECK(parse_formula(*lang, "[p]q") == ft.lnot(ft.send(p, ft.lnot(q))));
    // A box over a word wraps one negation pair around the whole chain.
    CHECK(parse_formula(*lang, "[eps]p") == ft.lnot(ft.lnot(p)));
    CHECK(parse_formula(*lang, "[p.a]q") ==
          ft.lnot(ft.send(p, ft.recv(0, ft.lnot(q)))));
    CHECK(parse_formula(*lang, "<p.a>q") == ft.send(p, ft.recv(0, q)));
}

TEST_CASE("precedence and associativity are fixed") {
    auto lang = two_agent_lang();
    FormulaTable& ft = lang->formulas();
    FormulaId p = lang->atom("p");
    FormulaId q = lang->atom("q");

    // & binds tighter than |, which binds tighter than ->, then <->.
    CHECK(parse_formula(*lang, "p | q & p") == ft.lor(p, ft.land(q, p)));
    CHECK(parse_formula(*lang, "p -> q | p") == ft.implies(p, ft.lor(q, p)));
    CHECK(parse_formula(*lang, "p & q & p") == ft.land(ft.land(p, q), p)); // left fold
    CHECK(parse_formula(*lang, "p -> q -> p") == ft.implies(p, ft.implies(q, p)));
    // Prefixes reach as far right as possible.
    CHECK(parse_formula(*lang, "~K a p") == ft.lnot(ft.knows(0, p)));
    CHECK(parse_formula(*lang, "K a p | q") == ft.lor(ft.knows(0, p), q));
    CHECK(parse_formula(*lang, "Khat b p & q") == ft.land(ft.hatk(1, p), q));
}

TEST_CASE("parse errors carry positions and the right category") {
    auto lang = two_agent_lang();
    CHECK_THROWS_AS(parse_formula(*lang, "p -"), LexError);    // bare dash
    CHECK_THROWS_AS(parse_formula(*lang, "(p | q"), SyntaxError);
    CHECK_THROWS_AS(parse_formula(*lang, "p q"), SyntaxError); // trailing junk
    CHECK_THROWS_AS(parse_formula(*lang, ""), SyntaxError);
    CHECK_THROWS_AS(parse_formula(*lang, "r"), SyntaxError);   // undeclared name
    CHECK_THROWS_AS(parse_formula(*lang, "K p q"), SyntaxError); // atom where agent expected
    CHECK_THROWS_AS(parse_formula(*lang, "<>p"), SyntaxError);
    CHECK_THROWS_AS(parse_word(*lang, "p..a"), SyntaxError);
    CHECK_THROWS_AS(parse_word(*lang, "p.eps"), SyntaxError); // eps only stands alone
    CHECK_THROWS_AS(parse_word(*lang, ""), SyntaxError);
}

TEST_CASE("printed formulas reparse to the same identity") {
    auto lang = two_agent_lang();
    const char* samples[] = {
        "p",
        "T",
        "F",
        "~(p | q)",
        "K a (p -> q)",
        "Khat b Khat a p",
        "[a]F & K a [a]F",
        "<p|q>(K a p | K b q)",
        "[p.a.b]~K a q",
        "<q.a>K a ~K a q",
        "[eps]p",
    };
    for (const char* s : samples) {
        FormulaId f = parse_formula(*lang, s);
        std::string printed = print_formula(*lang, f);
        INFO(s << "  printed as  " << printed);
        CHECK(parse_formula(*lang, printed) == f);
    }
}

TEST_CASE("printed words reparse to the same identity") {
    auto lang = two_agent_lang();
    const char* samples[] = {"eps", "p", "p.a", "p.q.a.a", "(p|q).a.b", "p.a.(~K b p).b"};
    for (const char* s : samples) {
        WordId w = parse_word(*lang, s);
        std::string printed = print_word(*lang, w);
        INFO(s << "  printed as  " << printed);
        CHECK(parse_word(*lang, printed) == w);
    }
    CHECK(print_word(*lang, lang->words().epsilon()) == "eps");
}

TEST_CASE("round trips hold on random formulas and words") {
    auto lang = two_agent_lang();
    gen::Rng r(20240811);
    for (int i = 0; i < 400; ++i) {
        FormulaId f = gen::random_formula(*lang, r, 4);
        CHECK(parse_formula(*lang, print_formula(*lang, f)) == f);
    }
    for (int i = 0; i < 200; ++i) {
        WordId w = gen::random_word(*lang, r, static_cast<std::uint32_t>(r.below(5)), 2);
        CHECK(parse_word(*lang, print_word(*lang, w)) == w);
    }
}

TEST_CASE("structural weight and receive depth are as defined") {
    auto lang = two_agent_lang();
    FormulaTable& ft = lang->formulas();
    WordTable& wt = lang->words();
    FormulaId p = lang->atom("p");
    FormulaId q = lang->atom("q");

    CHECK(ft.size(p) == 2);
    CHECK(ft.size(ft.top()) == 1);
    CHECK(ft.size(ft.lnot(p)) == 3);
    CHECK(ft.size(ft.lor(p, q)) == 4);
    CHECK(ft.size(ft.hatk(0, p)) == 3);
    CHECK(ft.size(ft.recv(0, p)) == 4);
    CHECK(ft.size(parse_formula(*lang, "<p>q")) == 6); // 2*size(p) + size(q)

    CHECK(wt.word_size(parse_word(*lang, "p.a")) == 3);
    CHECK(wt.word_size(parse_word(*lang, "p.p")) == 4);

    CHECK(ft.deg(p) == 0);
    CHECK(ft.deg(ft.hatk(0, p)) == 1);
    CHECK(ft.deg(ft.recv(0, ft.hatk(0, p))) == 1);
    CHECK(ft.deg(parse_formula(*lang, "<Khat a p>Khat b q")) == 2); // sums across a send
}

TEST_CASE("double negation stripping is a fixpoint and reaches under modalities") {
    auto lang = two_agent_lang();
    FormulaTable& ft = lang->formulas();
    FormulaId p = lang->atom("p");
    CHECK(ft.strip_double_negation(ft.lnot(ft.lnot(p))) == p);
    CHECK(ft.strip_double_negation(ft.lnot(p)) == ft.lnot(p));
    FormulaId nested = ft.hatk(0, ft.lnot(ft.lnot(ft.recv(1, ft.lnot(ft.lnot(p))))));
    CHECK(ft.strip_double_negation(nested) == ft.hatk(0, ft.recv(1, p)));

    gen::Rng r(7);
    for (int i = 0; i < 300; ++i) {
        FormulaId f = gen::random_formula(*lang, r, 4);
        FormulaId n = ft.strip_double_negation(f);
        CHECK(ft.strip_double_negation(n) == n);
    }
}

TEST_CASE("the structural order is total and consistent with identity") {
    auto lang = two_agent_lang();
    FormulaTable& ft = lang->formulas();
    gen::Rng r(99);
    std::vector<FormulaId> fs;
    for (int i = 0; i < 60; ++i)
        fs.push_back(gen::random_formula(*lang, r, 3));
    for (FormulaId f : fs)
        for (FormulaId g : fs) {
            bool lt = ft.less(f, g), gt = ft.less(g, f);
            CHECK(!(lt && gt));
            CHECK(((f == g) == (!lt && !gt)));
        }
}

TEST_CASE("subformula listing is closed and deduplicated") {
    auto lang = two_agent_lang();
    FormulaTable& ft = lang->formulas();
    FormulaId f = parse_formula(*lang, "K a (p -> <q>p)");
    std::vector<FormulaId> subs = ft.subformulas(f);
    std::vector<FormulaId> sorted = subs;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(std::find(subs.begin(), subs.end(), f) != subs.end());
    CHECK(std::find(subs.begin(), subs.end(), lang->atom("p")) != subs.end());
    // Announced formulas count as subformulas too.
    CHECK(std::find(subs.begin(), subs.end(), lang->atom("q")) != subs.end());
}

#include "lamlab/corpus.hpp"
#include "lamlab/errors.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <set>

using namespace lamlab;

TEST(Generate, SingleNodeOpenTerm) {
    auto t = generate({1, 1, {"x"}, 0.5}, 1);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(print_term(t[0]), "x");
}

TEST(Generate, Deterministic) {
    GenConfig g{42, 25, {"x", "y"}, 0.4};
    auto a = generate(g, 200);
    auto b = generate(g, 200);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
    // Shorter runs are prefixes of longer ones.
    auto c = generate(g, 50);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(a[i], c[i]);
    GenConfig h = g;
    h.seed = 43;
    auto d = generate(h, 200);
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == d[i];
    EXPECT_LT(same, a.size());
}

TEST(Generate, ClosedAndBounded) {
    for (std::size_t size_max : {2u, 3u, 7u, 30u}) {
        for (const Term& t : generate({9, size_max, {}, 0.5}, 300)) {
            EXPECT_TRUE(t.closed()) << print_term(t);
            EXPECT_LE(t.size(), size_max) << print_term(t);
        }
    }
}

TEST(Generate, OpenTermsUseThePool) {
    for (const Term& t : generate({5, 15, {"p", "q"}, 0.5}, 300))
        for (const auto& v : free_vars(t)) EXPECT_TRUE(v == "p" || v == "q") << v;
}

TEST(Generate, RedexBiasRaisesRedexCount) {
    auto count = [](double bias) {
        std::size_t n = 0;
        for (const Term& t : generate({7, 30, {}, bias}, 400))
            n += classify(t).has(FormClass::NF) ? 0 : 1;
        return n;
    };
    EXPECT_LT(count(0.0), count(1.0));
}

TEST(Generate, RejectsImpossibleBounds) {
    EXPECT_THROW(generate({1, 0, {"x"}, 0.5}, 1), DomainError);
    EXPECT_THROW(generate({1, 1, {}, 0.5}, 1), DomainError);
    EXPECT_THROW(generate({1, 5, {}, 1.5}, 1), DomainError);
}

TEST(PaperCorpus, NamedTerms) {
    EXPECT_EQ(print_term(paper_term("sestoft-fig-example")), "(\\x.(\\x.x) z) ((\\x.x) z)");
    EXPECT_TRUE(alpha_eq(paper_term("strictness-counterexample"), parse_term("(\\x.y) #Omega")));
    EXPECT_TRUE(alpha_eq(paper_term("sis-counterexample"), parse_term("(\\k.k #Omega) (\\x.y)")));
    EXPECT_EQ(print_term(paper_term("his-counterexample")), "x (x ((\\a.a) u))");
    std::set<std::string> names;
    for (const auto& nt : paper_corpus()) EXPECT_TRUE(names.insert(nt.name).second) << nt.name;
    EXPECT_THROW(paper_term("missing"), DomainError);
}

TEST(CorpusFile, RoundTrip) {
    auto terms = generate({77, 30, {"x", "y"}, 0.5}, 500);
    auto path = std::filesystem::temp_directory_path() / "lamlab_corpus_roundtrip.txt";
    save_text(path.string(), format_corpus(terms));
    auto back = load_corpus(path.string());
    std::filesystem::remove(path);
    ASSERT_EQ(back.size(), terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) EXPECT_TRUE(alpha_eq(back[i], terms[i])) << i;
}

TEST(CorpusFile, NamedRoundTrip) {
    auto back = parse_corpus(format_corpus(paper_corpus()));
    ASSERT_EQ(back.size(), paper_corpus().size());
    for (std::size_t i = 0; i < back.size(); ++i) EXPECT_TRUE(alpha_eq(back[i], paper_corpus()[i].term));
}

TEST(CorpusFile, ErrorsNameTheLine) {
    try {
        parse_corpus("x\n-- fine\n(\\x.\ny\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("at 3:"), std::string::npos);
    }
}

TEST(CorpusFile, EmptyAndMissing) {
    EXPECT_TRUE(parse_corpus("").empty());
    EXPECT_TRUE(parse_corpus("-- only a comment\n\n   \n").empty());
    EXPECT_THROW(load_corpus("/nonexistent/dir/corpus.txt"), DomainError);
}

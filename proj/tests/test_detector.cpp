#include "simdef/detector.hpp"

#include <doctest.h>

#include <map>
#include <random>

#include "simdef/clone.hpp"
#include "simdef/errors.hpp"
#include "simdef/fingerprint.hpp"
#include "simdef/tokenizer.hpp"
#include "test_util.hpp"

using namespace simdef;

namespace {

SourceFile make_file(std::string name, std::string content) {
    SourceFile f;
    f.path = name + ".java";
    f.logical_name = std::move(name);
    f.content = std::move(content);
    f.size_bytes = f.content.size();
    return f;
}

// Statements with varied operator shapes so distinct files rarely share
// k-grams by accident.
std::string random_snippet(std::mt19937_64& rng, int statements) {
    static const char* const kTemplates[] = {
        "x = a + b - c;\n",
        "if (a < b) { y = y * 2; }\n",
        "while (k >= 0) { k--; }\n",
        "for (int i = 0; i != n; ++i) sum += i;\n",
        "v[i] = (a | b) & ~c;\n",
        "z = cond ? p : q;\n",
        "obj.call(a, b).chain();\n",
        "mask <<= 3; mask >>= 1;\n",
        "flag = a == b || c != d;\n",
        "arr[j % len] ^= key;\n",
        "total *= rate / 100;\n",
        "p = p instanceof Foo ? p : null;\n",
    };
    std::string out = "class T {\nvoid m() {\n";
    for (int s = 0; s < statements; ++s) {
        out += kTemplates[testutil::rand_below(rng, std::size(kTemplates))];
    }
    out += "}\n}\n";
    return out;
}

}  // namespace

TEST_CASE("two identical files score 100 in fingerprint mode") {
    std::mt19937_64 rng(11);
    auto text = random_snippet(rng, 12);
    std::vector<SourceFile> corpus = {make_file("A", text), make_file("B", text)};
    auto m = build_matrix(corpus, DetectorConfig{});
    REQUIRE(m.entries().size() == 1);
    CHECK(m.lookup(0, 1) == 100.0);
}

TEST_CASE("token-disjoint files produce an empty matrix") {
    std::vector<SourceFile> corpus = {
        make_file("A", "a + b + c + d + e + f + g + h;"),
        make_file("B", "x[0] = y[1] & z[2] | w[3] ^ v[4];"),
    };
    DetectorConfig config;
    config.k = 3;
    config.w = 2;
    auto m = build_matrix(corpus, config);
    CHECK(m.entries().empty());
}

TEST_CASE("build_matrix equals a naive pairwise loop on a random corpus") {
    std::mt19937_64 rng(2024);
    std::vector<SourceFile> corpus;
    for (int i = 0; i < 30; ++i) {
        corpus.push_back(make_file("f" + std::to_string(i),
                                   random_snippet(rng, 3 + static_cast<int>(testutil::rand_below(rng, 10)))));
    }
    DetectorConfig config;
    config.k = 5;
    config.w = 4;
    config.max_sharing = 8;  // exercise the over-shared filter too

    auto m = build_matrix(corpus, config);

    // Naive route: fingerprint each file, build the over-shared filter, and
    // call pair_similarity for every pair independently.
    std::vector<FingerprintSet> prints;
    for (const auto& f : corpus) {
        prints.push_back(winnow(kgram_hashes(tokenize(f), config.k), config.w));
    }
    std::map<std::uint64_t, int> document_frequency;
    for (const auto& set : prints) {
        for (const auto& p : set.prints) ++document_frequency[p.hash];
    }
    std::unordered_set<std::uint64_t> filter;
    for (const auto& [hash, df] : document_frequency) {
        if (df > config.max_sharing) filter.insert(hash);
    }

    size_t expected_entries = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        for (size_t j = i + 1; j < corpus.size(); ++j) {
            double want = pair_similarity(prints[i], prints[j], filter);
            if (want > 0) ++expected_entries;
            REQUIRE(m.lookup(static_cast<int>(i), static_cast<int>(j)) == want);
        }
    }
    CHECK(m.entries().size() == expected_entries);
    CHECK(expected_entries > 0);  // the corpus reuses templates, so some pairs match
}

TEST_CASE("matrix entries are independent of corpus order") {
    std::mt19937_64 rng(77);
    std::vector<SourceFile> corpus;
    for (int i = 0; i < 12; ++i) {
        corpus.push_back(make_file("f" + std::to_string(i),
                                   random_snippet(rng, 4 + static_cast<int>(testutil::rand_below(rng, 6)))));
    }
    DetectorConfig config;
    auto forward = build_matrix(corpus, config);

    std::vector<SourceFile> reversed(corpus.rbegin(), corpus.rend());
    auto backward = build_matrix(reversed, config);

    for (int i = 0; i < forward.size(); ++i) {
        for (int j = 0; j < forward.size(); ++j) {
            int ri = backward.index_of(forward.name(i));
            int rj = backward.index_of(forward.name(j));
            REQUIRE(forward.lookup(i, j) == backward.lookup(ri, rj));
        }
    }
}

TEST_CASE("clone mode stores shared token counts") {
    std::mt19937_64 rng(5150);
    std::string shared = random_snippet(rng, 20);
    std::vector<SourceFile> corpus = {
        make_file("A", shared + random_snippet(rng, 6)),
        make_file("B", shared + random_snippet(rng, 7)),
        make_file("C", random_snippet(rng, 5)),
    };
    DetectorConfig config;
    config.mode = DetectorMode::Clone;
    config.min_tokens = 50;
    auto m = build_matrix(corpus, config);

    auto ta = tokenize(corpus[0]);
    auto tb = tokenize(corpus[1]);
    auto expected = detect_clones(ta, tb, config.min_tokens);
    CHECK(expected > 0);
    CHECK(m.lookup(0, 1) == static_cast<double>(expected));
    // C shares only template-sized fragments, below the threshold.
    CHECK(m.lookup(0, 2) == 0.0);
    CHECK(m.lookup(1, 2) == 0.0);
}

TEST_CASE("detector config bounds are enforced") {
    std::vector<SourceFile> corpus = {make_file("A", "int a;")};
    DetectorConfig config;
    config.k = 0;
    CHECK_THROWS_AS(build_matrix(corpus, config), simdef::ConfigError);
    config = {};
    config.w = 0;
    CHECK_THROWS_AS(build_matrix(corpus, config), simdef::ConfigError);
    config = {};
    config.min_tokens = 0;
    CHECK_THROWS_AS(build_matrix(corpus, config), simdef::ConfigError);
    config = {};
    CHECK_THROWS_AS(build_matrix({}, config), simdef::ConfigError);
    config.mode = DetectorMode::Import;
    CHECK_THROWS_AS(build_matrix(corpus, config), simdef::ConfigError);
}

TEST_CASE("clone mode below threshold leaves the matrix empty") {
    std::vector<SourceFile> corpus = {
        make_file("A", "int a = 1;"),
        make_file("B", "int a = 1;"),
    };
    DetectorConfig config;
    config.mode = DetectorMode::Clone;
    config.min_tokens = 50;
    auto m = build_matrix(corpus, config);
    CHECK(m.entries().empty());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "entroscope/corpus.hpp"
#include "testutil.hpp"

using namespace entroscope;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("entroscope_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string write(const std::string& name, const std::string& content) const {
        const auto file = path / name;
        std::ofstream out(file);
        out << content;
        return file.string();
    }
};

}  // namespace

TEST_CASE("load_corpus aggregates facts into per-entity tables") {
    TempDir dir;
    const auto docs = dir.write("docs.jsonl",
                                R"({"doc_id": "d1", "created_at": "2024-01-01"})"
                                "\n"
                                R"({"doc_id": "d2", "created_at": "2024-01-02"})"
                                "\n"
                                R"({"doc_id": "d3", "created_at": "2024-01-03"})"
                                "\n");
    const auto entities =
        dir.write("entities.jsonl", R"({"entity_id": "e1", "name": "Entity One"})"
                                    "\n");
    const auto facts = dir.write("facts.jsonl",
                                 R"({"fact_id": "f1", "entity_id": "e1", "doc_id": "d1"})"
                                 "\n"
                                 R"({"fact_id": "f2", "entity_id": "e1", "doc_id": "d1"})"
                                 "\n"
                                 R"({"fact_id": "f3", "entity_id": "e1", "doc_id": "d1"})"
                                 "\n"
                                 R"({"fact_id": "f4", "entity_id": "e1", "doc_id": "d2"})"
                                 "\n");

    const auto index = load_corpus(docs, entities, facts);
    CHECK(index.doc_count() == 3);
    CHECK(index.fact_record_count() == 4);
    REQUIRE(index.fact_tables().size() == 1);
    const auto& table = index.fact_tables()[0];
    CHECK(table.entity_id == "e1");
    CHECK(table.counts.at("d1") == 3);
    CHECK(table.counts.at("d2") == 1);
    CHECK(table.total_facts == 4);
    CHECK(index.find_entity("e1")->category == "UNKNOWN");
}

TEST_CASE("load_corpus rejects dangling references with context") {
    TempDir dir;
    const auto docs = dir.write("docs.jsonl", R"({"doc_id": "d1", "created_at": "2024-01-01"})"
                                              "\n");
    const auto entities = dir.write("entities.jsonl",
                                    R"({"entity_id": "e1", "name": "E"})"
                                    "\n");
    const auto facts = dir.write("facts.jsonl",
                                 R"({"fact_id": "f1", "entity_id": "e1", "doc_id": "dX"})"
                                 "\n");
    CHECK_THROWS_WITH_AS(load_corpus(docs, entities, facts),
                         doctest::Contains("dangling doc reference"), Error);
}

TEST_CASE("load_corpus reports malformed lines with file and line number") {
    TempDir dir;
    const auto docs = dir.write("docs.jsonl",
                                R"({"doc_id": "d1", "created_at": "2024-01-01"})"
                                "\n"
                                R"({"created_at": "2024-01-02"})"
                                "\n");
    const auto entities = dir.write("entities.jsonl", "");
    const auto facts = dir.write("facts.jsonl", "");
    CHECK_THROWS_WITH_AS(load_corpus(docs, entities, facts), doctest::Contains(":2:"), Error);
    CHECK_THROWS_WITH_AS(load_corpus(docs, entities, facts),
                         doctest::Contains("doc_id"), Error);

    const auto bad_json = dir.write("bad.jsonl", "{not json\n");
    CHECK_THROWS_WITH_AS(load_corpus(bad_json, entities, facts),
                         doctest::Contains("invalid JSON"), Error);
}

TEST_CASE("empty facts file admits zero entities") {
    TempDir dir;
    const auto docs = dir.write("docs.jsonl", R"({"doc_id": "d1", "created_at": "2024-01-01"})"
                                              "\n");
    const auto entities = dir.write("entities.jsonl",
                                    R"({"entity_id": "e1", "name": "E"})"
                                    "\n");
    const auto facts = dir.write("facts.jsonl", "");
    const auto index = load_corpus(docs, entities, facts);
    CHECK(index.fact_tables().empty());
    CHECK(index.entities().size() == 1);
    CHECK(index.doc_count() == 1);
}

TEST_CASE("duplicate ids are rejected") {
    CHECK_THROWS_WITH_AS(
        testutil::CorpusBuilder{}.doc("d1").doc("d1").build(),
        doctest::Contains("duplicate doc_id"), Error);
    CHECK_THROWS_WITH_AS(
        testutil::CorpusBuilder{}.entity("e1").entity("e1").build(),
        doctest::Contains("duplicate entity_id"), Error);
}

TEST_CASE("confidence outside [0,1] is rejected") {
    std::vector<DocumentRecord> docs{{"d1", parse_date("2024-01-01"), ""}};
    std::vector<EntityRecord> entities{{"e1", "E", "UNKNOWN"}};
    std::vector<FactRecord> facts{{"f1", "e1", "d1", 1.5, ""}};
    CHECK_THROWS_WITH_AS(
        CorpusIndex::from_records(docs, entities, facts),
        doctest::Contains("confidence"), Error);
}

TEST_CASE("loading is deterministic under record reordering") {
    TempDir dir;
    const std::string d1 = R"({"doc_id": "d1", "created_at": "2024-01-01"})";
    const std::string d2 = R"({"doc_id": "d2", "created_at": "2024-01-02"})";
    const std::string e1 = R"({"entity_id": "e1", "name": "E1"})";
    const std::string e2 = R"({"entity_id": "e2", "name": "E2"})";
    const std::string f1 = R"({"fact_id": "f1", "entity_id": "e1", "doc_id": "d1"})";
    const std::string f2 = R"({"fact_id": "f2", "entity_id": "e2", "doc_id": "d2"})";
    const std::string f3 = R"({"fact_id": "f3", "entity_id": "e1", "doc_id": "d2"})";

    const auto a = load_corpus(dir.write("da.jsonl", d1 + "\n" + d2 + "\n"),
                               dir.write("ea.jsonl", e1 + "\n" + e2 + "\n"),
                               dir.write("fa.jsonl", f1 + "\n" + f2 + "\n" + f3 + "\n"));
    const auto b = load_corpus(dir.write("db.jsonl", d2 + "\n" + d1 + "\n"),
                               dir.write("eb.jsonl", e2 + "\n" + e1 + "\n"),
                               dir.write("fb.jsonl", f3 + "\n" + f1 + "\n" + f2 + "\n"));

    REQUIRE(a.documents().size() == b.documents().size());
    for (std::size_t i = 0; i < a.documents().size(); ++i)
        CHECK(a.documents()[i].doc_id == b.documents()[i].doc_id);
    REQUIRE(a.fact_tables().size() == b.fact_tables().size());
    for (std::size_t i = 0; i < a.fact_tables().size(); ++i) {
        CHECK(a.fact_tables()[i].entity_id == b.fact_tables()[i].entity_id);
        CHECK(a.fact_tables()[i].counts == b.fact_tables()[i].counts);
    }
}

TEST_CASE("invalid created_at loads but is undated") {
    TempDir dir;
    const auto docs = dir.write("docs.jsonl",
                                R"({"doc_id": "d1", "created_at": "2024-02-30"})"
                                "\n"
                                R"({"doc_id": "d2", "created_at": "not a date"})"
                                "\n");
    const auto entities = dir.write("entities.jsonl", "");
    const auto facts = dir.write("facts.jsonl", "");
    const auto index = load_corpus(docs, entities, facts);
    CHECK_FALSE(index.documents()[0].created_day.has_value());
    CHECK_FALSE(index.documents()[1].created_day.has_value());
}

TEST_CASE("parse_date handles the calendar") {
    CHECK(parse_date("1970-01-01") == 0);
    CHECK(parse_date("2024-02-29").has_value());
    CHECK_FALSE(parse_date("2023-02-29").has_value());
    CHECK_FALSE(parse_date("2024-13-01").has_value());
    CHECK_FALSE(parse_date("2024-1-01").has_value());
    CHECK_FALSE(parse_date("").has_value());
    CHECK(*parse_date("2024-01-02") - *parse_date("2024-01-01") == 1);
}

TEST_CASE("filter_entities applies both thresholds") {
    auto index = testutil::CorpusBuilder{}
                     .doc("d1")
                     .doc("d2")
                     .entity("one_doc")
                     .entity("two_docs")
                     .facts("one_doc", "d1", 5)
                     .facts("two_docs", "d1", 1)
                     .facts("two_docs", "d2", 1)
                     .build();

    SUBCASE("min_docs=2 excludes single-document entities") {
        const auto filtered = filter_entities(index, 1, 2);
        REQUIRE(filtered.fact_tables().size() == 1);
        CHECK(filtered.fact_tables()[0].entity_id == "two_docs");
    }
    SUBCASE("defaults are the identity") {
        const auto filtered = filter_entities(index, 1, 1);
        CHECK(filtered.fact_tables().size() == 2);
        CHECK(filtered.doc_count() == index.doc_count());
    }
    SUBCASE("min_facts=3 excludes the {1,1} entity") {
        const auto filtered = filter_entities(index, 3, 1);
        REQUIRE(filtered.fact_tables().size() == 1);
        CHECK(filtered.fact_tables()[0].entity_id == "one_doc");
    }
    SUBCASE("idempotent for fixed thresholds") {
        const auto once = filter_entities(index, 3, 1);
        const auto twice = filter_entities(once, 3, 1);
        CHECK(once.fact_tables().size() == twice.fact_tables().size());
    }
    SUBCASE("thresholds below 1 are rejected") {
        CHECK_THROWS_AS(filter_entities(index, 0, 1), Error);
    }
}

TEST_CASE("fact count conservation over random corpora") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 50; ++round) {
        testutil::CorpusBuilder builder;
        const int n_docs = 1 + static_cast<int>(rng() % 6);
        const int n_entities = 1 + static_cast<int>(rng() % 4);
        for (int d = 0; d < n_docs; ++d) builder.doc("d" + std::to_string(d));
        for (int e = 0; e < n_entities; ++e) builder.entity("e" + std::to_string(e));
        std::int64_t expected = 0;
        for (int e = 0; e < n_entities; ++e) {
            for (int d = 0; d < n_docs; ++d) {
                const std::int64_t n = static_cast<std::int64_t>(rng() % 4);
                builder.facts("e" + std::to_string(e), "d" + std::to_string(d), n);
                expected += n;
            }
        }
        const auto index = builder.build();
        std::int64_t total = 0;
        for (const auto& table : index.fact_tables()) total += table.total_facts;
        CHECK(total == expected);
        CHECK(index.fact_record_count() == static_cast<std::size_t>(expected));
    }
}

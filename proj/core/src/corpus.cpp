#include "entroscope/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace entroscope {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw Error(path + ":" + std::to_string(line) + ": " + what);
}

std::string require_string(const json& j, const char* field,
                           const std::string& path, std::size_t line) {
    auto it = j.find(field);
    if (it == j.end()) fail(path, line, std::string("missing field \"") + field + "\"");
    if (!it->is_string()) fail(path, line, std::string("field \"") + field + "\" must be a string");
    auto value = it->get<std::string>();
    if (value.empty()) fail(path, line, std::string("field \"") + field + "\" must be non-empty");
    return value;
}

std::string optional_string(const json& j, const char* field,
                            const std::string& path, std::size_t line) {
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) return {};
    if (!it->is_string()) fail(path, line, std::string("field \"") + field + "\" must be a string");
    return it->get<std::string>();
}

template <typename Fn>
void for_each_record(const std::string& path, Fn fn) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            fail(path, lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) fail(path, lineno, "record must be a JSON object");
        fn(j, lineno);
    }
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::optional<DayIndex> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    std::string_view ys = text.substr(0, 4), ms = text.substr(5, 2), ds = text.substr(8, 2);
    if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds)) return std::nullopt;
    int y = 0, m = 0, d = 0;
    std::from_chars(ys.data(), ys.data() + ys.size(), y);
    std::from_chars(ms.data(), ms.data() + ms.size(), m);
    std::from_chars(ds.data(), ds.data() + ds.size(), d);
    const std::chrono::year_month_day ymd{std::chrono::year{y},
                                          std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    const std::chrono::sys_days days{ymd};
    return static_cast<DayIndex>(days.time_since_epoch().count());
}

CorpusIndex CorpusIndex::from_records(std::vector<DocumentRecord> docs,
                                      std::vector<EntityRecord> entities,
                                      std::vector<FactRecord> facts) {
    CorpusIndex index;

    std::sort(docs.begin(), docs.end(),
              [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
    std::sort(entities.begin(), entities.end(),
              [](const auto& a, const auto& b) { return a.entity_id < b.entity_id; });

    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (!index.doc_by_id_.emplace(docs[i].doc_id, i).second)
            throw Error("duplicate doc_id \"" + docs[i].doc_id + "\"");
    }
    for (std::size_t i = 0; i < entities.size(); ++i) {
        if (entities[i].category.empty()) entities[i].category = "UNKNOWN";
        if (!index.entity_by_id_.emplace(entities[i].entity_id, i).second)
            throw Error("duplicate entity_id \"" + entities[i].entity_id + "\"");
    }

    std::unordered_map<std::string, bool> seen_fact_ids;
    std::map<std::string, FactTable> tables;
    for (const auto& fact : facts) {
        if (!seen_fact_ids.emplace(fact.fact_id, true).second)
            throw Error("duplicate fact_id \"" + fact.fact_id + "\"");
        if (!index.entity_by_id_.contains(fact.entity_id))
            throw Error("dangling entity reference \"" + fact.entity_id +
                        "\" in fact \"" + fact.fact_id + "\"");
        if (!index.doc_by_id_.contains(fact.doc_id))
            throw Error("dangling doc reference \"" + fact.doc_id +
                        "\" in fact \"" + fact.fact_id + "\"");
        if (fact.confidence && (*fact.confidence < 0.0 || *fact.confidence > 1.0))
            throw Error("confidence out of [0,1] in fact \"" + fact.fact_id + "\"");
        auto& table = tables[fact.entity_id];
        table.entity_id = fact.entity_id;
        table.counts[fact.doc_id] += 1;
        table.total_facts += 1;
    }

    index.docs_ = std::move(docs);
    index.entities_ = std::move(entities);
    index.fact_records_ = facts.size();
    index.tables_.reserve(tables.size());
    for (auto& [id, table] : tables) {
        index.table_by_id_.emplace(id, index.tables_.size());
        index.tables_.push_back(std::move(table));
    }
    return index;
}

const DocumentRecord* CorpusIndex::find_document(const std::string& doc_id) const {
    auto it = doc_by_id_.find(doc_id);
    return it == doc_by_id_.end() ? nullptr : &docs_[it->second];
}

const EntityRecord* CorpusIndex::find_entity(const std::string& entity_id) const {
    auto it = entity_by_id_.find(entity_id);
    return it == entity_by_id_.end() ? nullptr : &entities_[it->second];
}

const FactTable* CorpusIndex::find_table(const std::string& entity_id) const {
    auto it = table_by_id_.find(entity_id);
    return it == table_by_id_.end() ? nullptr : &tables_[it->second];
}

std::optional<DayIndex> CorpusIndex::document_day(const std::string& doc_id) const {
    const auto* doc = find_document(doc_id);
    return doc ? doc->created_day : std::nullopt;
}

CorpusIndex load_corpus(const std::string& docs_path,
                        const std::string& entities_path,
                        const std::string& facts_path) {
    std::vector<DocumentRecord> docs;
    for_each_record(docs_path, [&](const json& j, std::size_t line) {
        DocumentRecord doc;
        doc.doc_id = require_string(j, "doc_id", docs_path, line);
        doc.created_day = parse_date(require_string(j, "created_at", docs_path, line));
        doc.source = optional_string(j, "source", docs_path, line);
        docs.push_back(std::move(doc));
    });

    std::vector<EntityRecord> entities;
    for_each_record(entities_path, [&](const json& j, std::size_t line) {
        EntityRecord entity;
        entity.entity_id = require_string(j, "entity_id", entities_path, line);
        entity.name = require_string(j, "name", entities_path, line);
        entity.category = optional_string(j, "category", entities_path, line);
        entities.push_back(std::move(entity));
    });

    std::vector<FactRecord> facts;
    for_each_record(facts_path, [&](const json& j, std::size_t line) {
        FactRecord fact;
        fact.fact_id = require_string(j, "fact_id", facts_path, line);
        fact.entity_id = require_string(j, "entity_id", facts_path, line);
        fact.doc_id = require_string(j, "doc_id", facts_path, line);
        if (auto it = j.find("confidence"); it != j.end() && !it->is_null()) {
            if (!it->is_number())
                fail(facts_path, line, "field \"confidence\" must be a number");
            fact.confidence = it->get<double>();
            if (*fact.confidence < 0.0 || *fact.confidence > 1.0)
                fail(facts_path, line, "field \"confidence\" out of [0,1]");
        }
        fact.text = optional_string(j, "text", facts_path, line);
        facts.push_back(std::move(fact));
    });

    return CorpusIndex::from_records(std::move(docs), std::move(entities), std::move(facts));
}

CorpusIndex filter_entities(const CorpusIndex& index,
                            std::int64_t min_facts,
                            std::int64_t min_docs) {
    if (min_facts < 1 || min_docs < 1)
        throw Error("filter_entities thresholds must be >= 1");

    CorpusIndex out;
    out.docs_ = index.docs_;
    out.entities_ = index.entities_;
    out.doc_by_id_ = index.doc_by_id_;
    out.entity_by_id_ = index.entity_by_id_;
    out.fact_records_ = index.fact_records_;
    for (const auto& table : index.tables_) {
        if (table.total_facts >= min_facts &&
            static_cast<std::int64_t>(table.counts.size()) >= min_docs) {
            out.table_by_id_.emplace(table.entity_id, out.tables_.size());
            out.tables_.push_back(table);
        }
    }
    return out;
}

}  // namespace entroscope

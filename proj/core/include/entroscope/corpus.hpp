#pragma once
// Corpus records and the immutable cross-referenced index.
//
// Input is three line-delimited JSON files (documents, entities, facts).
// Everything is canonicalized by id after loading, so identical inputs
// produce identical indexes regardless of record order. The index never
// mutates after construction and is safe for concurrent readers.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace entroscope {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Day index: days since 1970-01-01 (UTC, day granularity).
using DayIndex = std::int32_t;

// Parses strict "YYYY-MM-DD". Returns nullopt for anything else, including
// syntactically valid but non-existent dates (2024-02-30).
std::optional<DayIndex> parse_date(std::string_view text);

struct DocumentRecord {
    std::string doc_id;
    // nullopt when created_at does not parse as a calendar date; such
    // documents load fine but make temporal analysis unavailable for any
    // entity that references them.
    std::optional<DayIndex> created_day;
    std::string source;
};

struct EntityRecord {
    std::string entity_id;
    std::string name;
    std::string category;  // "UNKNOWN" when absent in the input
};

struct FactRecord {
    std::string fact_id;
    std::string entity_id;
    std::string doc_id;
    std::optional<double> confidence;  // stored passively, unused by all measures
    std::string text;
};

// Per-entity fact counts: doc_id -> f_E(d). Zero-count documents are never
// stored; multiple fact records for the same (entity, doc) pair accumulate.
struct FactTable {
    std::string entity_id;
    std::map<std::string, std::int64_t> counts;
    std::int64_t total_facts = 0;

    std::size_t doc_count() const { return counts.size(); }
};

class CorpusIndex {
public:
    CorpusIndex() = default;

    // Validates cross references and builds the canonical index.
    // Throws Error on duplicate ids, dangling references or confidence
    // outside [0,1].
    static CorpusIndex from_records(std::vector<DocumentRecord> docs,
                                    std::vector<EntityRecord> entities,
                                    std::vector<FactRecord> facts);

    const std::vector<DocumentRecord>& documents() const { return docs_; }
    const std::vector<EntityRecord>& entities() const { return entities_; }

    // Entities admitted to analysis (total facts >= 1), ordered by entity_id.
    const std::vector<FactTable>& fact_tables() const { return tables_; }

    std::size_t doc_count() const { return docs_.size(); }  // corpus size N
    std::size_t fact_record_count() const { return fact_records_; }

    const DocumentRecord* find_document(const std::string& doc_id) const;
    const EntityRecord* find_entity(const std::string& entity_id) const;
    const FactTable* find_table(const std::string& entity_id) const;

    std::optional<DayIndex> document_day(const std::string& doc_id) const;

    friend CorpusIndex filter_entities(const CorpusIndex&, std::int64_t, std::int64_t);

private:
    std::vector<DocumentRecord> docs_;     // sorted by doc_id
    std::vector<EntityRecord> entities_;   // sorted by entity_id
    std::vector<FactTable> tables_;        // sorted by entity_id
    std::unordered_map<std::string, std::size_t> doc_by_id_;
    std::unordered_map<std::string, std::size_t> entity_by_id_;
    std::unordered_map<std::string, std::size_t> table_by_id_;
    std::size_t fact_records_ = 0;
};

// Loads the three JSONL files and cross-references them. Malformed lines
// report file, line number and offending field.
CorpusIndex load_corpus(const std::string& docs_path,
                        const std::string& entities_path,
                        const std::string& facts_path);

// Retains only entities with total facts >= min_facts and distinct documents
// >= min_docs. Document and entity records are kept; only the admitted set
// shrinks. Idempotent for fixed thresholds. Both thresholds must be >= 1.
CorpusIndex filter_entities(const CorpusIndex& index,
                            std::int64_t min_facts,
                            std::int64_t min_docs);

}  // namespace entroscope

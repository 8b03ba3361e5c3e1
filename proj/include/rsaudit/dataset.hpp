#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rsaudit {

/// Binary decision attached to each record. `positive` plays the melanoma role.
enum class Label : std::uint8_t { negative = 0, positive = 1 };

[[nodiscard]] constexpr int to_int(Label l) noexcept { return static_cast<int>(l); }

enum class Split : std::uint8_t { train, valid, test };

inline constexpr Split all_splits[] = {Split::train, Split::valid, Split::test};

[[nodiscard]] std::string_view to_string(Split s) noexcept;

/// Case-insensitive, whitespace-trimmed match against train/valid/test.
[[nodiscard]] std::optional<Split> parse_split(std::string_view text);

using ValueIndex = std::uint32_t;

/// A categorical concept attribute and its value domain.
struct Attribute {
    std::string name;
    std::vector<std::string> values;
    /// Category treated as "absent"; values other than this one count as active in profile reports.
    std::optional<std::string> default_value;

    [[nodiscard]] std::optional<ValueIndex> index_of(std::string_view value) const;
    [[nodiscard]] bool is_active(ValueIndex v) const;

    friend bool operator==(const Attribute &, const Attribute &) = default;
};

struct ConceptSchema {
    std::vector<Attribute> attributes;
    std::string id_column = "id";
    std::string label_column = "label";
    std::optional<std::string> split_column;

    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
    [[nodiscard]] const Attribute &attribute(std::string_view name) const;  // throws ContractError
    [[nodiscard]] std::size_t size() const noexcept { return attributes.size(); }

    friend bool operator==(const ConceptSchema &, const ConceptSchema &) = default;
};

struct Record {
    std::string id;
    std::vector<ValueIndex> concepts;  ///< one index per schema attribute, schema order
    Label label = Label::negative;
    std::optional<Split> split;

    // Source row, kept so filtered output can reproduce the input layout verbatim.
    std::string raw_label;
    std::vector<std::string> source_fields;
    std::size_t source_line = 0;

    friend bool operator==(const Record &a, const Record &b) {
        return a.id == b.id && a.concepts == b.concepts && a.label == b.label && a.split == b.split;
    }
};

/// Immutable information system: a schema plus the universe of records.
class Dataset {
  public:
    Dataset() = default;
    Dataset(ConceptSchema schema, std::vector<Record> records, std::vector<std::string> source_header = {});

    [[nodiscard]] const ConceptSchema &schema() const noexcept { return schema_; }
    [[nodiscard]] std::span<const Record> records() const noexcept { return records_; }
    [[nodiscard]] const Record &operator[](std::size_t i) const { return records_[i]; }
    [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
    [[nodiscard]] bool empty() const noexcept { return records_.empty(); }
    [[nodiscard]] const std::vector<std::string> &source_header() const noexcept { return source_header_; }

    [[nodiscard]] std::size_t count(Label l) const noexcept;
    /// True when at least one record carries a split tag.
    [[nodiscard]] bool has_splits() const noexcept;

    /// Records at `indices` (in the given order), same schema and source header.
    [[nodiscard]] Dataset subset(std::span<const std::size_t> indices) const;
    /// Records tagged with `split`, original order.
    [[nodiscard]] Dataset split(Split s) const;

    friend bool operator==(const Dataset &a, const Dataset &b) { return a.schema_ == b.schema_ && a.records_ == b.records_; }

  private:
    ConceptSchema schema_;
    std::vector<Record> records_;
    std::vector<std::string> source_header_;
};

/// Throws ContractError unless the dataset has at least one record.
void require_nonempty(const Dataset &d, std::string_view operation);

// ---------------------------------------------------------------------------
// Ingestion

/// One label rule: `pattern` is a shell glob (`*`, `?`, `[...]`) matched against the raw label.
struct LabelRule {
    std::string pattern;
    Label label = Label::negative;
};

/// Ordered first-match-wins rules plus an optional fallback; no fallback means unmatched labels are rejected.
struct LabelMap {
    std::vector<LabelRule> rules;
    std::optional<Label> fallback;

    /// `1`/`0` map to themselves, anything beginning with "melanoma" maps to positive, the rest to negative.
    [[nodiscard]] static LabelMap melanoma_default();

    [[nodiscard]] std::optional<Label> map(std::string_view raw) const;
};

struct IngestConfig {
    std::string id_column = "id";
    std::string label_column = "label";
    std::optional<std::string> split_column;
    bool detect_split_column = true;  ///< use a column named "split" when split_column is unset

    std::optional<std::vector<std::string>> concept_columns;  ///< nullopt: every remaining column
    std::vector<std::string> ignore_columns;

    LabelMap label_map = LabelMap::melanoma_default();
    std::map<std::string, std::vector<std::string>> domains;  ///< explicit value domains
    std::map<std::string, std::string> empty_as;              ///< per-attribute category for empty cells
    std::map<std::string, std::string> default_values;        ///< per-attribute inactive category
    std::map<Split, std::filesystem::path> split_index_files;  ///< alternative to a split column
    char delimiter = ',';
};

/// Parses a JSON ingestion config. Relative split index paths resolve against `base_dir`.
[[nodiscard]] IngestConfig parse_config(std::string_view json_text, const std::filesystem::path &base_dir = {});
[[nodiscard]] IngestConfig load_config(const std::filesystem::path &path);

[[nodiscard]] Dataset parse_dataset(std::istream &source, const IngestConfig &config = {});
[[nodiscard]] Dataset load_dataset(const std::filesystem::path &path, const IngestConfig &config = {});

/// Writes the dataset as delimited text. When the dataset carries its source layout the original
/// columns are reproduced row for row; otherwise a canonical id/concepts/label/split layout is used.
void write_dataset(const Dataset &dataset, std::ostream &out, char delimiter = ',');

// ---------------------------------------------------------------------------
// Validation

struct Finding {
    enum class Kind { duplicate_id, out_of_domain, arity, empty_domain, bad_split, schema };
    Kind kind;
    std::string message;
    std::size_t row = 0;  ///< 1-based record position (0 when not row-specific)
};

[[nodiscard]] std::string_view to_string(Finding::Kind k) noexcept;

/// Lists every invariant violation; an empty result means the dataset is well-formed.
[[nodiscard]] std::vector<Finding> validate(const Dataset &dataset);

/// Dense text form of a signature, values joined with '|'.
[[nodiscard]] std::string signature_text(const ConceptSchema &schema, std::span<const ValueIndex> signature);

}  // namespace rsaudit

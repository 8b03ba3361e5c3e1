#include "rsaudit/dataset.hpp"

#include "rsaudit/csv.hpp"
#include "rsaudit/error.hpp"

#include <json.hpp>

#include <fnmatch.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace rsaudit {

using nlohmann::json;

namespace {

std::string lowercase_trimmed(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string squote(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

std::string_view to_string(Split s) noexcept {
    switch (s) {
        case Split::train: return "train";
        case Split::valid: return "valid";
        case Split::test: return "test";
    }
    return "?";
}

std::optional<Split> parse_split(std::string_view text) {
    const std::string t = lowercase_trimmed(text);
    for (const Split s : all_splits) {
        if (t == to_string(s)) {
            return s;
        }
    }
    return std::nullopt;
}

std::optional<ValueIndex> Attribute::index_of(std::string_view value) const {
    const auto it = std::find(values.begin(), values.end(), value);
    if (it == values.end()) {
        return std::nullopt;
    }
    return static_cast<ValueIndex>(it - values.begin());
}

bool Attribute::is_active(ValueIndex v) const {
    return !default_value || v >= values.size() || values[v] != *default_value;
}

std::optional<std::size_t> ConceptSchema::find(std::string_view name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        if (attributes[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

const Attribute &ConceptSchema::attribute(std::string_view name) const {
    const auto i = find(name);
    if (!i) {
        throw ContractError("unknown concept attribute " + squote(name));
    }
    return attributes[*i];
}

Dataset::Dataset(ConceptSchema schema, std::vector<Record> records, std::vector<std::string> source_header)
    : schema_(std::move(schema)), records_(std::move(records)), source_header_(std::move(source_header)) {}

std::size_t Dataset::count(Label l) const noexcept {
    return static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(), [l](const Record &r) { return r.label == l; }));
}

bool Dataset::has_splits() const noexcept {
    return std::any_of(records_.begin(), records_.end(), [](const Record &r) { return r.split.has_value(); });
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    std::vector<Record> picked;
    picked.reserve(indices.size());
    for (const std::size_t i : indices) {
        picked.push_back(records_.at(i));
    }
    return Dataset(schema_, std::move(picked), source_header_);
}

Dataset Dataset::split(Split s) const {
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (records_[i].split == s) {
            indices.push_back(i);
        }
    }
    return subset(indices);
}

void require_nonempty(const Dataset &d, std::string_view operation) {
    if (d.empty()) {
        throw ContractError(std::string(operation) + " requires at least one record");
    }
}

// ---------------------------------------------------------------------------

LabelMap LabelMap::melanoma_default() {
    return LabelMap{{{"1", Label::positive}, {"0", Label::negative}, {"melanoma*", Label::positive}}, Label::negative};
}

std::optional<Label> LabelMap::map(std::string_view raw) const {
    const std::string s(raw);
    for (const auto &rule : rules) {
        if (::fnmatch(rule.pattern.c_str(), s.c_str(), 0) == 0) {
            return rule.label;
        }
    }
    return fallback;
}

namespace {

Label label_from_json(const json &j, std::string_view where) {
    if (j.is_number_integer()) {
        const auto v = j.get<long long>();
        if (v == 0 || v == 1) {
            return v == 1 ? Label::positive : Label::negative;
        }
    }
    throw SchemaError("config: " + std::string(where) + " must be 0 or 1");
}

std::vector<std::string> string_list(const json &j, std::string_view key) {
    if (!j.is_array()) {
        throw SchemaError("config: " + std::string(key) + " must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto &e : j) {
        if (!e.is_string()) {
            throw SchemaError("config: " + std::string(key) + " must be an array of strings");
        }
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::string string_value(const json &j, std::string_view key) {
    if (!j.is_string()) {
        throw SchemaError("config: " + std::string(key) + " must be a string");
    }
    return j.get<std::string>();
}

}  // namespace

IngestConfig parse_config(std::string_view json_text, const std::filesystem::path &base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw SchemaError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw SchemaError("config must be a JSON object");
    }
    IngestConfig cfg;
    for (const auto &[key, value] : root.items()) {
        if (key.empty() || key.front() == '_') {
            continue;  // comments
        }
        if (key == "id_column") {
            cfg.id_column = string_value(value, key);
        } else if (key == "label_column") {
            cfg.label_column = string_value(value, key);
        } else if (key == "split_column") {
            if (value.is_null()) {
                cfg.detect_split_column = false;
            } else {
                cfg.split_column = string_value(value, key);
            }
        } else if (key == "concept_columns") {
            cfg.concept_columns = string_list(value, key);
        } else if (key == "ignore_columns") {
            cfg.ignore_columns = string_list(value, key);
        } else if (key == "delimiter") {
            const auto d = string_value(value, key);
            if (d.size() != 1) {
                throw SchemaError("config: delimiter must be a single character");
            }
            cfg.delimiter = d.front();
        } else if (key == "label_map") {
            LabelMap map;
            if (!value.is_object()) {
                throw SchemaError("config: label_map must be an object");
            }
            if (value.contains("rules")) {
                for (const auto &rule : value.at("rules")) {
                    if (!rule.is_object() || !rule.contains("pattern") || !rule.contains("label")) {
                        throw SchemaError("config: each label_map rule needs 'pattern' and 'label'");
                    }
                    map.rules.push_back({string_value(rule.at("pattern"), "label_map.rules[].pattern"),
                                         label_from_json(rule.at("label"), "label_map.rules[].label")});
                }
            }
            if (value.contains("default")) {
                const auto &d = value.at("default");
                if (!(d.is_null() || (d.is_string() && d.get<std::string>() == "reject"))) {
                    map.fallback = label_from_json(d, "label_map.default");
                }
            }
            cfg.label_map = std::move(map);
        } else if (key == "attributes") {
            if (!value.is_object()) {
                throw SchemaError("config: attributes must be an object keyed by attribute name");
            }
            for (const auto &[name, spec] : value.items()) {
                if (!spec.is_object()) {
                    throw SchemaError("config: attributes." + name + " must be an object");
                }
                for (const auto &[field, v] : spec.items()) {
                    if (field == "values") {
                        cfg.domains[name] = string_list(v, "attributes." + name + ".values");
                    } else if (field == "default") {
                        cfg.default_values[name] = string_value(v, "attributes." + name + ".default");
                    } else if (field == "empty_as") {
                        cfg.empty_as[name] = string_value(v, "attributes." + name + ".empty_as");
                    } else {
                        throw SchemaError("config: unknown key attributes." + name + "." + field);
                    }
                }
            }
        } else if (key == "split_index_files") {
            if (!value.is_object()) {
                throw SchemaError("config: split_index_files must be an object");
            }
            for (const auto &[split_name, path] : value.items()) {
                const auto s = parse_split(split_name);
                if (!s) {
                    throw SchemaError("config: unknown split " + squote(split_name) + " in split_index_files");
                }
                std::filesystem::path p = string_value(path, "split_index_files." + split_name);
                cfg.split_index_files[*s] = p.is_absolute() ? p : base_dir / p;
            }
        } else {
            throw SchemaError("config: unknown key " + squote(key));
        }
    }
    return cfg;
}

IngestConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str(), path.parent_path());
    } catch (const SchemaError &e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------

namespace {

std::size_t column_index(const std::vector<std::string> &header, std::string_view name, std::string_view role) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw SchemaError("missing " + std::string(role) + " column " + squote(name));
    }
    return static_cast<std::size_t>(it - header.begin());
}

std::map<std::size_t, Split> read_split_indices(const IngestConfig &config, std::size_t row_count) {
    std::map<std::size_t, Split> assignment;
    for (const auto &[split, path] : config.split_index_files) {
        std::ifstream in(path);
        if (!in) {
            throw IoError("cannot open split index file " + path.string());
        }
        const auto table = csv::read(in, config.delimiter);
        for (const auto &row : table.rows) {
            std::size_t index = 0;
            const auto &text = row.fields.front();
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
            if (ec != std::errc{} || ptr != text.data() + text.size()) {
                throw ParseError(path.string() + ": row index " + squote(text) + " is not a non-negative integer", row.line);
            }
            if (index >= row_count) {
                throw SchemaError(path.string() + ": row index " + text + " out of range (" + std::to_string(row_count) + " rows)");
            }
            if (!assignment.emplace(index, split).second) {
                throw SchemaError(path.string() + ": row index " + text + " assigned to more than one split");
            }
        }
    }
    return assignment;
}

}  // namespace

Dataset parse_dataset(std::istream &source, const IngestConfig &config) {
    const csv::Table table = csv::read(source, config.delimiter);
    const auto &header = table.header;

    {
        std::set<std::string> seen;
        for (const auto &h : header) {
            if (!seen.insert(h).second) {
                throw SchemaError("duplicate column " + squote(h) + " in header");
            }
        }
    }

    ConceptSchema schema;
    schema.id_column = config.id_column;
    schema.label_column = config.label_column;
    const std::size_t id_col = column_index(header, config.id_column, "id");
    const std::size_t label_col = column_index(header, config.label_column, "label");
    std::optional<std::size_t> split_col;
    if (config.split_column) {
        split_col = column_index(header, *config.split_column, "split");
        schema.split_column = config.split_column;
    } else if (config.detect_split_column && config.split_index_files.empty()) {
        if (const auto it = std::find(header.begin(), header.end(), "split"); it != header.end()) {
            split_col = static_cast<std::size_t>(it - header.begin());
            schema.split_column = "split";
        }
    }
    if (split_col && !config.split_index_files.empty()) {
        throw SchemaError("config names both a split column and split index files");
    }

    std::vector<std::size_t> concept_cols;
    if (config.concept_columns) {
        for (const auto &name : *config.concept_columns) {
            concept_cols.push_back(column_index(header, name, "concept"));
        }
    } else {
        for (std::size_t i = 0; i < header.size(); ++i) {
            const bool reserved = i == id_col || i == label_col || (split_col && i == *split_col) ||
                                  std::find(config.ignore_columns.begin(), config.ignore_columns.end(), header[i]) !=
                                      config.ignore_columns.end();
            if (!reserved) {
                concept_cols.push_back(i);
            }
        }
    }
    if (concept_cols.empty()) {
        throw SchemaError("no concept columns");
    }
    for (const std::size_t c : concept_cols) {
        if (c == id_col || c == label_col || (split_col && c == *split_col)) {
            throw SchemaError("column " + squote(header[c]) + " cannot be both a concept and a role column");
        }
    }

    auto check_known = [&](const auto &keyed, std::string_view what) {
        for (const auto &[name, unused] : keyed) {
            const bool known = std::any_of(concept_cols.begin(), concept_cols.end(), [&](std::size_t c) { return header[c] == name; });
            if (!known) {
                throw SchemaError(std::string(what) + " given for unknown concept attribute " + squote(name));
            }
        }
    };
    check_known(config.domains, "value domain");
    check_known(config.empty_as, "empty_as");
    check_known(config.default_values, "default value");

    auto cell = [&](const csv::Row &row, std::size_t col) -> std::string {
        const std::string &v = row.fields[col];
        if (!v.empty()) {
            return v;
        }
        if (const auto it = config.empty_as.find(header[col]); it != config.empty_as.end()) {
            return it->second;
        }
        throw SchemaError("line " + std::to_string(row.line) + ", column " + squote(header[col]) + ": empty concept value");
    };

    for (const std::size_t c : concept_cols) {
        Attribute attr;
        attr.name = header[c];
        if (const auto it = config.domains.find(attr.name); it != config.domains.end()) {
            attr.values = it->second;
            std::set<std::string> unique(attr.values.begin(), attr.values.end());
            if (unique.size() != attr.values.size() || attr.values.empty()) {
                throw SchemaError("value domain of " + squote(attr.name) + " must be non-empty with distinct values");
            }
        } else {
            std::set<std::string> observed;
            for (const auto &row : table.rows) {
                observed.insert(cell(row, c));
            }
            attr.values.assign(observed.begin(), observed.end());
        }
        if (const auto it = config.default_values.find(attr.name); it != config.default_values.end()) {
            attr.default_value = it->second;
        }
        schema.attributes.push_back(std::move(attr));
    }

    const auto split_assignment = read_split_indices(config, table.rows.size());

    std::vector<Record> records;
    records.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto &row = table.rows[r];
        Record rec;
        rec.id = row.fields[id_col];
        if (rec.id.empty()) {
            throw SchemaError("line " + std::to_string(row.line) + ", column " + squote(header[id_col]) + ": empty id");
        }
        rec.raw_label = row.fields[label_col];
        const auto label = config.label_map.map(rec.raw_label);
        if (!label) {
            throw LabelMapError("line " + std::to_string(row.line) + ", column " + squote(header[label_col]) + ": label " +
                                squote(rec.raw_label) + " matches no label-map rule");
        }
        rec.label = *label;
        rec.concepts.reserve(concept_cols.size());
        for (std::size_t a = 0; a < concept_cols.size(); ++a) {
            const auto value = cell(row, concept_cols[a]);
            const auto index = schema.attributes[a].index_of(value);
            if (!index) {
                throw SchemaError("line " + std::to_string(row.line) + ", column " + squote(header[concept_cols[a]]) + ": value " +
                                  squote(value) + " is outside the declared domain");
            }
            rec.concepts.push_back(*index);
        }
        if (split_col) {
            rec.split = parse_split(row.fields[*split_col]);
            if (!rec.split) {
                throw SchemaError("line " + std::to_string(row.line) + ", column " + squote(header[*split_col]) + ": unknown split tag " +
                                  squote(row.fields[*split_col]));
            }
        } else if (const auto it = split_assignment.find(r); it != split_assignment.end()) {
            rec.split = it->second;
        }
        rec.source_fields = row.fields;
        rec.source_line = row.line;
        records.push_back(std::move(rec));
    }
    return Dataset(std::move(schema), std::move(records), header);
}

Dataset load_dataset(const std::filesystem::path &path, const IngestConfig &config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open input " + path.string());
    }
    try {
        return parse_dataset(in, config);
    } catch (const ParseError &e) {
        throw ParseError(path.string() + ": " + e.what(), e.line());
    } catch (const LabelMapError &e) {
        throw LabelMapError(path.string() + ": " + e.what());
    } catch (const SchemaError &e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_dataset(const Dataset &dataset, std::ostream &out, char delimiter) {
    const auto &schema = dataset.schema();
    const bool verbatim = !dataset.source_header().empty() &&
                          std::all_of(dataset.records().begin(), dataset.records().end(),
                                      [&](const Record &r) { return r.source_fields.size() == dataset.source_header().size(); });
    if (verbatim) {
        csv::write_row(out, dataset.source_header(), delimiter);
        for (const auto &r : dataset.records()) {
            csv::write_row(out, r.source_fields, delimiter);
        }
        return;
    }
    const bool splits = dataset.has_splits();
    std::vector<std::string> row{schema.id_column};
    for (const auto &a : schema.attributes) {
        row.push_back(a.name);
    }
    row.push_back(schema.label_column);
    if (splits) {
        row.push_back(schema.split_column.value_or("split"));
    }
    csv::write_row(out, row, delimiter);
    for (const auto &r : dataset.records()) {
        row.clear();
        row.push_back(r.id);
        for (std::size_t a = 0; a < r.concepts.size(); ++a) {
            row.push_back(schema.attributes[a].values.at(r.concepts[a]));
        }
        row.push_back(r.raw_label.empty() ? std::to_string(to_int(r.label)) : r.raw_label);
        if (splits) {
            row.emplace_back(r.split ? to_string(*r.split) : "");
        }
        csv::write_row(out, row, delimiter);
    }
}

// ---------------------------------------------------------------------------

std::string_view to_string(Finding::Kind k) noexcept {
    switch (k) {
        case Finding::Kind::duplicate_id: return "duplicate-id";
        case Finding::Kind::out_of_domain: return "out-of-domain";
        case Finding::Kind::arity: return "arity";
        case Finding::Kind::empty_domain: return "empty-domain";
        case Finding::Kind::bad_split: return "bad-split";
        case Finding::Kind::schema: return "schema";
    }
    return "?";
}

std::vector<Finding> validate(const Dataset &dataset) {
    std::vector<Finding> findings;
    const auto &schema = dataset.schema();

    std::unordered_set<std::string> names;
    for (const auto &a : schema.attributes) {
        if (a.name.empty()) {
            findings.push_back({Finding::Kind::schema, "attribute with empty name", 0});
        } else if (!names.insert(a.name).second) {
            findings.push_back({Finding::Kind::schema, "duplicate attribute " + squote(a.name), 0});
        }
        if (a.values.empty()) {
            findings.push_back({Finding::Kind::empty_domain, "attribute " + squote(a.name) + " has an empty value domain", 0});
        }
    }

    std::unordered_map<std::string, std::size_t> first_row;
    const bool any_split = dataset.has_splits();
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const Record &r = dataset[i];
        const std::size_t row = i + 1;
        if (const auto [it, inserted] = first_row.emplace(r.id, row); !inserted) {
            findings.push_back({Finding::Kind::duplicate_id, "id " + squote(r.id) + " repeats row " + std::to_string(it->second), row});
        }
        if (r.concepts.size() != schema.size()) {
            findings.push_back({Finding::Kind::arity,
                                "record " + squote(r.id) + " has " + std::to_string(r.concepts.size()) + " concept values, schema has " +
                                    std::to_string(schema.size()),
                                row});
            continue;
        }
        for (std::size_t a = 0; a < schema.size(); ++a) {
            const auto &attr = schema.attributes[a];
            if (r.concepts[a] < attr.values.size()) {
                continue;
            }
            std::string value = "#" + std::to_string(r.concepts[a]);
            if (r.source_fields.size() == dataset.source_header().size()) {
                const auto &h = dataset.source_header();
                if (const auto it = std::find(h.begin(), h.end(), attr.name); it != h.end()) {
                    value = r.source_fields[static_cast<std::size_t>(it - h.begin())];
                }
            }
            findings.push_back({Finding::Kind::out_of_domain,
                                "row " + std::to_string(row) + ", attribute " + squote(attr.name) + ": value " + squote(value) +
                                    " is not in the domain",
                                row});
        }
        if (to_int(r.label) > 1) {
            findings.push_back({Finding::Kind::schema, "record " + squote(r.id) + " has a non-binary label", row});
        }
        if (any_split && !r.split) {
            findings.push_back({Finding::Kind::bad_split, "record " + squote(r.id) + " has no split tag while others do", row});
        }
    }
    return findings;
}

std::string signature_text(const ConceptSchema &schema, std::span<const ValueIndex> signature) {
    std::string out;
    for (std::size_t a = 0; a < signature.size(); ++a) {
        if (a != 0) {
            out += '|';
        }
        const auto &values = schema.attributes.at(a).values;
        out += signature[a] < values.size() ? values[signature[a]] : "#" + std::to_string(signature[a]);
    }
    return out;
}

}  // namespace rsaudit

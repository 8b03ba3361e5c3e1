#include "rsaudit/filtering.hpp"

#include "rsaudit/csv.hpp"
#include "rsaudit/error.hpp"
#include "rsaudit/io.hpp"
#include "rsaudit/json_io.hpp"

#include <json.hpp>

#include <sstream>
#include <unordered_map>

namespace rsaudit {

using nlohmann::ordered_json;

std::string_view to_string(Strategy s) noexcept {
    return s == Strategy::symmetric ? "symmetric" : "asymmetric";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
    if (text == "symmetric") {
        return Strategy::symmetric;
    }
    if (text == "asymmetric") {
        return Strategy::asymmetric;
    }
    return std::nullopt;
}

std::string_view to_string(Consistency c) noexcept {
    switch (c) {
        case Consistency::none: return "none";
        case Consistency::partial: return "partial";
        case Consistency::full: return "full";
    }
    return "?";
}

std::string imbalance_ratio(std::size_t label1, std::size_t label0) {
    if (label1 == 0) {
        return "1:inf";
    }
    return "1:" + to_decimal(Rational(static_cast<std::int64_t>(label0), static_cast<std::int64_t>(label1)), 1);
}

CompositionMetrics composition_metrics(const Dataset &variant, std::size_t source_size, std::size_t source_label1, bool filtered) {
    CompositionMetrics m;
    m.size = variant.size();
    m.label1_count = variant.count(Label::positive);
    m.label0_count = m.size - m.label1_count;
    m.imbalance_ratio = imbalance_ratio(m.label1_count, m.label0_count);
    if (variant.empty()) {
        // no records, no conflicting profile
        m.gamma = Rational(1);
        m.ceiling = Rational(1);
    } else {
        const Analysis a = analyze(variant);
        m.gamma = a.regions.gamma;
        m.ceiling = a.regions.ceiling.value;
    }
    const auto s = static_cast<std::int64_t>(source_size);
    m.size_change = s == 0 ? Rational(0) : Rational(static_cast<std::int64_t>(m.size) - s, s);
    m.label1_retained_fraction =
        source_label1 == 0 ? Rational(1) : Rational(static_cast<std::int64_t>(m.label1_count), static_cast<std::int64_t>(source_label1));
    m.all_label1_preserved = m.label1_count == source_label1;
    if (m.gamma == Rational(1)) {
        m.consistency = Consistency::full;
    } else {
        m.consistency = filtered ? Consistency::partial : Consistency::none;
    }
    return m;
}

namespace {

struct BoundaryIndex {
    // record position -> index into analysis.inconsistent
    std::unordered_map<std::size_t, std::size_t> profile_of;
};

BoundaryIndex index_boundary(const RegionAnalysis &analysis) {
    BoundaryIndex idx;
    for (std::size_t k = 0; k < analysis.inconsistent.size(); ++k) {
        for (const std::size_t m : analysis.inconsistent[k].profile.members) {
            idx.profile_of.emplace(m, k);
        }
    }
    return idx;
}

bool keeps(const RegionAnalysis &analysis, const Dataset &dataset, std::size_t row, Strategy strategy) {
    if (!analysis.in_boundary(row)) {
        return true;
    }
    return strategy == Strategy::asymmetric && dataset[row].label == Label::positive;
}

FilterResult filter_rows(const Dataset &dataset, const RegionAnalysis &analysis, Strategy strategy, std::span<const std::size_t> rows,
                         const BoundaryIndex &boundary) {
    FilterResult out;
    out.strategy = strategy;
    std::size_t source_label1 = 0;
    for (const std::size_t i : rows) {
        source_label1 += dataset[i].label == Label::positive ? 1 : 0;
        if (keeps(analysis, dataset, i, strategy)) {
            out.retained_rows.push_back(i);
            continue;
        }
        const auto &ip = analysis.inconsistent.at(boundary.profile_of.at(i));
        out.removed.push_back({i, dataset[i].id, signature_text(dataset.schema(), ip.profile.key), ip.profile.size(), ip.profile.count_label1,
                               ip.profile.count_label0, ip.conflict_ratio});
    }
    out.retained = dataset.subset(out.retained_rows);
    out.metrics = composition_metrics(out.retained, rows.size(), source_label1, true);
    return out;
}

void check_analysis(const Dataset &dataset, const RegionAnalysis &analysis) {
    if (analysis.universe_size != dataset.size() || analysis.boundary_mask.size() != dataset.size()) {
        throw ContractError("region analysis was not computed on this dataset");
    }
}

}  // namespace

FilterResult apply_filter(const Dataset &dataset, const RegionAnalysis &analysis, Strategy strategy) {
    check_analysis(dataset, analysis);
    std::vector<std::size_t> rows(dataset.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    return filter_rows(dataset, analysis, strategy, rows, index_boundary(analysis));
}

FilterResult filter_symmetric(const Dataset &dataset, const RegionAnalysis &analysis) {
    return apply_filter(dataset, analysis, Strategy::symmetric);
}

FilterResult filter_asymmetric(const Dataset &dataset, const RegionAnalysis &analysis) {
    return apply_filter(dataset, analysis, Strategy::asymmetric);
}

std::map<Split, FilterResult> filter_split_aware(const Dataset &dataset, Strategy strategy) {
    if (!dataset.has_splits()) {
        throw ContractError("split-aware filtering requires split tags");
    }
    const Analysis global = analyze(dataset);
    const BoundaryIndex boundary = index_boundary(global.regions);
    std::map<Split, FilterResult> out;
    for (const Split s : all_splits) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            if (dataset[i].split == s) {
                rows.push_back(i);
            }
        }
        if (rows.empty()) {
            continue;
        }
        FilterResult r = filter_rows(dataset, global.regions, strategy, rows, boundary);
        r.split = s;
        out.emplace(s, std::move(r));
    }
    return out;
}

ClassWeights class_weights(const Dataset &dataset, std::optional<double> zero_count_weight) {
    ClassWeights out;
    out.used_train_split = dataset.has_splits();
    const Dataset train = out.used_train_split ? dataset.split(Split::train) : dataset;
    if (train.empty()) {
        throw ContractError("class weights need a non-empty training split");
    }
    out.train_size = train.size();
    const auto total = static_cast<double>(train.size());
    const std::size_t n1 = train.count(Label::positive);
    const std::size_t n0 = train.size() - n1;
    if (n1 == 0 || n0 == 0) {
        throw ContractError(std::string("label ") + (n1 == 0 ? "1" : "0") + " is absent from the training data; label weights are undefined");
    }
    out.label0 = total / (2.0 * static_cast<double>(n0));
    out.label1 = total / (2.0 * static_cast<double>(n1));

    const double fallback = zero_count_weight.value_or(total);
    const auto &schema = train.schema();
    for (std::size_t a = 0; a < schema.size(); ++a) {
        const auto &attr = schema.attributes[a];
        ConceptWeights cw{attr.name, attr.values, std::vector<std::size_t>(attr.values.size(), 0), {}};
        for (const Record &r : train.records()) {
            cw.counts.at(r.concepts[a]) += 1;
        }
        const auto k = static_cast<double>(attr.values.size());
        for (std::size_t v = 0; v < attr.values.size(); ++v) {
            if (cw.counts[v] == 0) {
                cw.weights.push_back(fallback);
                out.warnings.push_back("value '" + attr.values[v] + "' of '" + attr.name + "' never occurs in training data; weight set to " +
                                       to_decimal(fallback, 3));
            } else {
                cw.weights.push_back(total / (k * static_cast<double>(cw.counts[v])));
            }
        }
        out.concepts.push_back(std::move(cw));
    }
    return out;
}

std::string removal_manifest(const FilterResult &result) {
    std::ostringstream out;
    csv::write_row(out, {"id", "profile_signature", "n_k", "count_label1", "count_label0", "gamma_k", "strategy"});
    for (const Removal &r : result.removed) {
        csv::write_row(out, {r.id, r.signature, std::to_string(r.n), std::to_string(r.count_label1), std::to_string(r.count_label0),
                             to_decimal(r.conflict_ratio, 4), std::string(to_string(result.strategy))});
    }
    return out.str();
}

ExportPaths export_dataset(const FilterResult &result, const std::filesystem::path &directory, std::string_view stem,
                           const CompositionMetrics &source_metrics) {
    ensure_directory(directory);
    ExportPaths paths{directory / (std::string(stem) + ".csv"), directory / (std::string(stem) + ".removed.csv"),
                      directory / (std::string(stem) + ".metrics.json")};

    std::ostringstream data;
    write_dataset(result.retained, data);
    write_file_atomic(paths.data, data.str());
    write_file_atomic(paths.manifest, removal_manifest(result));

    ordered_json sidecar;
    sidecar["schema_version"] = 1;
    sidecar["strategy"] = to_string(result.strategy);
    sidecar["split"] = result.split ? ordered_json(std::string(to_string(*result.split))) : ordered_json(nullptr);
    sidecar["removed"] = result.removed.size();
    sidecar["no_filter"] = composition_json(source_metrics);
    sidecar["filtered"] = composition_json(result.metrics);
    write_file_atomic(paths.metrics, sidecar.dump(2) + "\n");
    return paths;
}

}  // namespace rsaudit

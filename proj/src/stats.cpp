#include "rsaudit/stats.hpp"

#include "rsaudit/error.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rsaudit {

DistributionSummary conflict_distribution(const RegionAnalysis &analysis, double bin_width) {
    if (!(bin_width > 0.0) || bin_width > 0.5) {
        throw std::invalid_argument("conflict_distribution: bin width must be in (0, 0.5]");
    }
    DistributionSummary out;
    out.bin_width = bin_width;
    if (analysis.inconsistent.empty()) {
        return out;
    }
    constexpr double slack = 1e-9;
    const auto bins = static_cast<std::size_t>(std::ceil(0.5 / bin_width - slack));
    out.empty = false;
    out.count = analysis.inconsistent.size();
    out.histogram.assign(bins, 0);

    Rational sum;
    for (const auto &ip : analysis.inconsistent) {
        sum += ip.conflict_ratio;
        if (ip.conflict_ratio == Rational(1, 2)) {
            ++out.count_at_max;
        }
        const double x = to_double(ip.conflict_ratio) / bin_width;
        auto bin = static_cast<std::ptrdiff_t>(std::ceil(x - slack)) - 1;
        bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        out.histogram[static_cast<std::size_t>(bin)] += 1;
    }
    const Rational mean = sum / static_cast<std::int64_t>(out.count);
    out.mean = to_double(mean);
    if (out.count >= 2) {
        long double ss = 0.0L;
        for (const auto &ip : analysis.inconsistent) {
            const long double d = static_cast<long double>(to_double(ip.conflict_ratio - mean));
            ss += d * d;
        }
        out.sample_stddev = static_cast<double>(std::sqrt(ss / static_cast<long double>(out.count - 1)));
        out.stddev_defined = true;
    }
    return out;
}

double two_sided_z(double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::domain_error("confidence must lie strictly between 0 and 1");
    }
    const boost::math::normal standard;
    return boost::math::quantile(standard, 0.5 + confidence / 2.0);
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double confidence) {
    if (n == 0) {
        throw std::domain_error("wilson_interval: n must be at least 1");
    }
    if (successes > n) {
        throw std::domain_error("wilson_interval: successes exceed n");
    }
    const double z = two_sided_z(confidence);
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = (z / denom) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    // exact endpoints at 0 and n successes; rounding must never exclude p
    const double low = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, p);
    const double high = successes == n ? 1.0 : std::clamp(center + half, p, 1.0);
    return {low, high};
}

std::string_view to_string(RiskTier t) noexcept {
    switch (t) {
        case RiskTier::low: return "low";
        case RiskTier::moderate: return "moderate";
        case RiskTier::high: return "high";
    }
    return "?";
}

RiskTier risk_tier(std::size_t successes, std::size_t n) {
    // s/n > 2/5  <=>  5s > 2n
    if (5 * successes > 2 * n) {
        return RiskTier::high;
    }
    if (5 * successes > n) {
        return RiskTier::moderate;
    }
    return RiskTier::low;
}

namespace {

// counts[a][v] = {records carrying value v of attribute a, of which label 1}
std::vector<std::vector<std::array<std::size_t, 2>>> value_counts(const Dataset &dataset, std::span<const std::size_t> rows) {
    const auto &schema = dataset.schema();
    std::vector<std::vector<std::array<std::size_t, 2>>> counts(schema.size());
    for (std::size_t a = 0; a < schema.size(); ++a) {
        counts[a].assign(schema.attributes[a].values.size(), {0, 0});
    }
    for (const std::size_t i : rows) {
        const Record &r = dataset[i];
        for (std::size_t a = 0; a < schema.size(); ++a) {
            auto &c = counts[a].at(r.concepts[a]);
            c[0] += 1;
            c[1] += r.label == Label::positive ? 1 : 0;
        }
    }
    return counts;
}

std::vector<std::size_t> all_rows(const Dataset &dataset) {
    std::vector<std::size_t> rows(dataset.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return rows;
}

}  // namespace

PrevalenceTable prevalence_table(const Dataset &dataset, double confidence) {
    require_nonempty(dataset, "prevalence_table");
    PrevalenceTable out;
    out.confidence = confidence;
    out.n = dataset.size();
    out.successes = dataset.count(Label::positive);
    out.prevalence = static_cast<double>(out.successes) / static_cast<double>(out.n);

    const auto &schema = dataset.schema();
    const auto counts = value_counts(dataset, all_rows(dataset));
    for (std::size_t a = 0; a < schema.size(); ++a) {
        const auto &attr = schema.attributes[a];
        for (std::size_t v = 0; v < attr.values.size(); ++v) {
            const auto [n, s] = counts[a][v];
            if (n == 0) {
                continue;
            }
            const auto ci = wilson_interval(s, n, confidence);
            const double p = static_cast<double>(s) / static_cast<double>(n);
            out.entries.push_back({attr.name, attr.values[v], n, s, p, ci.low, ci.high, risk_tier(s, n)});
        }
    }
    return out;
}

std::vector<EnrichmentEntry> boundary_enrichment(const Dataset &dataset, const RegionAnalysis &analysis) {
    const auto &schema = dataset.schema();
    const auto in_bnd = value_counts(dataset, analysis.boundary);
    const auto in_pos = value_counts(dataset, analysis.positive);
    std::vector<EnrichmentEntry> out;
    for (std::size_t a = 0; a < schema.size(); ++a) {
        const auto &attr = schema.attributes[a];
        for (std::size_t v = 0; v < attr.values.size(); ++v) {
            EnrichmentEntry e{attr.name, attr.values[v], in_bnd[a][v][0], in_pos[a][v][0], std::nullopt, std::nullopt};
            if (!analysis.boundary.empty()) {
                e.boundary_fraction = static_cast<double>(e.boundary_count) / static_cast<double>(analysis.boundary.size());
            }
            if (!analysis.positive.empty()) {
                e.consistent_fraction = static_cast<double>(e.positive_count) / static_cast<double>(analysis.positive.size());
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

const JointCell &JointMatrix::at(std::string_view value_a, std::string_view value_b) const {
    const auto ia = std::find(values_a.begin(), values_a.end(), value_a);
    const auto ib = std::find(values_b.begin(), values_b.end(), value_b);
    if (ia == values_a.end() || ib == values_b.end()) {
        throw ContractError("joint matrix has no cell (" + std::string(value_a) + ", " + std::string(value_b) + ")");
    }
    return at(static_cast<std::size_t>(ia - values_a.begin()), static_cast<std::size_t>(ib - values_b.begin()));
}

JointMatrix joint_rate_matrix(const Dataset &dataset, const RegionAnalysis &analysis, std::string_view attr_a, std::string_view attr_b,
                              std::size_t min_n) {
    const auto &schema = dataset.schema();
    const auto ia = schema.find(attr_a);
    const auto ib = schema.find(attr_b);
    if (!ia || !ib) {
        throw ContractError("joint matrix: unknown concept attribute '" + std::string(!ia ? attr_a : attr_b) + "'");
    }
    JointMatrix m;
    m.attr_a = attr_a;
    m.attr_b = attr_b;
    m.values_a = schema.attributes[*ia].values;
    m.values_b = schema.attributes[*ib].values;
    m.min_n = min_n;
    m.cells.assign(m.values_a.size() * m.values_b.size(), JointCell{});
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const Record &r = dataset[i];
        JointCell &c = m.cells.at(r.concepts[*ia] * m.values_b.size() + r.concepts[*ib]);
        c.n += 1;
        c.successes += r.label == Label::positive ? 1 : 0;
        c.boundary_count += analysis.in_boundary(i) ? 1 : 0;
    }
    for (JointCell &c : m.cells) {
        if (c.n > 0) {
            c.p_joint = static_cast<double>(c.successes) / static_cast<double>(c.n);
        }
        c.suppressed = c.n < min_n;
    }
    return m;
}

std::vector<AmbiguousProfile> top_ambiguous_profiles(const RegionAnalysis &analysis, const ConceptSchema &schema, std::size_t k) {
    std::vector<const InconsistentProfile *> order;
    for (const auto &ip : analysis.inconsistent) {
        order.push_back(&ip);
    }
    std::sort(order.begin(), order.end(), [](const InconsistentProfile *a, const InconsistentProfile *b) {
        if (a->conflict_ratio != b->conflict_ratio) {
            return a->conflict_ratio > b->conflict_ratio;
        }
        if (a->profile.size() != b->profile.size()) {
            return a->profile.size() > b->profile.size();
        }
        return a->profile.key < b->profile.key;
    });
    std::vector<AmbiguousProfile> out;
    for (std::size_t i = 0; i < std::min(k, order.size()); ++i) {
        const Profile &p = order[i]->profile;
        AmbiguousProfile row;
        row.rank = i + 1;
        row.key = p.key;
        row.signature = signature_text(schema, p.key);
        row.n = p.size();
        row.count_label1 = p.count_label1;
        row.count_label0 = p.count_label0;
        row.conflict_ratio = order[i]->conflict_ratio;
        for (std::size_t a = 0; a < p.key.size(); ++a) {
            const auto &attr = schema.attributes.at(a);
            if (attr.is_active(p.key[a])) {
                row.active_values.push_back(attr.name + "=" + attr.values.at(p.key[a]));
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace rsaudit

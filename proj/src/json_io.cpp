#include "rsaudit/json_io.hpp"

#include "rsaudit/error.hpp"

namespace rsaudit {

Json rational_json(const Rational &r) {
    return Json{{"numerator", r.numerator()}, {"denominator", r.denominator()}, {"decimal", to_decimal(r, 4)}};
}

Rational rational_from_json(const Json &j) {
    return Rational(j.at("numerator").get<std::int64_t>(), j.at("denominator").get<std::int64_t>());
}

Json composition_json(const CompositionMetrics &m) {
    return Json{{"images", m.size},
                {"label1", m.label1_count},
                {"label0", m.label0_count},
                {"imbalance_ratio", m.imbalance_ratio},
                {"gamma", rational_json(m.gamma)},
                {"ceiling", rational_json(m.ceiling)},
                {"label1_retained_fraction", rational_json(m.label1_retained_fraction)},
                {"size_change", rational_json(m.size_change)},
                {"all_label1_preserved", m.all_label1_preserved},
                {"consistency", std::string(to_string(m.consistency))}};
}

CompositionMetrics composition_from_json(const Json &j) {
    CompositionMetrics m;
    m.size = j.at("images").get<std::size_t>();
    m.label1_count = j.at("label1").get<std::size_t>();
    m.label0_count = j.at("label0").get<std::size_t>();
    m.imbalance_ratio = j.at("imbalance_ratio").get<std::string>();
    m.gamma = rational_from_json(j.at("gamma"));
    m.ceiling = rational_from_json(j.at("ceiling"));
    m.label1_retained_fraction = rational_from_json(j.at("label1_retained_fraction"));
    m.size_change = rational_from_json(j.at("size_change"));
    m.all_label1_preserved = j.at("all_label1_preserved").get<bool>();
    const auto c = j.at("consistency").get<std::string>();
    if (c == "full") {
        m.consistency = Consistency::full;
    } else if (c == "partial") {
        m.consistency = Consistency::partial;
    } else if (c == "none") {
        m.consistency = Consistency::none;
    } else {
        throw SchemaError("unknown consistency '" + c + "'");
    }
    return m;
}

}  // namespace rsaudit

#pragma once

#include "rsaudit/filtering.hpp"
#include "rsaudit/rational.hpp"

#include <json.hpp>

namespace rsaudit {

using Json = nlohmann::ordered_json;

/// {"numerator": n, "denominator": d, "decimal": "0.6973"}
[[nodiscard]] Json rational_json(const Rational &r);
[[nodiscard]] Rational rational_from_json(const Json &j);

[[nodiscard]] Json composition_json(const CompositionMetrics &m);
[[nodiscard]] CompositionMetrics composition_from_json(const Json &j);

}  // namespace rsaudit

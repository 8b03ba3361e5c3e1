#include "rsaudit/commands.hpp"
#include "rsaudit/error.hpp"
#include "rsaudit/filtering.hpp"
#include "rsaudit/json_io.hpp"
#include "rsaudit/report.hpp"
#include "rsaudit/roughset.hpp"
#include "rsaudit/stats.hpp"
#include "rsaudit/synth.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <sstream>
#include <stdexcept>

namespace py = pybind11;
using namespace rsaudit;

namespace {

py::object fraction(const Rational &r) {
    static const py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(r.numerator(), r.denominator());
}

IngestConfig config_from(const std::optional<std::string> &config_json) {
    return config_json ? parse_config(*config_json) : IngestConfig{};
}

Strategy strategy_from(const std::string &name) {
    const auto s = parse_strategy(name);
    if (!s) {
        throw std::invalid_argument("unknown strategy '" + name + "' (symmetric or asymmetric)");
    }
    return *s;
}

py::dict analysis_dict(const Dataset &d) {
    const Analysis a = analyze(d);
    const RegionAnalysis &r = a.regions;
    py::list inconsistent;
    for (const auto &ip : r.inconsistent) {
        py::dict row;
        row["signature"] = signature_text(d.schema(), ip.profile.key);
        row["n"] = ip.profile.size();
        row["label1"] = ip.profile.count_label1;
        row["label0"] = ip.profile.count_label0;
        row["conflict_ratio"] = fraction(ip.conflict_ratio);
        inconsistent.append(row);
    }
    py::dict out;
    out["universe_size"] = r.universe_size;
    out["profile_count"] = r.profile_count;
    out["positive"] = r.positive;
    out["boundary"] = r.boundary;
    out["gamma"] = fraction(r.gamma);
    out["ceiling"] = fraction(r.ceiling.value);
    out["inconsistent"] = inconsistent;
    return out;
}

py::dict filter_dict(const FilterResult &f) {
    py::list removed;
    for (const auto &rm : f.removed) {
        removed.append(rm.id);
    }
    py::dict out;
    out["strategy"] = std::string(to_string(f.strategy));
    out["retained"] = f.retained;
    out["retained_rows"] = f.retained_rows;
    out["removed_ids"] = removed;
    out["metrics"] = composition_json(f.metrics).dump();
    out["manifest"] = removal_manifest(f);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rough-set consistency audit of concept-annotated datasets";
    m.attr("__version__") = version_string;

    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
    py::register_exception<ContractError>(m, "ContractError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());
    py::register_exception<SpecError>(m, "SpecError", base.ptr());

    py::class_<Dataset>(m, "Dataset")
        .def("__len__", &Dataset::size)
        .def_property_readonly("attributes", [](const Dataset &d) {
            std::vector<std::string> names;
            for (const auto &a : d.schema().attributes) {
                names.push_back(a.name);
            }
            return names;
        })
        .def_property_readonly("ids", [](const Dataset &d) {
            std::vector<std::string> ids;
            for (const auto &r : d.records()) {
                ids.push_back(r.id);
            }
            return ids;
        })
        .def_property_readonly("labels", [](const Dataset &d) {
            std::vector<int> labels;
            for (const auto &r : d.records()) {
                labels.push_back(static_cast<int>(r.label));
            }
            return labels;
        })
        .def_property_readonly("splits", [](const Dataset &d) {
            std::vector<std::optional<std::string>> out;
            for (const auto &r : d.records()) {
                out.push_back(r.split ? std::optional<std::string>(to_string(*r.split)) : std::nullopt);
            }
            return out;
        })
        .def("to_csv", [](const Dataset &d) {
            std::ostringstream out;
            write_dataset(d, out);
            return out.str();
        });

    m.def("load", [](const std::filesystem::path &path, const std::optional<std::filesystem::path> &config) {
        return load_validated(path, resolve_config(config));
    }, py::arg("path"), py::arg("config") = std::nullopt);

    m.def("parse", [](const std::string &text, const std::optional<std::string> &config_json) {
        std::istringstream in(text);
        return parse_dataset(in, config_from(config_json));
    }, py::arg("text"), py::arg("config_json") = std::nullopt);

    m.def("analyze", &analysis_dict, py::arg("dataset"));

    m.def("brute_force_ceiling", [](const Dataset &d, std::size_t cap) { return fraction(brute_force_ceiling(d, cap)); },
          py::arg("dataset"), py::arg("max_profiles") = default_brute_force_cap);

    m.def("audit_json", [](const Dataset &d, std::size_t top_k, double confidence, double bin_width,
                           const std::vector<std::pair<std::string, std::string>> &joints, bool default_joints) {
        ReportOptions opt{top_k, confidence, bin_width, joints, default_joints};
        return render_structured(build_audit_report(d, opt));
    }, py::arg("dataset"), py::arg("top_k") = 5, py::arg("confidence") = 0.95, py::arg("bin_width") = 0.05,
       py::arg("joints") = std::vector<std::pair<std::string, std::string>>{}, py::arg("default_joints") = true);

    m.def("audit_markdown", [](const Dataset &d) { return render_markdown(build_audit_report(d)); }, py::arg("dataset"));

    m.def("filter", [](const Dataset &d, const std::string &strategy) {
        return filter_dict(apply_filter(d, analyze(d).regions, strategy_from(strategy)));
    }, py::arg("dataset"), py::arg("strategy") = "symmetric");

    m.def("filter_split_aware", [](const Dataset &d, const std::string &strategy) {
        py::dict out;
        for (const auto &[split, result] : filter_split_aware(d, strategy_from(strategy))) {
            out[py::str(std::string(to_string(split)))] = filter_dict(result);
        }
        return out;
    }, py::arg("dataset"), py::arg("strategy") = "symmetric");

    m.def("wilson_interval", [](std::size_t successes, std::size_t n, double confidence) {
        const auto ci = wilson_interval(successes, n, confidence);
        return std::make_pair(ci.low, ci.high);
    }, py::arg("successes"), py::arg("n"), py::arg("confidence") = 0.95);

    m.def("synth", [](const std::optional<std::string> &spec_json, std::optional<std::uint64_t> seed, bool splits) {
        SynthSpec spec;
        if (spec_json) {
            spec = parse_synth_spec(*spec_json, seed);
        } else if (seed) {
            spec = random_plan(*seed);
        } else {
            throw SpecError("synth needs a spec or a seed");
        }
        spec.assign_splits = spec.assign_splits || splits;
        const SynthOutput out = generate_synthetic(spec);
        return py::make_tuple(out.dataset, synth_sidecar(out));
    }, py::arg("spec_json") = std::nullopt, py::arg("seed") = std::nullopt, py::arg("splits") = false);
}

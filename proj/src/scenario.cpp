// Copyright 2026 The qdt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "qdt/eventlogic.hpp"

namespace qdt {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string &path, const std::string &message) {
    throw ScenarioError(path.empty() ? "/" : path, message);
}

std::string child(const std::string &path, std::string_view key) {
    return path + "/" + std::string(key);
}

std::string child(const std::string &path, std::size_t index) {
    return path + "/" + std::to_string(index);
}

// Runs `f`, re-raising library validation errors at `path`.
template <class F> auto at(const std::string &path, F &&f) {
    try {
        return f();
    } catch (const ScenarioError &) {
        throw;
    } catch (const Error &e) {
        fail(path, e.what());
    }
}

double read_number(const json &j, const std::string &path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(path, "non-finite number");
    }
    return v;
}

std::size_t read_count(const json &j, const std::string &path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        fail(path, "expected a nonnegative integer");
    }
    return j.get<std::size_t>();
}

std::string read_label(const json &j, const std::string &path) {
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    std::string s = j.get<std::string>();
    if (s.empty()) {
        fail(path, "labels must be non-empty");
    }
    if (std::any_of(s.begin(), s.end(),
                    [](unsigned char c) { return c < 0x20 || c == 0x7f; })) {
        fail(path, "labels must not contain control characters");
    }
    return s;
}

const json &require_array(const json &j, const std::string &path) {
    if (!j.is_array()) {
        fail(path, "expected an array");
    }
    return j;
}

const json &require_object(const json &j, const std::string &path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    return j;
}

const json &field(const json &obj, std::string_view key,
                  const std::string &path) {
    const auto it = obj.find(std::string(key));
    if (it == obj.end()) {
        fail(child(path, key), "missing field");
    }
    return *it;
}

void reject_unknown(const json &obj, const std::set<std::string> &allowed,
                    const std::string &path) {
    for (const auto &[key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            fail(child(path, key), "unknown field");
        }
    }
}

Complex read_complex(const json &j, const std::string &path) {
    if (j.is_number()) {
        return read_number(j, path);
    }
    if (!j.is_array() || j.size() != 2) {
        fail(path, "expected a complex number [re, im]");
    }
    return {read_number(j[0], child(path, 0)),
            read_number(j[1], child(path, 1))};
}

ComplexVector read_vector(const json &j, const std::string &path,
                          std::size_t expected) {
    require_array(j, path);
    if (j.size() != expected) {
        fail(path, "dimension mismatch: expected " + std::to_string(expected) +
                       " entries, got " + std::to_string(j.size()));
    }
    ComplexVector v(static_cast<Eigen::Index>(expected));
    for (std::size_t k = 0; k < expected; ++k) {
        v(static_cast<Eigen::Index>(k)) = read_complex(j[k], child(path, k));
    }
    return v;
}

ComplexMatrix read_matrix(const json &j, const std::string &path,
                          std::size_t n) {
    require_array(j, path);
    if (j.size() != n) {
        fail(path, "dimension mismatch: expected " + std::to_string(n) +
                       " rows, got " + std::to_string(j.size()));
    }
    ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const ComplexVector row = read_vector(j[r], child(path, r), n);
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return m;
}

std::vector<double> read_numbers(const json &j, const std::string &path) {
    require_array(j, path);
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(read_number(j[k], child(path, k)));
    }
    return out;
}

template <std::size_t N>
std::array<std::size_t, N> read_dims(const json &j, const std::string &path) {
    require_array(j, path);
    if (j.size() != N) {
        fail(path, "expected " + std::to_string(N) + " factor dimensions");
    }
    std::array<std::size_t, N> dims{};
    for (std::size_t k = 0; k < N; ++k) {
        dims[k] = read_count(j[k], child(path, k));
        if (dims[k] == 0) {
            fail(child(path, k), "factor dimensions must be positive");
        }
    }
    at(path, [&] { return dimension_product(dims); });
    return dims;
}

const std::map<std::string, ScenarioKind> &kind_names() {
    static const std::map<std::string, ScenarioKind> names{
        {"prediction", ScenarioKind::prediction},
        {"quantum", ScenarioKind::quantum},
        {"pipeline", ScenarioKind::pipeline},
        {"logic_demo", ScenarioKind::logic_demo},
    };
    return names;
}

const std::map<std::string, ScenarioKind> &section_owner() {
    static const std::map<std::string, ScenarioKind> owner{
        {"labels", ScenarioKind::prediction},
        {"utility", ScenarioKind::prediction},
        {"attraction", ScenarioKind::prediction},
        {"empirical", ScenarioKind::prediction},
        {"dims", ScenarioKind::quantum},
        {"rho", ScenarioKind::quantum},
        {"prospects", ScenarioKind::quantum},
        {"pipeline", ScenarioKind::pipeline},
    };
    return owner;
}

UtilitySpec read_utility(const json &j, const std::string &path) {
    require_object(j, path);
    reject_unknown(j, {"mode", "values"}, path);
    UtilitySpec spec;
    const json &mode = field(j, "mode", path);
    if (mode == "direct_factors") {
        spec.mode = UtilityMode::direct_factors;
    } else if (mode == "nonnegative_utilities") {
        spec.mode = UtilityMode::nonnegative_utilities;
    } else {
        fail(child(path, "mode"),
             "expected \"direct_factors\" or \"nonnegative_utilities\"");
    }
    spec.values = read_numbers(field(j, "values", path), child(path, "values"));
    return spec;
}

AttractionSpec read_attraction(const json &j, const std::string &path) {
    require_object(j, path);
    reject_unknown(j, {"mode", "signs", "magnitudes", "mu", "mu_c"}, path);
    AttractionSpec spec;
    const json &mode = field(j, "mode", path);
    if (mode == "quarter_law_prior") {
        spec.mode = AttractionMode::quarter_law_prior;
    } else if (mode == "explicit") {
        spec.mode = AttractionMode::explicit_values;
    } else {
        fail(child(path, "mode"),
             "expected \"quarter_law_prior\" or \"explicit\"");
    }
    if (j.contains("signs")) {
        const std::string p = child(path, "signs");
        require_array(j["signs"], p);
        for (std::size_t k = 0; k < j["signs"].size(); ++k) {
            const json &s = j["signs"][k];
            if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) {
                fail(child(p, k), "signs must be +1 or -1");
            }
            spec.signs.push_back(s.get<int>());
        }
    }
    if (j.contains("magnitudes")) {
        spec.magnitudes = read_numbers(j["magnitudes"], child(path, "magnitudes"));
    }
    if (j.contains("mu")) {
        spec.mu = read_number(j["mu"], child(path, "mu"));
        if (spec.mu < 0.0) {
            fail(child(path, "mu"), "information measure must be nonnegative");
        }
    }
    if (j.contains("mu_c")) {
        spec.mu_c = read_number(j["mu_c"], child(path, "mu_c"));
        if (!(spec.mu_c > 0.0)) {
            fail(child(path, "mu_c"), "critical information must be positive");
        }
    }
    if (spec.mode == AttractionMode::quarter_law_prior && spec.signs.empty()) {
        fail(child(path, "signs"), "quarter-law prior needs signs");
    }
    if (spec.mode == AttractionMode::explicit_values && spec.magnitudes.empty()) {
        fail(child(path, "magnitudes"), "explicit attraction needs magnitudes");
    }
    return spec;
}

PredictionSection read_prediction(const json &root, const Tolerance &tol) {
    PredictionSection s;
    const json &labels = require_array(field(root, "labels", ""), "/labels");
    for (std::size_t k = 0; k < labels.size(); ++k) {
        s.labels.push_back(read_label(labels[k], child("/labels", k)));
    }
    at("/labels", [&] { return ProspectLattice(s.labels); });
    const std::size_t n = s.labels.size();

    s.utility = read_utility(field(root, "utility", ""), "/utility");
    if (s.utility.values.size() != n) {
        fail("/utility/values", "dimension mismatch: expected " +
                                    std::to_string(n) + " values");
    }
    at("/utility/values", [&] { return utility_factors(s.utility, tol); });

    s.attraction = read_attraction(field(root, "attraction", ""), "/attraction");
    if (!s.attraction.signs.empty() && s.attraction.signs.size() != n) {
        fail("/attraction/signs",
             "dimension mismatch: expected " + std::to_string(n) + " signs");
    }
    if (!s.attraction.magnitudes.empty() && s.attraction.magnitudes.size() != n) {
        fail("/attraction/magnitudes", "dimension mismatch: expected " +
                                           std::to_string(n) + " magnitudes");
    }
    if (s.attraction.mode == AttractionMode::quarter_law_prior) {
        at("/attraction", [&] { return attraction_prior(n, s.attraction.signs); });
    }

    if (root.contains("empirical")) {
        s.empirical = read_numbers(root["empirical"], "/empirical");
        if (s.empirical.size() != n) {
            fail("/empirical",
                 "dimension mismatch: expected " + std::to_string(n) + " values");
        }
    }
    return s;
}

QuantumSection read_quantum(const json &root, const Tolerance &tol) {
    QuantumSection s;
    s.dims = read_dims<2>(field(root, "dims", ""), "/dims");
    const std::size_t total = s.dims[0] * s.dims[1];
    s.rho = read_matrix(field(root, "rho", ""), "/rho", total);
    at("/rho", [&] {
        return DensityOperator::from_user_matrix(HilbertSpace(total), s.rho, tol);
    });

    const json &prospects =
        require_array(field(root, "prospects", ""), "/prospects");
    if (prospects.size() < 2) {
        fail("/prospects", "a prospect lattice needs at least two prospects");
    }
    for (std::size_t k = 0; k < prospects.size(); ++k) {
        const std::string path = child("/prospects", k);
        const json &item = require_object(prospects[k], path);
        reject_unknown(item, {"label", "outcome_index", "amplitudes"}, path);
        QuantumProspectSpec p;
        p.label = item.contains("label")
                      ? read_label(item["label"], child(path, "label"))
                      : "pi" + std::to_string(k + 1);
        p.outcome_index = read_count(field(item, "outcome_index", path),
                                     child(path, "outcome_index"));
        if (p.outcome_index >= s.dims[0]) {
            fail(child(path, "outcome_index"), "outcome index out of range");
        }
        p.amplitudes = read_vector(field(item, "amplitudes", path),
                                   child(path, "amplitudes"), s.dims[1]);
        at(child(path, "amplitudes"), [&] {
            return InconclusiveEvent(HilbertSpace(s.dims[1]), p.amplitudes, tol);
        });
        s.prospects.push_back(std::move(p));
    }
    std::set<std::string> seen;
    for (std::size_t k = 0; k < s.prospects.size(); ++k) {
        if (!seen.insert(s.prospects[k].label).second) {
            fail(child(child("/prospects", k), "label"),
                 "prospect labels must be unique");
        }
    }
    return s;
}

PipelineSection read_pipeline(const json &j, const Tolerance &tol) {
    const std::string path = "/pipeline";
    require_object(j, path);
    reject_unknown(j,
                   {"dims", "initial", "preparation", "first_evolution",
                    "second_evolution", "timestamps"},
                   path);
    PipelineSection s;
    s.dims = read_dims<3>(field(j, "dims", path), child(path, "dims"));
    const std::size_t total = s.dims[0] * s.dims[1] * s.dims[2];

    const std::string ipath = child(path, "initial");
    const json &initial = require_array(field(j, "initial", path), ipath);
    if (initial.size() != 3) {
        fail(ipath, "expected three initial factor states");
    }
    for (std::size_t k = 0; k < 3; ++k) {
        s.initial[k] = read_matrix(initial[k], child(ipath, k), s.dims[k]);
        at(child(ipath, k), [&] {
            return DensityOperator::from_user_matrix(HilbertSpace(s.dims[k]),
                                                     s.initial[k], tol);
        });
    }

    const auto read_unitary = [&](std::string_view key,
                                  std::optional<ComplexMatrix> &out) {
        if (!j.contains(std::string(key))) {
            return;
        }
        const std::string upath = child(path, key);
        out = read_matrix(j[std::string(key)], upath, total);
        at(upath, [&] { return UnitaryOperator(HilbertSpace(total), *out, tol); });
    };
    read_unitary("preparation", s.preparation);
    read_unitary("first_evolution", s.first_evolution);
    read_unitary("second_evolution", s.second_evolution);

    if (j.contains("timestamps")) {
        const std::string tpath = child(path, "timestamps");
        s.timestamps = read_numbers(j["timestamps"], tpath);
        if (s.timestamps.size() != 5) {
            fail(tpath, "expected five timestamps");
        }
        for (std::size_t k = 1; k < 5; ++k) {
            if (!(s.timestamps[k] > s.timestamps[k - 1])) {
                fail(child(tpath, k), "timestamps must be strictly increasing");
            }
        }
    }
    return s;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const ComplexVector &v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back(complex_json(v(k)));
    }
    return out;
}

json matrix_json(const ComplexMatrix &m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_json(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

// Builtin scenario files.

constexpr std::string_view prisoner_dilemma_json = R"({
  "schema_version": "1.0",
  "kind": "prediction",
  "labels": ["cooperate", "defect"],
  "utility": {"mode": "direct_factors", "values": [0.60, 0.40]},
  "attraction": {"mode": "quarter_law_prior", "signs": [-1, 1], "mu": 0, "mu_c": 1},
  "empirical": [0.37, 0.63]
})";

// |0> (x) (|0> + |1>)/sqrt(2), prospects A_0 (x) B and A_1 (x) B.
constexpr std::string_view entangled_prospects_json = R"({
  "schema_version": "1.0",
  "kind": "quantum",
  "dims": [2, 2],
  "rho": [
    [[0.5, 0], [0.5, 0], [0, 0], [0, 0]],
    [[0.5, 0], [0.5, 0], [0, 0], [0, 0]],
    [[0, 0], [0, 0], [0, 0], [0, 0]],
    [[0, 0], [0, 0], [0, 0], [0, 0]]
  ],
  "prospects": [
    {"label": "A0xB", "outcome_index": 0,
     "amplitudes": [[0.7071067811865476, 0], [0.7071067811865476, 0]]},
    {"label": "A1xB", "outcome_index": 1,
     "amplitudes": [[0.7071067811865476, 0], [0.7071067811865476, 0]]}
  ]
})";

constexpr std::string_view decohered_prospects_json = R"({
  "schema_version": "1.0",
  "kind": "quantum",
  "dims": [2, 2],
  "rho": [
    [[0.4, 0], [0, 0], [0, 0], [0, 0]],
    [[0, 0], [0.1, 0], [0, 0], [0, 0]],
    [[0, 0], [0, 0], [0.2, 0], [0, 0]],
    [[0, 0], [0, 0], [0, 0], [0.3, 0]]
  ],
  "prospects": [
    {"label": "A0xB", "outcome_index": 0,
     "amplitudes": [[0.6, 0], [0, 0.8]]},
    {"label": "A1xB", "outcome_index": 1,
     "amplitudes": [[0.6, 0], [0, 0.8]]}
  ]
})";

// (|00> + |11>)/sqrt(2), prospects A_0 (x) B and A_1 (x) B.
constexpr std::string_view bell_prospects_json = R"({
  "schema_version": "1.0",
  "kind": "quantum",
  "dims": [2, 2],
  "rho": [
    [[0.5, 0], [0, 0], [0, 0], [0.5, 0]],
    [[0, 0], [0, 0], [0, 0], [0, 0]],
    [[0, 0], [0, 0], [0, 0], [0, 0]],
    [[0.5, 0], [0, 0], [0, 0], [0.5, 0]]
  ],
  "prospects": [
    {"label": "A0xB", "outcome_index": 0,
     "amplitudes": [[0.7071067811865476, 0], [0.7071067811865476, 0]]},
    {"label": "A1xB", "outcome_index": 1,
     "amplitudes": [[0.7071067811865476, 0], [0.7071067811865476, 0]]}
  ]
})";

constexpr std::string_view qubit_pipeline_json = R"({
  "schema_version": "1.0",
  "kind": "pipeline",
  "seed": 7,
  "pipeline": {
    "dims": [2, 2, 2],
    "initial": [
      [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
      [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]],
      [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]
    ],
    "timestamps": [1, 2, 3, 4, 5]
  }
})";

constexpr std::string_view spin_logic_json = R"({
  "schema_version": "1.0",
  "kind": "logic_demo"
})";

const std::map<std::string, std::string_view, std::less<>> &builtins() {
    static const std::map<std::string, std::string_view, std::less<>> table{
        {"prisoner-dilemma", prisoner_dilemma_json},
        {"entangled-prospects", entangled_prospects_json},
        {"bell-prospects", bell_prospects_json},
        {"decohered-prospects", decohered_prospects_json},
        {"qubit-pipeline", qubit_pipeline_json},
        {"spin-logic", spin_logic_json},
    };
    return table;
}

} // namespace

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::prediction:
        return "prediction";
    case ScenarioKind::quantum:
        return "quantum";
    case ScenarioKind::pipeline:
        return "pipeline";
    case ScenarioKind::logic_demo:
        return "logic_demo";
    }
    return "unknown";
}

ScenarioFile parse_scenario(std::string_view text, const Tolerance &tol) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        // Byte offsets are 1-based and point just past the failure.
        const std::size_t offset =
            std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        const std::size_t line =
            1 + static_cast<std::size_t>(
                    std::count(text.begin(), text.begin() + offset, '\n'));
        const std::size_t last_newline = text.rfind('\n', offset == 0 ? 0 : offset - 1);
        const std::size_t column =
            last_newline == std::string_view::npos ? offset + 1
                                                   : offset - last_newline;
        throw ScenarioError("line " + std::to_string(line) + ", column " +
                                std::to_string(column),
                            "malformed JSON");
    }
    require_object(root, "");

    ScenarioFile out;
    const json &version = field(root, "schema_version", "");
    if (!version.is_string() || version.get<std::string>() != scenario_schema_version) {
        fail("/schema_version", "unknown schema_version (expected \"" +
                                    std::string(scenario_schema_version) + "\")");
    }
    out.schema_version = version.get<std::string>();

    const json &kind = field(root, "kind", "");
    const auto kit = kind.is_string() ? kind_names().find(kind.get<std::string>())
                                      : kind_names().end();
    if (kit == kind_names().end()) {
        fail("/kind", "expected one of prediction, quantum, pipeline, logic_demo");
    }
    out.kind = kit->second;

    for (const auto &[key, value] : root.items()) {
        if (key == "schema_version" || key == "kind" || key == "seed") {
            continue;
        }
        const auto owner = section_owner().find(key);
        if (owner == section_owner().end()) {
            fail("/" + key, "unknown field");
        }
        if (owner->second != out.kind) {
            fail("/" + key, "kind/section mismatch: field belongs to kind " +
                                std::string(to_string(owner->second)));
        }
    }

    if (root.contains("seed")) {
        out.seed = read_count(root["seed"], "/seed");
    }

    switch (out.kind) {
    case ScenarioKind::prediction:
        out.prediction = read_prediction(root, tol);
        break;
    case ScenarioKind::quantum:
        out.quantum = read_quantum(root, tol);
        break;
    case ScenarioKind::pipeline:
        out.pipeline = read_pipeline(field(root, "pipeline", ""), tol);
        break;
    case ScenarioKind::logic_demo:
        break;
    }
    return out;
}

std::string emit_scenario(const ScenarioFile &s) {
    json root;
    root["schema_version"] = s.schema_version;
    root["kind"] = std::string(to_string(s.kind));
    if (s.seed) {
        root["seed"] = *s.seed;
    }
    if (s.prediction) {
        const PredictionSection &p = *s.prediction;
        root["labels"] = p.labels;
        root["utility"] = {
            {"mode", p.utility.mode == UtilityMode::direct_factors
                         ? "direct_factors"
                         : "nonnegative_utilities"},
            {"values", p.utility.values}};
        json a;
        a["mode"] = p.attraction.mode == AttractionMode::explicit_values
                        ? "explicit"
                        : "quarter_law_prior";
        if (!p.attraction.signs.empty()) {
            a["signs"] = p.attraction.signs;
        }
        if (!p.attraction.magnitudes.empty()) {
            a["magnitudes"] = p.attraction.magnitudes;
        }
        a["mu"] = p.attraction.mu;
        a["mu_c"] = p.attraction.mu_c;
        root["attraction"] = a;
        if (!p.empirical.empty()) {
            root["empirical"] = p.empirical;
        }
    }
    if (s.quantum) {
        const QuantumSection &q = *s.quantum;
        root["dims"] = q.dims;
        root["rho"] = matrix_json(q.rho);
        json prospects = json::array();
        for (const auto &p : q.prospects) {
            prospects.push_back({{"label", p.label},
                                 {"outcome_index", p.outcome_index},
                                 {"amplitudes", vector_json(p.amplitudes)}});
        }
        root["prospects"] = prospects;
    }
    if (s.pipeline) {
        const PipelineSection &p = *s.pipeline;
        json pj;
        pj["dims"] = p.dims;
        pj["initial"] = json::array({matrix_json(p.initial[0]),
                                     matrix_json(p.initial[1]),
                                     matrix_json(p.initial[2])});
        if (p.preparation) {
            pj["preparation"] = matrix_json(*p.preparation);
        }
        if (p.first_evolution) {
            pj["first_evolution"] = matrix_json(*p.first_evolution);
        }
        if (p.second_evolution) {
            pj["second_evolution"] = matrix_json(*p.second_evolution);
        }
        pj["timestamps"] = p.timestamps;
        root["pipeline"] = pj;
    }
    return root.dump(2);
}

std::vector<std::string> builtin_scenario_names() {
    std::vector<std::string> names;
    for (const auto &[name, text] : builtins()) {
        names.push_back(name);
    }
    return names;
}

std::string builtin_scenario_text(std::string_view name) {
    const auto it = builtins().find(name);
    require(it != builtins().end(),
            "unknown builtin scenario '" + std::string(name) + "'");
    return std::string(it->second);
}

Scenario to_decision_scenario(const ScenarioFile &file, std::string name) {
    require(file.prediction.has_value(), "scenario is not a prediction");
    const PredictionSection &p = *file.prediction;
    return Scenario{std::move(name), ProspectLattice(p.labels), p.utility,
                    p.attraction, p.empirical};
}

QuantumProblem to_quantum_problem(const ScenarioFile &file,
                                  const Tolerance &tol) {
    require(file.quantum.has_value(), "scenario is not a quantum scenario");
    const QuantumSection &q = *file.quantum;
    const HilbertSpace space_a(q.dims[0]);
    const HilbertSpace space_b(q.dims[1]);
    std::vector<std::string> labels;
    std::vector<Prospect> prospects;
    for (const auto &p : q.prospects) {
        labels.push_back(p.label);
        prospects.emplace_back(space_a, p.outcome_index,
                               InconclusiveEvent(space_b, p.amplitudes, tol));
    }
    return QuantumProblem{
        DensityOperator::from_user_matrix(tensor(space_a, space_b), q.rho, tol),
        ProspectLattice(std::move(labels), std::move(prospects)), q.dims};
}

} // namespace qdt

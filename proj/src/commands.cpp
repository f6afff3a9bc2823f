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

#include "qdt/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "qdt/channels.hpp"
#include "qdt/decision.hpp"
#include "qdt/error.hpp"
#include "qdt/eventlogic.hpp"
#include "qdt/probability.hpp"
#include "qdt/random.hpp"
#include "qdt/verify.hpp"

namespace qdt {

namespace {

// Invariant thresholds for the command audits.
constexpr double alternation_limit = 1e-12;
constexpr double decomposition_limit = 1e-12;
constexpr double trace_limit = 1e-12;
constexpr double product_limit = 1e-10;
constexpr double choi_limit = 1e-10;
constexpr double lattice_law_limit = 1e-12;

std::string key(std::string_view prefix, std::size_t index,
                std::string_view field) {
    return std::string(prefix) + "." + std::to_string(index) + "." +
           std::string(field);
}

std::string order_name(Order o) {
    switch (o) {
    case Order::more:
        return "more";
    case Order::equal:
        return "equal";
    case Order::less:
        return "less";
    }
    return "unknown";
}

std::string one_line(std::string text) {
    for (char &c : text) {
        if (c == '\t' || c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return text;
}

const ScenarioFile &require_kind(const std::optional<ScenarioFile> &file,
                                 ScenarioKind kind, Command command) {
    require(file.has_value(), std::string(to_string(command)) +
                                  " needs a scenario (--scenario or --builtin)");
    require(file->kind == kind,
            std::string(to_string(command)) + " needs a " +
                std::string(to_string(kind)) + " scenario, got " +
                std::string(to_string(file->kind)));
    return *file;
}

std::uint64_t effective_seed(const std::optional<ScenarioFile> &file,
                             const CommandOptions &options) {
    if (options.seed) {
        return *options.seed;
    }
    return file && file->seed ? *file->seed : 0;
}

void run_predict(ReportDocument &doc, const ScenarioFile &file,
                 const CommandOptions &options) {
    const Tolerance &tol = options.tolerance;
    const Scenario scenario = to_decision_scenario(file, "scenario");
    AttractionSpec attraction = scenario.attraction;
    if (options.mu) {
        attraction.mu = *options.mu;
    }
    if (options.mu_c) {
        attraction.mu_c = *options.mu_c;
    }
    require(std::isfinite(attraction.mu) && attraction.mu >= 0.0,
            "information measure must be nonnegative");
    require(std::isfinite(attraction.mu_c) && attraction.mu_c > 0.0,
            "critical information must be positive");

    const PredictionReport r =
        predict(scenario.lattice, scenario.utility, attraction, tol);
    const std::size_t n = r.rows.size();

    doc.add("mu", r.mu);
    doc.add("mu_c", r.mu_c);
    doc.add("decay_factor", r.decay_factor);
    doc.add("prospects", n);
    TextTable table({"prospect", "f", "q", "p", "rank p", "rank f", "rank q"});
    double utility_sum = 0.0;
    double range_violation = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const PredictionRow &row = r.rows[k];
        doc.add(key("prospect", k + 1, "label"), row.label);
        doc.add(key("prospect", k + 1, "utility"), row.utility);
        doc.add(key("prospect", k + 1, "attraction"), row.attraction);
        doc.add(key("prospect", k + 1, "probability"), row.probability);
        doc.add(key("prospect", k + 1, "rank.probability"), row.rank_by_probability);
        doc.add(key("prospect", k + 1, "rank.utility"), row.rank_by_utility);
        doc.add(key("prospect", k + 1, "rank.attraction"), row.rank_by_attraction);
        table.add_row({row.label, format_number(row.utility),
                       format_number(row.attraction), format_number(row.probability),
                       std::to_string(row.rank_by_probability),
                       std::to_string(row.rank_by_utility),
                       std::to_string(row.rank_by_attraction)});
        utility_sum += row.utility;
        range_violation = std::max({range_violation, -row.probability,
                                    row.probability - 1.0,
                                    std::abs(row.attraction) - 1.0});
    }

    std::string pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const PairClassification c = classify_pair(r, i, j);
            const std::string prefix =
                "pair." + std::to_string(i + 1) + "." + std::to_string(j + 1);
            doc.add(prefix + ".useful", order_name(c.useful));
            doc.add(prefix + ".attractive", order_name(c.attractive));
            doc.add(prefix + ".preferable", order_name(c.preferable));
            pairs += r.rows[i].label + " vs " + r.rows[j].label + ": " +
                     order_name(c.useful) + " useful, " + order_name(c.attractive) +
                     " attractive, " + order_name(c.preferable) + " preferable\n";
        }
    }

    doc.add("normalization_defect", r.normalization_defect);
    doc.add("alternation_defect", r.alternation_defect);

    std::string human = "prediction  mu=" + format_number(r.mu) +
                        "  mu_c=" + format_number(r.mu_c) +
                        "  decay=" + format_number(r.decay_factor) + "\n\n" +
                        table.render() + "\n" + pairs;

    if (!scenario.empirical.empty()) {
        const EmpiricalComparison c = compare_to_empirical(r, scenario.empirical);
        TextTable emp({"prospect", "predicted", "empirical", "deviation"});
        for (std::size_t k = 0; k < n; ++k) {
            doc.add(key("empirical", k + 1, "target"), scenario.empirical[k]);
            doc.add(key("empirical", k + 1, "deviation"), c.deviations[k]);
            emp.add_row({r.rows[k].label, format_number(r.rows[k].probability),
                         format_number(scenario.empirical[k]),
                         format_number(c.deviations[k])});
        }
        doc.add("empirical.max_deviation", c.max_deviation);
        human += "\n" + emp.render() +
                 "max deviation " + format_number(c.max_deviation) + "\n";
    }
    human += "\nnormalization defect " + format_number(r.normalization_defect) +
             "\nalternation defect   " + format_number(r.alternation_defect) + "\n";

    // sum p = 1 holds to rounding once sum f = 1 and sum q = 0; slack in
    // either input is tolerated only up to its own size.
    const double allowed = std::abs(utility_sum - 1.0) + r.alternation_defect + 1e-12;
    if (r.normalization_defect > allowed || range_violation > tol.eps_equality) {
        doc.exit_code = exit_numerical;
    }
    doc.human = std::move(human);
}

void run_eval_quantum(ReportDocument &doc, const ScenarioFile &file,
                      const CommandOptions &options) {
    const Tolerance &tol = options.tolerance;
    const QuantumProblem problem = to_quantum_problem(file, tol);
    const LatticeEvaluation e = evaluate_lattice(problem.rho, problem.lattice, tol);
    const auto &prospects = problem.lattice.prospects();

    doc.add("dims.a", problem.dims[0]);
    doc.add("dims.b", problem.dims[1]);
    doc.add("prospects", prospects.size());
    doc.add("raw_total", e.raw_total);

    TextTable table({"prospect", "p", "f", "q", "raw p", "raw f", "raw q",
                     "separable"});
    double decomposition = 0.0;
    bool theorem_holds = true;
    double range_violation = 0.0;
    for (std::size_t k = 0; k < prospects.size(); ++k) {
        const ProbabilityDecomposition &raw = e.raw[k];
        const ProbabilityDecomposition &nrm = e.normalized[k];
        const SeparabilityReport sep =
            is_separable(prospect_operator(prospects[k], tol), problem.dims, tol);
        const std::string &label = problem.lattice.labels()[k];
        doc.add(key("prospect", k + 1, "label"), label);
        doc.add(key("prospect", k + 1, "probability"), nrm.total);
        doc.add(key("prospect", k + 1, "utility"), nrm.utility_factor);
        doc.add(key("prospect", k + 1, "attraction"), nrm.attraction_factor);
        doc.add(key("prospect", k + 1, "raw.probability"), raw.total);
        doc.add(key("prospect", k + 1, "raw.utility"), raw.utility_factor);
        doc.add(key("prospect", k + 1, "raw.attraction"), raw.attraction_factor);
        doc.add(key("prospect", k + 1, "separable"), sep.separable);
        doc.add(key("prospect", k + 1, "entanglement_witness"), sep.witness);
        table.add_row({label, format_number(nrm.total),
                       format_number(nrm.utility_factor),
                       format_number(nrm.attraction_factor), format_number(raw.total),
                       format_number(raw.utility_factor),
                       format_number(raw.attraction_factor),
                       sep.separable ? "yes" : "no"});

        const double independent =
            event_probability(problem.rho, prospect_operator(prospects[k], tol));
        decomposition = std::max(
            decomposition,
            std::abs(independent - (raw.utility_factor + raw.attraction_factor)));
        if (prospects[k].uncertain().operationally_testable() &&
            raw.attraction_factor != 0.0) {
            theorem_holds = false;
        }
        range_violation = std::max({range_violation, -nrm.total, nrm.total - 1.0,
                                    std::abs(nrm.attraction_factor) - 1.0});
    }
    doc.add("decomposition_defect", decomposition);
    doc.add("alternation_defect", e.alternation_defect);
    doc.add("unity_defect", e.unity_defect);

    doc.human = "quantum lattice on " + std::to_string(problem.dims[0]) + "x" +
                std::to_string(problem.dims[1]) + "  raw total " +
                format_number(e.raw_total) + "\n\n" + table.render() +
                "\ndecomposition defect " + format_number(decomposition) +
                "\nalternation defect   " + format_number(e.alternation_defect) +
                "\nunity defect         " + format_number(e.unity_defect) + "\n";

    if (e.alternation_defect > alternation_limit ||
        decomposition > decomposition_limit || !theorem_holds ||
        range_violation > tol.eps_equality) {
        doc.exit_code = exit_numerical;
    }
}

void run_pipeline_command(ReportDocument &doc,
                          const std::optional<ScenarioFile> &file_opt,
                          const CommandOptions &options) {
    const Tolerance &tol = options.tolerance;
    const ScenarioFile &file =
        require_kind(file_opt, ScenarioKind::pipeline, Command::pipeline);
    const PipelineSection &s = *file.pipeline;
    const std::uint64_t seed = effective_seed(file_opt, options);
    Rng rng(seed);

    const std::size_t total = s.dims[0] * s.dims[1] * s.dims[2];
    const ComplexMatrix prep =
        s.preparation ? *s.preparation : random_unitary(total, rng).matrix();
    const ComplexMatrix evo1 = s.first_evolution ? *s.first_evolution : identity(total);
    const ComplexMatrix evo2 =
        s.second_evolution ? *s.second_evolution : identity(total);
    const std::vector<double> stamps =
        s.timestamps.empty() ? std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0}
                             : s.timestamps;
    const MeasurementPipeline p =
        MeasurementPipeline::standard(s.dims, prep, evo1, evo2, stamps, tol);
    const std::array<DensityOperator, 3> initial{
        DensityOperator::from_user_matrix(HilbertSpace(s.dims[0]), s.initial[0], tol),
        DensityOperator::from_user_matrix(HilbertSpace(s.dims[1]), s.initial[1], tol),
        DensityOperator::from_user_matrix(HilbertSpace(s.dims[2]), s.initial[2], tol)};
    const Trajectory t = run_pipeline(p, initial, tol);
    const PipelineAudit audit = audit_pipeline(p, t, tol);

    doc.add("seed", static_cast<std::size_t>(seed));
    doc.add("dims.a", s.dims[0]);
    doc.add("dims.b", s.dims[1]);
    doc.add("dims.m", s.dims[2]);
    TextTable table({"step", "channel", "kind", "time", "trace defect",
                     "choi min eig"});
    double worst_trace = 0.0;
    double worst_choi = 0.0;
    for (std::size_t k = 0; k < p.steps().size(); ++k) {
        const Channel &c = p.steps()[k];
        doc.add(key("step", k + 1, "label"), c.label());
        doc.add(key("step", k + 1, "kind"), std::string(to_string(c.kind())));
        doc.add(key("step", k + 1, "timestamp"), p.timestamps()[k]);
        doc.add(key("step", k + 1, "trace_defect"), audit.trace_defects[k]);
        doc.add(key("step", k + 1, "choi_min_eigenvalue"),
                audit.choi_min_eigenvalues[k]);
        table.add_row({std::to_string(k + 1), c.label(),
                       std::string(to_string(c.kind())),
                       format_number(p.timestamps()[k]),
                       format_number(audit.trace_defects[k]),
                       format_number(audit.choi_min_eigenvalues[k])});
        worst_trace = std::max(worst_trace, audit.trace_defects[k]);
        worst_choi = std::max(worst_choi, -audit.choi_min_eigenvalues[k]);
    }
    doc.add("post_b.product_defect", audit.post_b_product_defect);
    doc.add("post_a.product_defect", audit.post_a_product_defect);

    TextTable compare({"A outcome", "B outcome", "pipeline", "luders",
                       "difference"});
    for (std::size_t n = 0; n < s.dims[0]; ++n) {
        for (std::size_t a = 0; a < s.dims[1]; ++a) {
            const std::string prefix =
                "conditional." + std::to_string(n) + "." + std::to_string(a);
            try {
                const LudersComparison c = compare_with_luders(p, t, n, a, tol);
                doc.add(prefix + ".pipeline", c.pipeline_probability);
                doc.add(prefix + ".luders", c.luders_probability);
                doc.add(prefix + ".difference", c.difference);
                compare.add_row({std::to_string(n), std::to_string(a),
                                 format_number(c.pipeline_probability),
                                 format_number(c.luders_probability),
                                 format_number(c.difference)});
            } catch (const Error &) {
                // Conditioning on an outcome the state never produces.
                doc.add(prefix + ".pipeline", "undefined");
                compare.add_row({std::to_string(n), std::to_string(a), "undefined",
                                 "", ""});
            }
        }
    }

    doc.human = "pipeline on " + std::to_string(s.dims[0]) + "x" +
                std::to_string(s.dims[1]) + "x" + std::to_string(s.dims[2]) +
                "  seed " + std::to_string(seed) + "\n\n" + table.render() +
                "\nproduct defect after B measurement (AM|B) " +
                format_number(audit.post_b_product_defect) +
                "\nproduct defect after A measurement (A|BM) " +
                format_number(audit.post_a_product_defect) + "\n\n" +
                compare.render();

    if (worst_trace > trace_limit || audit.post_b_product_defect > product_limit ||
        audit.post_a_product_defect > product_limit || worst_choi > choi_limit) {
        doc.exit_code = exit_numerical;
    }
}

void run_logic_demo(ReportDocument &doc, const std::optional<ScenarioFile> &file,
                    const CommandOptions &options) {
    const Tolerance &tol = options.tolerance;
    if (file) {
        require_kind(file, ScenarioKind::logic_demo, Command::logic_demo);
    }
    // Spin 1/2: A is spin up along x, B1 and B2 are up and down along z.
    const HilbertSpace spin(std::vector<std::string>{"z+", "z-"});
    ComplexMatrix x_plus(2, 1);
    x_plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const EventOperator a = projector_onto(spin, x_plus, tol);
    const EventOperator b1 = projector(spin, {0});
    const EventOperator b2 = projector(spin, {1});

    const EventOperator b_join = join(b1, b2, tol);
    const EventOperator lhs = meet(a, b_join, tol);
    const EventOperator m1 = meet(a, b1, tol);
    const EventOperator m2 = meet(a, b2, tol);
    const EventOperator rhs = join(m1, m2, tol);

    const auto rank = [](const EventOperator &e) {
        return static_cast<std::size_t>(std::lround(trace(e.matrix()).real()));
    };
    const double lhs_defect = frobenius_norm(lhs.matrix() - a.matrix());
    const double rhs_defect = frobenius_norm(rhs.matrix());
    const double join_defect = frobenius_norm(b_join.matrix() - identity(2));

    struct Line {
        const char *key;
        const char *expression;
        const EventOperator *event;
        const char *expected;
        double defect;
    };
    const Line lines[] = {
        {"join_b1_b2", "join(B1, B2)", &b_join, "I", join_defect},
        {"meet_a_join", "meet(A, join(B1, B2))", &lhs, "A", lhs_defect},
        {"meet_a_b1", "meet(A, B1)", &m1, "0", frobenius_norm(m1.matrix())},
        {"meet_a_b2", "meet(A, B2)", &m2, "0", frobenius_norm(m2.matrix())},
        {"join_of_meets", "join(meet(A, B1), meet(A, B2))", &rhs, "0", rhs_defect},
    };
    TextTable table({"expression", "rank", "expected", "defect"});
    for (const Line &l : lines) {
        doc.add(std::string(l.key) + ".rank", rank(*l.event));
        doc.add(std::string(l.key) + ".expected", l.expected);
        doc.add(std::string(l.key) + ".defect", l.defect);
        table.add_row({l.expression, std::to_string(rank(*l.event)), l.expected,
                       format_number(l.defect)});
    }
    const bool distributive = frobenius_norm(lhs.matrix() - rhs.matrix()) <= lattice_law_limit;
    doc.add("distributive", distributive);
    doc.human = "spin-1/2 events: A = x+, B1 = z+, B2 = z-\n\n" + table.render() +
                "\nmeet(A, join(B1, B2)) = A but join(meet(A, B1), meet(A, B2)) = 0: "
                "the distributive law fails\n";

    double worst = 0.0;
    for (const Line &l : lines) {
        worst = std::max(worst, l.defect);
    }
    if (worst > lattice_law_limit || distributive) {
        doc.exit_code = exit_numerical;
    }
}

void run_verify(ReportDocument &doc, const std::optional<ScenarioFile> &file,
                const CommandOptions &options) {
    const std::uint64_t seed = effective_seed(file, options);
    const auto start = std::chrono::steady_clock::now();
    const VerifySummary summary = run_verify_suite(seed, options.tolerance);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    doc.add("seed", static_cast<std::size_t>(seed));
    TextTable table({"module", "check", "samples", "value", "threshold", "result"});
    for (const CheckResult &c : summary.checks) {
        const std::string prefix = "check." + c.module + "." + c.name;
        doc.add(prefix + ".samples", c.samples);
        doc.add(prefix + ".value", c.value);
        doc.add(prefix + ".threshold", c.threshold);
        doc.add(prefix + ".kind", c.witness ? "witness" : "bound");
        doc.add(prefix + ".passed", c.passed);
        if (!c.detail.empty()) {
            doc.add(prefix + ".detail", one_line(c.detail));
        }
        table.add_row({c.module, c.name, std::to_string(c.samples),
                       format_number(c.value),
                       (c.witness ? "> " : "<= ") + format_number(c.threshold),
                       c.passed ? "PASS" : "FAIL"});
    }
    doc.add("checks.total", summary.checks.size());
    doc.add("checks.failed", summary.failures());

    char seconds[32];
    std::snprintf(seconds, sizeof seconds, "%.3f", elapsed);
    doc.human = table.render() + "\n" + std::to_string(summary.checks.size()) +
                " checks, " + std::to_string(summary.failures()) + " failed, " +
                seconds + " s\n";
    if (!summary.all_passed()) {
        doc.exit_code = exit_numerical;
    }
}

ReportDocument failure_report(const ReportDocument &header,
                              const std::exception &e) {
    ReportDocument failed = header;
    const auto *error = dynamic_cast<const Error *>(&e);
    const bool validation = error && error->kind() == ErrorKind::validation;
    failed.exit_code = validation ? exit_validation : exit_numerical;
    failed.add("status", "error");
    failed.add("error.kind", validation ? "validation" : "numerical");
    if (const auto *se = dynamic_cast<const ScenarioError *>(&e)) {
        failed.add("error.location", one_line(se->location()));
    }
    failed.add("error.message", one_line(e.what()));
    failed.human = std::string("error: ") + e.what() + "\n";
    return failed;
}

} // namespace

std::string_view to_string(Command command) {
    switch (command) {
    case Command::predict:
        return "predict";
    case Command::eval_quantum:
        return "eval-quantum";
    case Command::pipeline:
        return "pipeline";
    case Command::logic_demo:
        return "logic-demo";
    case Command::verify:
        return "verify";
    }
    return "unknown";
}

std::optional<Command> parse_command(std::string_view text) {
    for (Command c : {Command::predict, Command::eval_quantum, Command::pipeline,
                      Command::logic_demo, Command::verify}) {
        if (to_string(c) == text) {
            return c;
        }
    }
    return std::nullopt;
}

ReportDocument run_command(Command command,
                           const std::optional<ScenarioFile> &scenario,
                           const CommandOptions &options) {
    ReportDocument doc;
    doc.add("command", std::string(to_string(command)));
    if (scenario) {
        doc.add("scenario.kind", std::string(to_string(scenario->kind)));
    }
    const ReportDocument header = doc;
    try {
        options.tolerance.validate();
        switch (command) {
        case Command::predict:
            run_predict(doc, require_kind(scenario, ScenarioKind::prediction, command),
                        options);
            break;
        case Command::eval_quantum:
            run_eval_quantum(
                doc, require_kind(scenario, ScenarioKind::quantum, command), options);
            break;
        case Command::pipeline:
            run_pipeline_command(doc, scenario, options);
            break;
        case Command::logic_demo:
            run_logic_demo(doc, scenario, options);
            break;
        case Command::verify:
            run_verify(doc, scenario, options);
            break;
        }
        doc.add("status", doc.exit_code == exit_success ? "ok" : "invariant-violation");
        if (doc.exit_code != exit_success) {
            doc.human += "\nstatus: invariant violation\n";
        }
        return doc;
    } catch (const std::exception &e) {
        return failure_report(header, e);
    }
}

ReportDocument run_command_on_text(Command command,
                                   const std::optional<std::string> &scenario_text,
                                   const CommandOptions &options) {
    std::optional<ScenarioFile> scenario;
    if (scenario_text) {
        try {
            options.tolerance.validate();
            scenario = parse_scenario(*scenario_text, options.tolerance);
        } catch (const std::exception &e) {
            ReportDocument header;
            header.add("command", std::string(to_string(command)));
            return failure_report(header, e);
        }
    }
    return run_command(command, scenario, options);
}

} // namespace qdt

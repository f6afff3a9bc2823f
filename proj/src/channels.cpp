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

#include "qdt/channels.hpp"

#include <algorithm>
#include <cmath>

#include "qdt/error.hpp"
#include "qdt/probability.hpp"

namespace qdt {

namespace {

struct Cut {
    std::vector<std::size_t> complement;
    std::vector<std::size_t> measured;
};

Cut make_cut(std::span<const std::size_t> dims,
             std::span<const std::size_t> measured) {
    Cut cut;
    cut.measured.assign(measured.begin(), measured.end());
    std::sort(cut.measured.begin(), cut.measured.end());
    for (std::size_t f = 0; f < dims.size(); ++f) {
        if (!std::binary_search(cut.measured.begin(), cut.measured.end(), f)) {
            cut.complement.push_back(f);
        }
    }
    require(!cut.measured.empty() && !cut.complement.empty() &&
                cut.measured.back() < dims.size(),
            "measurement partition must be a nontrivial proper subset of "
            "factors");
    return cut;
}

std::vector<std::size_t> dims_of(std::span<const std::size_t> dims,
                                 const std::vector<std::size_t> &factors) {
    std::vector<std::size_t> out;
    for (std::size_t f : factors) {
        out.push_back(dims[f]);
    }
    return out;
}

// (complement part) (x) (measured part), reordered into the original factor
// order.
ComplexMatrix recombine(const ComplexMatrix &complement_part,
                        const ComplexMatrix &measured_part,
                        std::span<const std::size_t> dims, const Cut &cut) {
    const ComplexMatrix product = kron(complement_part, measured_part);
    std::vector<std::size_t> listed = cut.complement;
    listed.insert(listed.end(), cut.measured.begin(), cut.measured.end());
    const std::vector<std::size_t> listed_dims = dims_of(dims, listed);
    std::vector<std::size_t> order(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) {
        order[k] = static_cast<std::size_t>(
            std::find(listed.begin(), listed.end(), k) - listed.begin());
    }
    return permute_factors(product, listed_dims, order);
}

ComplexMatrix disentangle(const ComplexMatrix &rho,
                          std::span<const std::size_t> dims, const Cut &cut) {
    return recombine(partial_trace(rho, dims, cut.complement),
                     partial_trace(rho, dims, cut.measured), dims, cut);
}

ComplexMatrix maximally_mixed_matrix(std::size_t n) {
    return identity(n) / static_cast<double>(n);
}

void require_state_dims(const ComplexMatrix &m,
                        std::span<const std::size_t> dims) {
    require(dimension_product(dims) == static_cast<std::size_t>(m.rows()),
            "factorization mismatch");
}

} // namespace

std::string_view to_string(ChannelKind kind) {
    switch (kind) {
    case ChannelKind::entangling_preparation:
        return "preparation";
    case ChannelKind::unitary_evolution:
        return "evolution";
    case ChannelKind::disentangling_measurement:
        return "measurement";
    }
    return "unknown";
}

Channel::Channel(ChannelKind kind, ComplexMatrix unitary,
                 std::vector<std::size_t> measured, std::string label)
    : kind_(kind), unitary_(std::move(unitary)), measured_(std::move(measured)),
      label_(std::move(label)) {}

Channel Channel::preparation(ComplexMatrix unitary, std::string label,
                             const Tolerance &tol) {
    const auto n = static_cast<std::size_t>(unitary.rows());
    UnitaryOperator checked(HilbertSpace(n), std::move(unitary), tol);
    return Channel(ChannelKind::entangling_preparation, checked.matrix(), {},
                   std::move(label));
}

Channel Channel::evolution(ComplexMatrix unitary, std::string label,
                           const Tolerance &tol) {
    const auto n = static_cast<std::size_t>(unitary.rows());
    UnitaryOperator checked(HilbertSpace(n), std::move(unitary), tol);
    return Channel(ChannelKind::unitary_evolution, checked.matrix(), {},
                   std::move(label));
}

Channel Channel::measurement(std::vector<std::size_t> measured_factors,
                             std::string label) {
    std::sort(measured_factors.begin(), measured_factors.end());
    require(!measured_factors.empty(),
            "measurement partition must be a nontrivial proper subset of "
            "factors");
    require(std::adjacent_find(measured_factors.begin(),
                               measured_factors.end()) ==
                measured_factors.end(),
            "measured factor listed twice");
    return Channel(ChannelKind::disentangling_measurement, ComplexMatrix(),
                   std::move(measured_factors), std::move(label));
}

const ComplexMatrix &Channel::unitary() const {
    require(is_unitary(), "measurement channels carry no unitary");
    return unitary_;
}

DensityOperator apply_channel(const DensityOperator &state, const Channel &c,
                              std::span<const std::size_t> dims,
                              const Tolerance &tol) {
    require_state_dims(state.matrix(), dims);
    if (c.is_unitary()) {
        const ComplexMatrix &u = c.unitary();
        require(u.rows() == state.matrix().rows(),
                "channel does not match the state dimension");
        return DensityOperator(state.space(), u * state.matrix() * u.adjoint(),
                               tol);
    }
    const Cut cut = make_cut(dims, c.measured_factors());
    return DensityOperator(state.space(), disentangle(state.matrix(), dims, cut),
                           tol);
}

double product_defect(const ComplexMatrix &rho,
                      std::span<const std::size_t> dims,
                      std::span<const std::size_t> measured) {
    require_state_dims(rho, dims);
    return (rho - disentangle(rho, dims, make_cut(dims, measured))).norm();
}

ComplexMatrix apply_linear_map(const Channel &c,
                               std::span<const std::size_t> dims,
                               const ChoiOptions &options,
                               const ComplexMatrix &x) {
    require_state_dims(x, dims);
    if (c.is_unitary()) {
        const ComplexMatrix &u = c.unitary();
        require(u.rows() == x.rows(),
                "channel does not match the state dimension");
        return u * x * u.adjoint();
    }
    const Cut cut = make_cut(dims, c.measured_factors());
    const std::size_t dm = dimension_product(dims_of(dims, cut.measured));
    const std::size_t dc = dimension_product(dims_of(dims, cut.complement));
    const ComplexMatrix sigma_m =
        options.measured_state.value_or(maximally_mixed_matrix(dm));
    require(static_cast<std::size_t>(sigma_m.rows()) == dm,
            "replacement state does not match the measured factors");
    if (options.mode == MeasurementDual::replace_measured) {
        return recombine(partial_trace(x, dims, cut.complement), sigma_m, dims,
                         cut);
    }
    const ComplexMatrix sigma_c =
        options.complement_state.value_or(maximally_mixed_matrix(dc));
    require(static_cast<std::size_t>(sigma_c.rows()) == dc,
            "replacement state does not match the complement factors");
    return x.trace() * recombine(sigma_c, sigma_m, dims, cut);
}

DensityOperator choi_state(const Channel &c, std::span<const std::size_t> dims,
                           const ChoiOptions &options, const Tolerance &tol) {
    const std::size_t d = dimension_product(dims);
    require(d * d <= max_dimension,
            "dual state exceeds maximum supported dimension 4096");
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix dual = ComplexMatrix::Zero(n * n, n * n);
    ComplexMatrix unit = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            unit(i, j) = 1.0;
            dual.block(i * n, j * n, n, n) =
                apply_linear_map(c, dims, options, unit);
            unit(i, j) = 0.0;
        }
    }
    dual /= static_cast<double>(d);
    return DensityOperator(HilbertSpace(d * d), dual, tol);
}

MeasurementPipeline::MeasurementPipeline(std::array<std::size_t, 3> dims,
                                         std::vector<Channel> steps,
                                         std::vector<double> timestamps)
    : dims_(dims), steps_(std::move(steps)),
      timestamps_(std::move(timestamps)) {
    (void)dimension_product(dims_);
    require(steps_.size() == 5, "pipeline needs exactly five channels");
    require(timestamps_.size() == 5, "pipeline needs five timestamps");
    for (std::size_t k = 0; k < timestamps_.size(); ++k) {
        require(std::isfinite(timestamps_[k]),
                "pipeline timestamps must be finite");
        require(k == 0 || timestamps_[k] > timestamps_[k - 1],
                "pipeline timestamps must be strictly increasing");
    }
    const ChannelKind expected[] = {
        ChannelKind::entangling_preparation, ChannelKind::unitary_evolution,
        ChannelKind::disentangling_measurement, ChannelKind::unitary_evolution,
        ChannelKind::disentangling_measurement};
    const std::size_t total = total_dimension();
    for (std::size_t k = 0; k < 5; ++k) {
        require(steps_[k].kind() == expected[k],
                "pipeline steps must follow preparation, evolution, "
                "B-measurement, evolution, A-measurement");
        if (steps_[k].is_unitary()) {
            require(static_cast<std::size_t>(steps_[k].unitary().rows()) ==
                        total,
                    "pipeline unitary does not match the total dimension");
        }
    }
    // Either side of the cut may be named.
    const auto cut_is = [](const Channel &c, std::vector<std::size_t> a,
                           std::vector<std::size_t> b) {
        return c.measured_factors() == a || c.measured_factors() == b;
    };
    require(cut_is(steps_[2], {1}, {0, 2}),
            "step 3 must disentangle B from AM");
    require(cut_is(steps_[4], {0}, {1, 2}),
            "step 5 must disentangle A from BM");
}

MeasurementPipeline MeasurementPipeline::standard(
    std::array<std::size_t, 3> dims, ComplexMatrix preparation,
    ComplexMatrix first_evolution, ComplexMatrix second_evolution,
    std::vector<double> timestamps, const Tolerance &tol) {
    std::vector<Channel> steps;
    steps.push_back(Channel::preparation(std::move(preparation),
                                         "C1 preparation", tol));
    steps.push_back(Channel::evolution(std::move(first_evolution),
                                       "C2 evolution", tol));
    steps.push_back(Channel::measurement({1}, "C3 B-measurement"));
    steps.push_back(Channel::evolution(std::move(second_evolution),
                                       "C4 evolution", tol));
    steps.push_back(Channel::measurement({0}, "C5 A-measurement"));
    return MeasurementPipeline(dims, std::move(steps), std::move(timestamps));
}

Trajectory run_pipeline(const MeasurementPipeline &p,
                        const std::array<DensityOperator, 3> &initial,
                        const Tolerance &tol) {
    std::vector<ComplexMatrix> factors;
    for (std::size_t k = 0; k < 3; ++k) {
        require(initial[k].dimension() == p.dims()[k],
                "initial factor state does not match its space");
        factors.push_back(initial[k].matrix());
    }
    const HilbertSpace total(p.total_dimension());
    Trajectory t{DensityOperator(total, kron_all(factors), tol), {}};
    const DensityOperator *current = &t.initial;
    t.steps.reserve(p.steps().size());
    for (const Channel &c : p.steps()) {
        t.steps.push_back(apply_channel(*current, c, p.dims(), tol));
        current = &t.steps.back();
    }
    return t;
}

std::vector<DensityOperator> pipeline_choi_states(const MeasurementPipeline &p,
                                                  const Trajectory &t,
                                                  const Tolerance &tol) {
    require(t.steps.size() == p.steps().size(),
            "trajectory does not match the pipeline");
    std::vector<DensityOperator> duals;
    for (std::size_t k = 0; k < p.steps().size(); ++k) {
        const Channel &c = p.steps()[k];
        ChoiOptions options;
        if (!c.is_unitary()) {
            const ComplexMatrix &input =
                k == 0 ? t.initial.matrix() : t.steps[k - 1].matrix();
            options.measured_state =
                partial_trace(input, p.dims(), c.measured_factors());
        }
        duals.push_back(choi_state(c, p.dims(), options, tol));
    }
    return duals;
}

PipelineAudit audit_pipeline(const MeasurementPipeline &p, const Trajectory &t,
                             const Tolerance &tol) {
    require(t.steps.size() == 5, "trajectory does not match the pipeline");
    PipelineAudit audit;
    for (const DensityOperator &s : t.steps) {
        audit.trace_defects.push_back(
            std::abs(s.matrix().trace() - Complex(1.0)));
    }
    const std::size_t b_only[] = {1};
    const std::size_t a_only[] = {0};
    audit.post_b_product_defect =
        product_defect(t.steps[2].matrix(), p.dims(), b_only);
    audit.post_a_product_defect =
        product_defect(t.steps[4].matrix(), p.dims(), a_only);
    for (const DensityOperator &dual : pipeline_choi_states(p, t, tol)) {
        audit.choi_min_eigenvalues.push_back(
            eig_hermitian(dual.matrix(), tol).values.front());
    }
    return audit;
}

DensityOperator composite_state(const MeasurementPipeline &p,
                                const Trajectory &t, const Tolerance &tol) {
    require(!t.steps.empty(), "empty trajectory");
    const std::size_t keep_ab[] = {0, 1};
    return DensityOperator(HilbertSpace(p.dims()[0] * p.dims()[1]),
                           partial_trace(t.steps.back().matrix(), p.dims(),
                                         keep_ab),
                           tol);
}

LudersComparison compare_with_luders(const MeasurementPipeline &p,
                                     const Trajectory &t,
                                     std::size_t outcome_a,
                                     std::size_t outcome_b,
                                     const Tolerance &tol) {
    require(t.steps.size() == 5, "trajectory does not match the pipeline");
    const HilbertSpace space_a(p.dims()[0]);
    const HilbertSpace space_b(p.dims()[1]);
    const EventOperator pa = projector(space_a, {outcome_a});
    const EventOperator pb = projector(space_b, {outcome_b});

    LudersComparison out;
    out.pipeline_probability =
        conditional_probability(composite_state(p, t, tol), pa, pb, tol);

    const std::size_t keep_ab[] = {0, 1};
    const HilbertSpace space_ab = tensor(space_a, space_b);
    const DensityOperator before(
        space_ab, partial_trace(t.steps[1].matrix(), p.dims(), keep_ab), tol);
    const EventOperator first(
        space_ab, kron(identity(p.dims()[0]), pb.matrix()),
        EventKind::projector, tol);
    const EventOperator second(
        space_ab, kron(pa.matrix(), identity(p.dims()[1])),
        EventKind::projector, tol);
    out.luders_probability =
        luders_probability(SequentialPair(before, first, second, tol), tol);
    out.difference = out.pipeline_probability - out.luders_probability;
    return out;
}

} // namespace qdt

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

#include "qdt/random.hpp"

#include <cmath>

#include "qdt/error.hpp"

namespace qdt {

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    require(rows > 0 && cols > 0, "random matrix dimensions must be positive");
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

DensityOperator random_density(std::size_t dim, Rng &rng) {
    const ComplexMatrix g = random_ginibre(dim, dim, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOperator(HilbertSpace(dim), rho);
}

UnitaryOperator random_unitary(std::size_t dim, Rng &rng) {
    const Eigen::MatrixXcd g = random_ginibre(dim, dim, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const Complex d = r(k, k);
        if (std::abs(d) > 0.0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return UnitaryOperator(HilbertSpace(dim), q);
}

StateVector random_state(std::size_t dim, Rng &rng) {
    ComplexVector v = random_ginibre(dim, 1, rng).col(0);
    v.normalize();
    return StateVector(HilbertSpace(dim), v);
}

ComplexMatrix random_hermitian(std::size_t dim, Rng &rng) {
    return hermitian_part(random_ginibre(dim, dim, rng));
}

} // namespace qdt

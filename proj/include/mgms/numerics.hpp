// mgms — joint group scheduling and multicast beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>
#include <vector>

#include "mgms/errors.hpp"

namespace mgms {

// Harmonic mean of strictly positive values.
// Errors: empty input or any value <= 0 -> std::invalid_argument.
double harmonic_mean(const std::vector<double>& values);

// Canonical representative of a direction: unit norm, with the global phase
// rotated so the first entry whose magnitude exceeds a negligible threshold
// is real and positive.  Collinear inputs map to the same point, so Euclidean
// distances between aligned vectors ignore global phase.
// Errors: zero or non-finite input -> DegenerateDirectionError.
Eigen::VectorXcd phase_align(const Eigen::VectorXcd& v);

// Hermitian positive definite matrix with a cached Cholesky factorization.
// Construction validates Hermitian symmetry and factors the matrix once;
// solve() then runs two triangular substitutions per right-hand side.
// Errors: non-Hermitian input -> std::invalid_argument;
//         non-positive pivot  -> SingularityError carrying the pivot index.
class HpdMatrix {
public:
    explicit HpdMatrix(Eigen::MatrixXcd m);

    int dimension() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const Eigen::MatrixXcd& cholesky_lower() const { return lower_; }

    Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs) const;
    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const;

private:
    Eigen::MatrixXcd matrix_;
    Eigen::MatrixXcd lower_;
};

// Growing orthonormal basis built by Gram-Schmidt with one re-orthogonalization
// pass per append (classical Gram-Schmidt applied twice, which restores
// orthogonality to working precision).
class OrthonormalBasis {
public:
    explicit OrthonormalBasis(int dimension);

    int dimension() const { return dimension_; }
    int size() const { return static_cast<int>(vectors_.cols()); }
    const Eigen::MatrixXcd& vectors() const { return vectors_; }

    // Appends the normalized component of v orthogonal to the current span and
    // returns it.  Errors: residual norm <= 1e-12 * ||v|| (v numerically in
    // the span, or zero) -> DegenerateDirectionError.
    Eigen::VectorXcd append(const Eigen::VectorXcd& v);

private:
    int dimension_;
    Eigen::MatrixXcd vectors_;
};

} // namespace mgms

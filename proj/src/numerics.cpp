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

#include "mgms/numerics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace mgms {

double harmonic_mean(const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("harmonic_mean: empty input");
    }
    double inv_sum = 0.0;
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("harmonic_mean: values must be positive");
        }
        inv_sum += 1.0 / v;
    }
    return static_cast<double>(values.size()) / inv_sum;
}

Eigen::VectorXcd phase_align(const Eigen::VectorXcd& v) {
    double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw DegenerateDirectionError("phase_align: zero or non-finite input");
    }
    Eigen::VectorXcd u = v / norm;
    constexpr double negligible = 1e-12;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        double mag = std::abs(u(k));
        if (mag > negligible) {
            u *= std::conj(u(k)) / mag;
            return u;
        }
    }
    // Unit norm with every entry negligible cannot happen for finite sizes,
    // but guard against pathological inputs anyway.
    throw DegenerateDirectionError("phase_align: no entry above threshold");
}

namespace {

// In-place complex Cholesky, lower triangular.  Returns the index of the
// first non-positive (or non-finite) pivot, or -1 on success.
int factor_cholesky_lower(Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        double diag = a(j, j).real();
        if (j > 0) {
            diag -= a.row(j).head(j).squaredNorm();
        }
        if (!(diag > 0.0) || !std::isfinite(diag)) {
            return static_cast<int>(j);
        }
        double root = std::sqrt(diag);
        a(j, j) = root;
        if (j + 1 < n) {
            auto below = a.block(j + 1, j, n - j - 1, 1);
            if (j > 0) {
                below.noalias() -=
                    a.block(j + 1, 0, n - j - 1, j) * a.row(j).head(j).adjoint();
            }
            below /= root;
        }
    }
    a.triangularView<Eigen::StrictlyUpper>().setZero();
    return -1;
}

} // namespace

HpdMatrix::HpdMatrix(Eigen::MatrixXcd m) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("HpdMatrix: matrix must be square");
    }
    double scale = matrix_.cwiseAbs().maxCoeff();
    double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= 1e-10 * (1.0 + scale))) {
        throw std::invalid_argument("HpdMatrix: matrix is not Hermitian");
    }
    lower_ = matrix_;
    int pivot = factor_cholesky_lower(lower_);
    if (pivot >= 0) {
        throw SingularityError("HpdMatrix: matrix is not positive definite", pivot);
    }
}

Eigen::MatrixXcd HpdMatrix::solve(const Eigen::MatrixXcd& rhs) const {
    if (rhs.rows() != matrix_.rows()) {
        throw std::invalid_argument("HpdMatrix::solve: dimension mismatch");
    }
    Eigen::MatrixXcd x = lower_.triangularView<Eigen::Lower>().solve(rhs);
    lower_.triangularView<Eigen::Lower>().adjoint().solveInPlace(x);
    return x;
}

Eigen::VectorXcd HpdMatrix::solve(const Eigen::VectorXcd& rhs) const {
    return Eigen::VectorXcd(solve(Eigen::MatrixXcd(rhs)));
}

OrthonormalBasis::OrthonormalBasis(int dimension) : dimension_(dimension) {
    if (dimension < 1) {
        throw std::invalid_argument("OrthonormalBasis: dimension must be positive");
    }
    vectors_.resize(dimension, 0);
}

Eigen::VectorXcd OrthonormalBasis::append(const Eigen::VectorXcd& v) {
    if (v.size() != dimension_) {
        throw std::invalid_argument("OrthonormalBasis::append: dimension mismatch");
    }
    Eigen::VectorXcd r = v;
    if (size() > 0) {
        r.noalias() -= vectors_ * (vectors_.adjoint() * v);
        // Second pass restores orthogonality lost to cancellation.
        r.noalias() -= vectors_ * (vectors_.adjoint() * r);
    }
    double rnorm = r.norm();
    if (!(rnorm > 1e-12 * v.norm()) || rnorm == 0.0) {
        throw DegenerateDirectionError(
            "OrthonormalBasis::append: vector lies in the current span");
    }
    r /= rnorm;
    vectors_.conservativeResize(Eigen::NoChange, size() + 1);
    vectors_.col(size() - 1) = r;
    return r;
}

} // namespace mgms

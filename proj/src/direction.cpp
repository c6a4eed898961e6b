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

#include "mgms/direction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mgms/numerics.hpp"

namespace mgms {

Eigen::MatrixXcd approx_group_covariance(const Eigen::MatrixXcd& fading,
                                         const Eigen::VectorXd& beta,
                                         double power, double noise) {
    if (fading.cols() != beta.size() || fading.cols() == 0) {
        throw std::invalid_argument("approx_group_covariance: shape mismatch");
    }
    if (!(power >= 0.0) || !(noise > 0.0)) {
        throw std::invalid_argument("approx_group_covariance: bad power or noise");
    }
    std::vector<double> b(beta.data(), beta.data() + beta.size());
    double beta_h = harmonic_mean(b);
    double users = static_cast<double>(fading.cols());
    double coef = power * beta_h / (noise * users);
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(fading.rows(), fading.rows());
    r.noalias() += coef * (fading * fading.adjoint());
    return r;
}

namespace {

// Projected subgradient ascent for max_a min_k |a^H b_k|^2 subject to
// a^H M a <= P, with M Hermitian positive definite.  Iterates live on the
// power boundary (the objective is monotone in scale); steps follow the
// active user's gradient, normalized and sized relative to the iterate norm.
struct AscentResult {
    Eigen::VectorXcd weights;
    double objective = -std::numeric_limits<double>::infinity();
};

double min_gain(const Eigen::MatrixXcd& b, const Eigen::VectorXcd& a, int* active) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Eigen::Index k = 0; k < b.cols(); ++k) {
        double g = std::norm(b.col(k).dot(a));
        if (g < best) {
            best = g;
            arg = static_cast<int>(k);
        }
    }
    if (active != nullptr) {
        *active = arg;
    }
    return best;
}

AscentResult ascend_from(const Eigen::VectorXcd& start, const Eigen::MatrixXcd& b,
                         const Eigen::MatrixXcd& m, double power,
                         const PsaSettings& settings, PsaTrace* trace) {
    auto project = [&](Eigen::VectorXcd& a) {
        double p = (a.adjoint() * (m * a)).real()(0);
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw DegenerateDirectionError(
                "group direction ascent: weights carry no transmit power");
        }
        a *= std::sqrt(power / p);
    };

    Eigen::VectorXcd a = start;
    project(a);
    AscentResult best{a, min_gain(b, a, nullptr)};
    if (trace != nullptr) {
        trace->best_objective.push_back(best.objective);
    }

    double window_base = best.objective;
    int window_left = settings.improvement_window;
    for (int l = 1; l <= settings.max_iterations; ++l) {
        int active = 0;
        double f = min_gain(b, a, &active);
        // Subgradient of the worst user's power-normalized gain on the
        // boundary a^H M a = P.  Without the -(f/P) M a term a raw-gain step
        // can raise transmit power faster than gain and stall after the
        // radial projection.
        Eigen::VectorXcd grad = b.col(active) * b.col(active).dot(a) -
                                (f / power) * (m * a);
        // The two terms cancel exactly at a boundary-stationary point;
        // treating their rounding residue as a direction would step along
        // noise, and a noise step of relative size 1 can cancel `a` itself.
        double ref = b.col(active).squaredNorm() * a.squaredNorm();
        double gnorm = grad.norm();
        if (!(gnorm * gnorm > 1e-24 * ref)) {
            break; // stationary on the power boundary
        }
        double step = settings.initial_step / std::sqrt(static_cast<double>(l));
        a += step * (a.norm() / gnorm) * grad;
        project(a);
        double value = min_gain(b, a, nullptr);
        if (value > best.objective) {
            best.objective = value;
            best.weights = a;
        }
        if (trace != nullptr) {
            trace->best_objective.push_back(best.objective);
        }
        if (--window_left == 0) {
            if (best.objective - window_base <=
                settings.improvement_tol * std::abs(window_base)) {
                break;
            }
            window_base = best.objective;
            window_left = settings.improvement_window;
        }
    }
    return best;
}

} // namespace

GroupDirection solve_group_direction(int group, const ChannelSet& channels,
                                     double power, double noise,
                                     const PsaSettings& settings,
                                     PsaTrace* trace) {
    settings.validate();
    if (group < 0 || group >= channels.num_groups()) {
        throw std::invalid_argument("solve_group_direction: group out of range");
    }
    if (!(power > 0.0) || !(noise > 0.0)) {
        throw std::invalid_argument("solve_group_direction: bad power or noise");
    }
    const Eigen::MatrixXcd& h = channels.channels[group];
    const Eigen::VectorXd& beta = channels.beta[group];
    const int users = static_cast<int>(h.cols());

    HpdMatrix rt(approx_group_covariance(channels.fading[group], beta, power, noise));
    // Whitened beamformer basis: w = Rt^{-1} H a, so the gain against user k
    // is a^H b_k with b_k = (Rt^{-1} H)^H h_k, and the power is a^H M a.
    Eigen::MatrixXcd wbasis = rt.solve(h);
    Eigen::MatrixXcd b = wbasis.adjoint() * h;
    Eigen::MatrixXcd m = wbasis.adjoint() * wbasis;

    // Deterministic restarts: the inverse-gain weighting that balances users
    // in the vanishing-interference regime, each canonical basis vector, and a
    // fixed batch of pseudo-random starts (seeded by the group size only, so
    // identical inputs keep identical outputs) to cover basins the structured
    // starts miss.
    std::vector<Eigen::VectorXcd> starts;
    Eigen::VectorXcd q(users);
    for (int k = 0; k < users; ++k) {
        q(k) = 1.0 / beta(k);
    }
    starts.push_back(q);
    if (users > 1) {
        for (int k = 0; k < users; ++k) {
            starts.push_back(Eigen::VectorXcd::Unit(users, k));
        }
        // Screen a wide batch of pseudo-random weight vectors by the
        // scale-invariant objective and keep the most promising few, so the
        // full ascents start from every strong basin without paying for a
        // full run per sample.
        RngStream restarts(derive_seed(0x5EED, {static_cast<std::uint64_t>(users)}));
        std::vector<std::pair<double, Eigen::VectorXcd>> screened;
        screened.reserve(64);
        for (int r = 0; r < 64; ++r) {
            Eigen::VectorXcd v(users);
            for (int k = 0; k < users; ++k) {
                v(k) = restarts.complex_normal();
            }
            double denom = (v.adjoint() * (m * v)).real()(0);
            if (!(denom > 0.0)) {
                continue;
            }
            double value = min_gain(b, v, nullptr) * power / denom;
            screened.emplace_back(value, std::move(v));
        }
        std::partial_sort(screened.begin(),
                          screened.begin() +
                              std::min<std::ptrdiff_t>(6, screened.size()),
                          screened.end(), [](const auto& x, const auto& y) {
                              return x.first > y.first;
                          });
        for (size_t r = 0; r < screened.size() && r < 6; ++r) {
            starts.push_back(std::move(screened[r].second));
        }
    }

    // Later starts replace the incumbent only on a real improvement (not a
    // rounding hair), so structurally meaningful starts win exact ties.
    AscentResult best;
    bool first = true;
    for (const auto& s : starts) {
        AscentResult r = ascend_from(s, b, m, power, settings, trace);
        if (first || r.objective > best.objective * (1.0 + 1e-9)) {
            best = r;
        }
        first = false;
    }

    // Fine-step polish from the best basin: the sqrt-decay schedule explores
    // well but stops short of tight local accuracy.
    for (double shrink : {0.05, 0.01, 0.002}) {
        PsaSettings fine = settings;
        fine.initial_step = shrink * settings.initial_step;
        AscentResult polished = ascend_from(best.weights, b, m, power, fine, trace);
        if (polished.objective > best.objective) {
            best = polished;
        }
    }
    if (trace != nullptr) {
        // The trace concatenates every restart; report it as the running best
        // so it reads as one non-decreasing convergence record.
        double running = -std::numeric_limits<double>::infinity();
        for (double& v : trace->best_objective) {
            running = std::max(running, v);
            v = running;
        }
    }

    GroupDirection out;
    out.group = group;
    out.weights = best.weights;
    out.direction = h * best.weights;
    out.min_gain = best.objective;
    return out;
}

std::vector<GroupDirection> all_group_directions(const ChannelSet& channels,
                                                 double power, double noise,
                                                 const PsaSettings& settings) {
    std::vector<GroupDirection> out;
    out.reserve(channels.num_groups());
    for (int i = 0; i < channels.num_groups(); ++i) {
        out.push_back(solve_group_direction(i, channels, power, noise, settings));
    }
    return out;
}

} // namespace mgms

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

#include "mgms/beamforming.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>

#include "mgms/numerics.hpp"

namespace mgms {

namespace {

void check_groups(const ChannelSet& channels, const std::vector<int>& groups) {
    if (groups.empty()) {
        throw std::invalid_argument("beamforming: empty group set");
    }
    for (int g : groups) {
        if (g < 0 || g >= channels.num_groups()) {
            throw std::invalid_argument("beamforming: group index out of range");
        }
    }
}

} // namespace

std::vector<std::vector<double>> evaluate_sinr(const Eigen::MatrixXcd& beamformers,
                                               const std::vector<int>& groups,
                                               const ChannelSet& channels,
                                               double noise) {
    check_groups(channels, groups);
    if (beamformers.cols() != static_cast<Eigen::Index>(groups.size())) {
        throw std::invalid_argument("evaluate_sinr: one beamformer column per group required");
    }
    if (beamformers.rows() != channels.num_antennas()) {
        throw std::invalid_argument("evaluate_sinr: antenna count mismatch");
    }
    if (!(noise > 0.0)) {
        throw std::invalid_argument("evaluate_sinr: noise must be positive");
    }
    const int m = static_cast<int>(groups.size());
    std::vector<std::vector<double>> sinr(m);
    for (int gi = 0; gi < m; ++gi) {
        const Eigen::MatrixXcd& h = channels.channels[groups[gi]];
        // gains(j, k) = |w_j^H h_k|^2 for user k of this group.
        Eigen::MatrixXd gains = (beamformers.adjoint() * h).cwiseAbs2();
        sinr[gi].resize(h.cols());
        for (Eigen::Index k = 0; k < h.cols(); ++k) {
            double interference = gains.col(k).sum() - gains(gi, k);
            sinr[gi][k] = gains(gi, k) / (interference + noise);
        }
    }
    return sinr;
}

HpdMatrix pooled_covariance(const ChannelSet& channels,
                            const std::vector<int>& groups, double power,
                            double noise) {
    check_groups(channels, groups);
    if (!(power >= 0.0) || !(noise > 0.0)) {
        throw std::invalid_argument("pooled_covariance: bad power or noise");
    }
    std::vector<double> all_beta;
    int total_users = 0;
    for (int g : groups) {
        const Eigen::VectorXd& beta = channels.beta[g];
        all_beta.insert(all_beta.end(), beta.data(), beta.data() + beta.size());
        total_users += static_cast<int>(beta.size());
    }
    double beta_h = harmonic_mean(all_beta);
    double coef = power * beta_h / (noise * static_cast<double>(total_users));
    const int n = channels.num_antennas();
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(n, n);
    for (int g : groups) {
        r.noalias() += coef * (channels.fading[g] * channels.fading[g].adjoint());
    }
    return HpdMatrix(std::move(r));
}

Eigen::MatrixXcd asymptotic_beamformers(const ChannelSet& channels,
                                        const std::vector<int>& groups,
                                        double power, double noise) {
    check_groups(channels, groups);
    if (!(power > 0.0)) {
        throw std::invalid_argument("asymptotic_beamformers: power must be positive");
    }
    HpdMatrix rb = pooled_covariance(channels, groups, power, noise);
    const int m = static_cast<int>(groups.size());
    const int n = channels.num_antennas();

    Eigen::MatrixXcd w(n, m);
    std::vector<double> inv_gain_sum(m);   // s_j = sum_k 1/beta_jk
    std::vector<double> shaped_norm2(m);   // ||Rb^{-1} H_j q_j||^2
    for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd& beta = channels.beta[groups[j]];
        Eigen::VectorXcd q(beta.size());
        double s = 0.0;
        for (Eigen::Index k = 0; k < beta.size(); ++k) {
            q(k) = 1.0 / beta(k);
            s += 1.0 / beta(k);
        }
        Eigen::VectorXcd shaped = rb.solve(Eigen::VectorXcd(channels.channels[groups[j]] * q));
        inv_gain_sum[j] = s;
        shaped_norm2[j] = shaped.squaredNorm();
        w.col(j) = shaped;
    }
    double denom = 0.0;
    for (int j = 0; j < m; ++j) {
        denom += inv_gain_sum[j] * shaped_norm2[j];
    }
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw std::invalid_argument("asymptotic_beamformers: degenerate channels");
    }
    for (int j = 0; j < m; ++j) {
        w.col(j) *= std::sqrt(power * inv_gain_sum[j] / denom);
    }
    return w;
}

double asymptotic_min_sinr(const ChannelSet& channels,
                           const std::vector<int>& groups, double power,
                           double noise) {
    Eigen::MatrixXcd w = asymptotic_beamformers(channels, groups, power, noise);
    auto sinr = evaluate_sinr(w, groups, channels, noise);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& group_sinr : sinr) {
        for (double s : group_sinr) {
            worst = std::min(worst, s);
        }
    }
    return worst;
}

namespace {

// Shared state for the per-slot max-min solves.  Collects, per served group j
// and per served user u, the projection r_{j,u} = (Rb^{-1} H_j)^H h_u that
// turns beamformer inner products into weight-space inner products.
struct SlotProblem {
    const ChannelSet* channels = nullptr;
    std::vector<int> groups;
    double power = 0.0;
    double noise = 0.0;
    int antennas = 0;
    std::vector<Eigen::MatrixXcd> shaped;   // B_j = Rb^{-1} H_j
    std::vector<Eigen::MatrixXcd> gram;     // M_j = B_j^H B_j
    // user_group[u] = position (within groups) of user u's own group;
    // user_channel[u] = h_u.
    std::vector<int> user_group;
    std::vector<Eigen::VectorXcd> user_channel;
    // proj[j][u] = B_j^H h_u.
    std::vector<std::vector<Eigen::VectorXcd>> proj;

    int num_users() const { return static_cast<int>(user_channel.size()); }
};

SlotProblem build_slot_problem(const ChannelSet& channels,
                               const std::vector<int>& groups, double power,
                               double noise) {
    SlotProblem p;
    p.channels = &channels;
    p.groups = groups;
    p.power = power;
    p.noise = noise;
    p.antennas = channels.num_antennas();
    HpdMatrix rb = pooled_covariance(channels, groups, power, noise);
    const int m = static_cast<int>(groups.size());
    p.shaped.reserve(m);
    p.gram.reserve(m);
    for (int j = 0; j < m; ++j) {
        Eigen::MatrixXcd b = rb.solve(channels.channels[groups[j]]);
        p.gram.push_back(b.adjoint() * b);
        p.shaped.push_back(std::move(b));
    }
    for (int j = 0; j < m; ++j) {
        const Eigen::MatrixXcd& h = channels.channels[groups[j]];
        for (Eigen::Index k = 0; k < h.cols(); ++k) {
            p.user_group.push_back(j);
            p.user_channel.push_back(h.col(k));
        }
    }
    p.proj.resize(m);
    for (int j = 0; j < m; ++j) {
        p.proj[j].reserve(p.num_users());
        for (int u = 0; u < p.num_users(); ++u) {
            p.proj[j].push_back(p.shaped[j].adjoint() * p.user_channel[u]);
        }
    }
    return p;
}

// Weight-space SINR of user u: |a_i^H r_{i,u}|^2 over interference plus noise.
double weight_min_sinr(const SlotProblem& p,
                       const std::vector<Eigen::VectorXcd>& a, int* active) {
    double worst = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int u = 0; u < p.num_users(); ++u) {
        double signal = 0.0;
        double interference = 0.0;
        for (size_t j = 0; j < a.size(); ++j) {
            double g = std::norm(p.proj[j][u].dot(a[j]));
            if (static_cast<int>(j) == p.user_group[u]) {
                signal = g;
            } else {
                interference += g;
            }
        }
        double s = signal / (interference + p.noise);
        if (s < worst) {
            worst = s;
            arg = u;
        }
    }
    if (active != nullptr) {
        *active = arg;
    }
    return worst;
}

void weight_project(const SlotProblem& p, std::vector<Eigen::VectorXcd>& a) {
    double total = 0.0;
    for (size_t j = 0; j < a.size(); ++j) {
        total += (a[j].adjoint() * (p.gram[j] * a[j])).real()(0);
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw DegenerateDirectionError("slot solver: weights carry no transmit power");
    }
    double scale = std::sqrt(p.power / total);
    for (auto& aj : a) {
        aj *= scale;
    }
}

// Start of the structured stage: the closed-form solution lies in the
// structured family, its weights are c_j q_j; recovered directly from q to
// avoid re-solving.
std::vector<Eigen::VectorXcd> structured_start(const SlotProblem& p) {
    const int m = static_cast<int>(p.groups.size());
    std::vector<Eigen::VectorXcd> a(m);
    Eigen::MatrixXcd w0 =
        asymptotic_beamformers(*p.channels, p.groups, p.power, p.noise);
    for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd& beta = p.channels->beta[p.groups[j]];
        Eigen::VectorXcd q(beta.size());
        for (Eigen::Index k = 0; k < beta.size(); ++k) {
            q(k) = 1.0 / beta(k);
        }
        double qnorm2 = (q.adjoint() * (p.gram[j] * q)).real()(0);
        double wnorm2 = w0.col(j).squaredNorm();
        a[j] = q * std::sqrt(wnorm2 / qnorm2);
    }
    weight_project(p, a);
    return a;
}

// Stage 1: subgradient ascent over the structured family w_j = B_j a_j,
// keeping the best feasible iterate.  Steps follow the active user's SINR
// supergradient projected onto the tangent space of the power boundary
// sum_j a_j^H M_j a_j = P, so the radial re-projection is a second-order
// correction rather than a head wind.
std::vector<Eigen::VectorXcd> structured_ascent(
    const SlotProblem& p, const std::vector<Eigen::VectorXcd>& start,
    const PsaSettings& settings, PsaTrace* trace) {
    const int m = static_cast<int>(p.groups.size());
    std::vector<Eigen::VectorXcd> a = start;
    weight_project(p, a);

    std::vector<Eigen::VectorXcd> best = a;
    double best_f = weight_min_sinr(p, a, nullptr);
    if (trace != nullptr) {
        trace->best_objective.push_back(best_f);
    }
    double window_base = best_f;
    int window_left = settings.improvement_window;
    std::vector<Eigen::VectorXcd> grad(m), normal(m);
    for (int l = 1; l <= settings.max_iterations; ++l) {
        int active = 0;
        weight_min_sinr(p, a, &active);
        // Supergradient of the active user's SINR with respect to each a_j.
        const int own = p.user_group[active];
        double signal = std::norm(p.proj[own][active].dot(a[own]));
        double denom = p.noise;
        for (int j = 0; j < m; ++j) {
            if (j != own) {
                denom += std::norm(p.proj[j][active].dot(a[j]));
            }
        }
        double anorm2 = 0.0;
        for (int j = 0; j < m; ++j) {
            const Eigen::VectorXcd& r = p.proj[j][active];
            std::complex<double> inner = r.dot(a[j]);
            if (j == own) {
                grad[j] = (1.0 / denom) * (r * inner);
            } else {
                grad[j] = -(signal / (denom * denom)) * (r * inner);
            }
            normal[j] = p.gram[j] * a[j];
            anorm2 += a[j].squaredNorm();
        }
        // Project out the component along the constraint normal {M_j a_j}.
        double along = 0.0, nn = 0.0, raw2 = 0.0;
        for (int j = 0; j < m; ++j) {
            along += normal[j].dot(grad[j]).real();
            nn += normal[j].squaredNorm();
            raw2 += grad[j].squaredNorm();
        }
        double gnorm2 = 0.0;
        for (int j = 0; j < m; ++j) {
            grad[j] -= (along / nn) * normal[j];
            gnorm2 += grad[j].squaredNorm();
        }
        // A tangent component at rounding level of the raw gradient means the
        // iterate is stationary on the power boundary; stepping along that
        // noise (normalized to step * ||a||) could land exactly on zero.
        if (!(gnorm2 > 1e-24 * raw2)) {
            break;
        }
        double step = settings.initial_step / std::sqrt(static_cast<double>(l));
        double scale = step * std::sqrt(anorm2 / gnorm2);
        for (int j = 0; j < m; ++j) {
            a[j] += scale * grad[j];
        }
        weight_project(p, a);
        double f = weight_min_sinr(p, a, nullptr);
        if (f > best_f) {
            best_f = f;
            best = a;
        }
        if (trace != nullptr) {
            trace->best_objective.push_back(best_f);
        }
        if (--window_left == 0) {
            if (best_f - window_base <= settings.improvement_tol * std::abs(window_base)) {
                break;
            }
            window_base = best_f;
            window_left = settings.improvement_window;
        }
    }
    return best;
}

double full_min_sinr(const SlotProblem& p, const Eigen::MatrixXcd& w, int* active) {
    double worst = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int u = 0; u < p.num_users(); ++u) {
        Eigen::VectorXd gains = (w.adjoint() * p.user_channel[u]).cwiseAbs2();
        double own = gains(p.user_group[u]);
        double interference = gains.sum() - own;
        double s = own / (interference + p.noise);
        if (s < worst) {
            worst = s;
            arg = u;
        }
    }
    if (active != nullptr) {
        *active = arg;
    }
    return worst;
}

// Stage 2: subgradient ascent directly over the stacked beamformer columns.
// The structured family fixes each group's beam inside the span of its own
// shaped channels, which is lossless for a slot serving one group but can
// miss the optimum when interference must be steered with few antennas;
// refining in full space closes that gap while never reducing the objective.
Eigen::MatrixXcd full_space_ascent(const SlotProblem& p, const Eigen::MatrixXcd& start,
                                   const PsaSettings& settings) {
    Eigen::MatrixXcd w = start;
    auto project = [&](Eigen::MatrixXcd& x) {
        double total = x.squaredNorm();
        if (!(total > 0.0) || !std::isfinite(total)) {
            throw DegenerateDirectionError("slot solver: beamformers carry no power");
        }
        x *= std::sqrt(p.power / total);
    };
    project(w);
    const int nu = static_cast<int>(p.user_channel.size());
    auto sinr_grad = [&](int user) {
        const Eigen::VectorXcd& h = p.user_channel[user];
        const int own = p.user_group[user];
        Eigen::VectorXcd inner = w.adjoint() * h; // inner(j) = w_j^H h
        double signal = std::norm(inner(own));
        double denom = inner.cwiseAbs2().sum() - signal + p.noise;
        Eigen::MatrixXcd g(w.rows(), w.cols());
        // d|w_j^H h|^2 / dw_j* = h (h^H w_j) = h conj(inner(j)).
        for (Eigen::Index j = 0; j < w.cols(); ++j) {
            if (static_cast<int>(j) == own) {
                g.col(j) = (1.0 / denom) * (h * std::conj(inner(j)));
            } else {
                g.col(j) =
                    -(signal / (denom * denom)) * (h * std::conj(inner(j)));
            }
        }
        return g;
    };
    auto fro = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
        return (x.conjugate().cwiseProduct(y)).sum().real();
    };

    Eigen::MatrixXcd best = w;
    double best_f = full_min_sinr(p, w, nullptr);
    double window_base = best_f;
    int window_left = settings.improvement_window;
    std::vector<double> sinr(nu);
    for (int l = 1; l <= settings.max_iterations; ++l) {
        int worst = 0, second = -1;
        for (int u = 0; u < nu; ++u) {
            const Eigen::VectorXcd& h = p.user_channel[u];
            Eigen::VectorXcd inner = w.adjoint() * h;
            double signal = std::norm(inner(p.user_group[u]));
            sinr[u] = signal / (inner.cwiseAbs2().sum() - signal + p.noise);
            if (sinr[u] < sinr[worst]) {
                worst = u;
            }
        }
        for (int u = 0; u < nu; ++u) {
            if (u != worst && (second < 0 || sinr[u] < sinr[second])) {
                second = u;
            }
        }
        // Project onto the tangent space of the power sphere ||W||_F^2 = P so
        // the radial re-projection does not cancel the ascent step.
        double wnorm2 = w.squaredNorm();
        Eigen::MatrixXcd grad = sinr_grad(worst);
        double raw2 = grad.squaredNorm();
        grad -= (fro(w, grad) / wnorm2) * w;
        // Near the max-min optimum the worst user alternates between two
        // near-tied users and plain subgradient steps zigzag across the
        // ridge between them.  When the runner-up is within a few percent,
        // step along the convex combination of the two tangent supergradients
        // that equalizes both directional derivatives: that direction tracks
        // the ridge instead of bouncing over it.
        if (second >= 0 && sinr[second] <= sinr[worst] * 1.05) {
            Eigen::MatrixXcd g2 = sinr_grad(second);
            g2 -= (fro(w, g2) / wnorm2) * w;
            double g11 = fro(grad, grad);
            double g22 = fro(g2, g2);
            double g12 = fro(grad, g2);
            double den = g11 + g22 - 2.0 * g12;
            if (den > 0.0) {
                double lam = (g22 - g12) / den;
                if (lam > 0.0 && lam < 1.0) {
                    grad = lam * grad + (1.0 - lam) * g2;
                }
            }
        }
        double gnorm = grad.norm();
        // Rounding-level tangent components mean a stationary point; stepping
        // along them could cancel w exactly (see structured_ascent).
        if (!(gnorm * gnorm > 1e-24 * raw2)) {
            break;
        }
        double step = settings.initial_step / std::sqrt(static_cast<double>(l));
        w += step * (w.norm() / gnorm) * grad;
        project(w);
        double f = full_min_sinr(p, w, nullptr);
        if (f > best_f) {
            best_f = f;
            best = w;
        }
        if (--window_left == 0) {
            if (best_f - window_base <= settings.improvement_tol * std::abs(window_base)) {
                break;
            }
            window_base = best_f;
            window_left = settings.improvement_window;
        }
    }
    return best;
}

// Re-split the budget across the per-group beams at fixed patterns so every
// group's worst SINR is equal.  For fixed directions this split is the
// max-min optimum and satisfies the balancing fixed point pi_j ∝ pi_j / m_j
// with m_j the group-j minimum; iterating it covers in a few dozen rounds a
// ridge the subgradient would crawl along for thousands of steps.
Eigen::MatrixXcd balance_powers(const SlotProblem& p, const Eigen::MatrixXcd& w) {
    const int m = static_cast<int>(w.cols());
    const int nu = static_cast<int>(p.user_channel.size());
    Eigen::VectorXd colnorm(m);
    for (int j = 0; j < m; ++j) {
        colnorm(j) = w.col(j).norm();
        if (!(colnorm(j) > 0.0)) {
            return w;
        }
    }
    Eigen::MatrixXd gain(nu, m); // |unit-beam_j^H h_u|^2
    for (int u = 0; u < nu; ++u) {
        for (int j = 0; j < m; ++j) {
            gain(u, j) = std::norm(w.col(j).dot(p.user_channel[u])) /
                         (colnorm(j) * colnorm(j));
        }
    }
    Eigen::VectorXd pi = colnorm.array().square();
    Eigen::VectorXd scaled(m);
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXd gmin = Eigen::VectorXd::Constant(
            m, std::numeric_limits<double>::infinity());
        for (int u = 0; u < nu; ++u) {
            const int own = p.user_group[u];
            double denom = p.noise;
            for (int j = 0; j < m; ++j) {
                if (j != own) {
                    denom += pi(j) * gain(u, j);
                }
            }
            gmin(own) = std::min(gmin(own), pi(own) * gain(u, own) / denom);
        }
        for (int j = 0; j < m; ++j) {
            if (!(gmin(j) > 0.0) || !std::isfinite(gmin(j))) {
                return w;
            }
            scaled(j) = pi(j) / gmin(j);
        }
        pi = scaled * (p.power / scaled.sum());
    }
    Eigen::MatrixXcd out(w.rows(), m);
    for (int j = 0; j < m; ++j) {
        out.col(j) = w.col(j) * (std::sqrt(pi(j)) / colnorm(j));
    }
    return out;
}

} // namespace

SlotBeamformers solve_slot_beamformers(const ChannelSet& channels,
                                       const std::vector<int>& groups, int slot,
                                       double power, double noise,
                                       const PsaSettings& settings,
                                       PsaTrace* trace) {
    settings.validate();
    check_groups(channels, groups);
    if (!(power > 0.0) || !(noise > 0.0)) {
        throw std::invalid_argument("solve_slot_beamformers: bad power or noise");
    }
    SlotProblem p = build_slot_problem(channels, groups, power, noise);
    const int m = static_cast<int>(groups.size());

    std::vector<Eigen::VectorXcd> a =
        structured_ascent(p, structured_start(p), settings, trace);
    for (double shrink : {0.05, 0.01}) {
        PsaSettings fine = settings;
        fine.initial_step = settings.initial_step * shrink;
        a = structured_ascent(p, a, fine, trace);
    }
    Eigen::MatrixXcd w_structured(p.antennas, m);
    for (int j = 0; j < m; ++j) {
        w_structured.col(j) = p.shaped[j] * a[j];
    }

    // Second start for the full-space stage: plain inverse-gain matched beams
    // with an even power split, which sits in a different basin than the
    // structured solution on tightly-coupled small-N slots.
    std::vector<Eigen::VectorXcd> matched_dir(m);
    Eigen::MatrixXcd w_matched(p.antennas, m);
    for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd& beta = channels.beta[groups[j]];
        Eigen::VectorXcd q(beta.size());
        for (Eigen::Index k = 0; k < beta.size(); ++k) {
            q(k) = 1.0 / beta(k);
        }
        matched_dir[j] = channels.channels[groups[j]] * q;
        double norm = matched_dir[j].norm();
        if (!(norm > 0.0)) {
            throw DegenerateDirectionError("solve_slot_beamformers: zero group channel");
        }
        w_matched.col(j) = matched_dir[j] * (std::sqrt(power / m) / norm);
    }

    // Third start: zero-forcing beams that null every other slot user.  Under
    // tight coupling the optimum sits near this pattern, in a basin the
    // gain-matched starts cannot always reach.  Skipped when the interference
    // span fills the whole antenna space.
    Eigen::MatrixXcd w_zf(p.antennas, m);
    bool have_zf = m > 1;
    for (int j = 0; j < m && have_zf; ++j) {
        Eigen::Index others = 0;
        for (int o = 0; o < m; ++o) {
            if (o != j) {
                others += channels.channels[groups[o]].cols();
            }
        }
        Eigen::MatrixXcd b(p.antennas, others);
        Eigen::Index c = 0;
        for (int o = 0; o < m; ++o) {
            if (o == j) {
                continue;
            }
            const Eigen::MatrixXcd& cols = channels.channels[groups[o]];
            b.middleCols(c, cols.cols()) = cols;
            c += cols.cols();
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(b);
        Eigen::Index rank = qr.rank();
        if (rank >= p.antennas) {
            have_zf = false;
            break;
        }
        Eigen::MatrixXcd basis =
            qr.householderQ() * Eigen::MatrixXcd::Identity(p.antennas, rank);
        Eigen::VectorXcd dir =
            matched_dir[j] - basis * (basis.adjoint() * matched_dir[j]);
        double norm = dir.norm();
        if (!(norm > 1e-9 * matched_dir[j].norm())) {
            have_zf = false;
            break;
        }
        w_zf.col(j) = dir * (std::sqrt(power / m) / norm);
    }

    // Full-space polish: coarse pass plus shrinking-step refinements with a
    // power re-balance between passes, started from each candidate.  Every
    // stage keeps the better of its input and output, so chaining passes is
    // monotone.
    auto rebalance = [&](Eigen::MatrixXcd& w) {
        Eigen::MatrixXcd wb = balance_powers(p, w);
        if (full_min_sinr(p, wb, nullptr) > full_min_sinr(p, w, nullptr)) {
            w = wb;
        }
    };
    auto refine = [&](Eigen::MatrixXcd w) {
        rebalance(w);
        w = full_space_ascent(p, w, settings);
        rebalance(w);
        for (double shrink : {0.05, 0.01}) {
            PsaSettings fine = settings;
            fine.initial_step = settings.initial_step * shrink;
            w = full_space_ascent(p, w, fine);
            rebalance(w);
        }
        return w;
    };
    Eigen::MatrixXcd w_best = refine(w_structured);
    Eigen::MatrixXcd w_alt = refine(w_matched);
    if (full_min_sinr(p, w_alt, nullptr) > full_min_sinr(p, w_best, nullptr)) {
        w_best = w_alt;
    }
    if (have_zf) {
        Eigen::MatrixXcd w_null = refine(w_zf);
        if (full_min_sinr(p, w_null, nullptr) > full_min_sinr(p, w_best, nullptr)) {
            w_best = w_null;
        }
    }

    // Exact radial projection so the emitted power meets the budget tightly.
    w_best *= std::sqrt(power / w_best.squaredNorm());

    SlotBeamformers out;
    out.slot = slot;
    out.groups = groups;
    out.beamformers = std::move(w_best);
    out.sinr = evaluate_sinr(out.beamformers, groups, channels, noise);
    out.rates.resize(out.sinr.size());
    out.min_rate = std::numeric_limits<double>::infinity();
    for (size_t gi = 0; gi < out.sinr.size(); ++gi) {
        out.rates[gi].resize(out.sinr[gi].size());
        for (size_t k = 0; k < out.sinr[gi].size(); ++k) {
            out.rates[gi][k] = std::log2(1.0 + out.sinr[gi][k]);
            out.min_rate = std::min(out.min_rate, out.rates[gi][k]);
        }
    }
    return out;
}

double min_throughput(const std::vector<SlotBeamformers>& slots) {
    if (slots.empty()) {
        throw std::invalid_argument("min_throughput: no slots");
    }
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& s : slots) {
        worst = std::min(worst, s.min_rate);
    }
    return worst / static_cast<double>(slots.size());
}

} // namespace mgms

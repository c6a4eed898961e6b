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

#include "mgms/gsc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mgms/numerics.hpp"

namespace mgms {

FeatureSpace build_feature_space(const std::vector<GroupDirection>& directions) {
    FeatureSpace space;
    space.points.reserve(directions.size());
    for (const auto& d : directions) {
        space.points.push_back(phase_align(d.direction));
    }
    return space;
}

void Clustering::validate(int num_points) const {
    std::vector<bool> seen(num_points, false);
    if (clusters.empty() && num_points > 0) {
        throw std::invalid_argument("clustering: no clusters");
    }
    for (const auto& c : clusters) {
        if (c.members.empty()) {
            throw std::invalid_argument("clustering: empty cluster");
        }
        for (int p : c.members) {
            if (p < 0 || p >= num_points) {
                throw std::invalid_argument("clustering: member out of range");
            }
            if (seen[p]) {
                throw std::invalid_argument("clustering: point assigned twice");
            }
            seen[p] = true;
        }
    }
    for (int p = 0; p < num_points; ++p) {
        if (!seen[p]) {
            throw std::invalid_argument("clustering: point never assigned");
        }
    }
}

Clustering mean_shift_cluster(const FeatureSpace& space, double tau, double tol,
                              int max_iterations) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("mean_shift_cluster: tau must be positive");
    }
    if (!(tol > 0.0) || max_iterations < 1) {
        throw std::invalid_argument("mean_shift_cluster: bad tolerance or iteration cap");
    }
    Clustering out;
    out.bandwidth = tau;
    const int n = space.size();
    std::vector<bool> assigned(n, false);
    const double two_tau2 = 2.0 * tau * tau;

    for (int seed = 0; seed < n; ++seed) {
        if (assigned[seed]) {
            continue;
        }
        Cluster cluster;
        Eigen::VectorXcd c = space.points[seed];
        int iterations = 0;
        bool converged = false;
        while (iterations < max_iterations) {
            ++iterations;
            // Truncated-Gaussian weighted mean over every point within tau
            // (assigned ones included: they still shape the density), then
            // renormalized back onto the unit sphere.
            Eigen::VectorXcd mean = Eigen::VectorXcd::Zero(c.size());
            double weight_sum = 0.0;
            for (int p = 0; p < n; ++p) {
                double dist = (space.points[p] - c).norm();
                if (dist < tau) {
                    double wgt = std::exp(-(dist * dist) / two_tau2);
                    mean += wgt * space.points[p];
                    weight_sum += wgt;
                }
            }
            // The seed itself is always within the window on the first pass;
            // afterwards the window is never empty of weight because the
            // centroid stays within tau of at least the points that pulled it.
            if (weight_sum <= 0.0) {
                converged = true;
                break;
            }
            mean /= weight_sum;
            double mnorm = mean.norm();
            if (!(mnorm > 1e-12)) {
                // Degenerate update (weights cancelled): keep the previous
                // centroid and stop.
                converged = true;
                break;
            }
            mean /= mnorm;
            double shift = (mean - c).norm();
            c = mean;
            if (shift < tol) {
                converged = true;
                break;
            }
        }
        // Claim the unassigned points inside the converged window.  The seed
        // always joins its own cluster even if the centroid drifted away,
        // which guarantees progress for any bandwidth.
        for (int p = 0; p < n; ++p) {
            if (!assigned[p] && (space.points[p] - c).norm() < tau) {
                assigned[p] = true;
                cluster.members.push_back(p);
            }
        }
        if (!assigned[seed]) {
            assigned[seed] = true;
            cluster.members.push_back(seed);
            std::sort(cluster.members.begin(), cluster.members.end());
        }
        cluster.centroid = c;
        cluster.iterations = iterations;
        cluster.converged = converged;
        out.clusters.push_back(std::move(cluster));
    }
    return out;
}

Schedule schedule_clustered(const Clustering& clustering,
                            const ChannelSet& channels, double power,
                            double noise, RngStream& stream) {
    clustering.validate(channels.num_groups());
    const int num_clusters = clustering.num_clusters();

    // Remaining (yet unscheduled) members per cluster, ascending.
    std::vector<std::vector<int>> remaining(num_clusters);
    int largest = 0;
    for (int r = 0; r < num_clusters; ++r) {
        remaining[r] = clustering.clusters[r].members;
        std::sort(remaining[r].begin(), remaining[r].end());
        if (static_cast<int>(remaining[r].size()) >
            static_cast<int>(remaining[largest].size())) {
            largest = r; // strict: ties stay with the lowest cluster index
        }
    }

    const int num_slots = static_cast<int>(remaining[largest].size());
    Schedule schedule;
    for (int t = 0; t < num_slots; ++t) {
        std::vector<int> slot;
        // Anchor: a uniformly random remaining member of the largest cluster.
        auto& anchor_pool = remaining[largest];
        int pick = stream.uniform_index(static_cast<int>(anchor_pool.size()));
        slot.push_back(anchor_pool[pick]);
        anchor_pool.erase(anchor_pool.begin() + pick);
        // One member from every other cluster that still has groups waiting:
        // the one whose addition keeps the closed-form worst-user SINR highest.
        for (int r = 0; r < num_clusters; ++r) {
            if (r == largest || remaining[r].empty()) {
                continue;
            }
            int chosen = -1;
            double chosen_sinr = 0.0;
            for (int cand : remaining[r]) {
                std::vector<int> trial = slot;
                trial.push_back(cand);
                std::sort(trial.begin(), trial.end());
                double s = asymptotic_min_sinr(channels, trial, power, noise);
                if (chosen < 0 || s > chosen_sinr) {
                    chosen = cand;
                    chosen_sinr = s;
                }
            }
            slot.push_back(chosen);
            remaining[r].erase(
                std::find(remaining[r].begin(), remaining[r].end(), chosen));
        }
        std::sort(slot.begin(), slot.end());
        schedule.slots.push_back(std::move(slot));
    }
    return schedule;
}

} // namespace mgms

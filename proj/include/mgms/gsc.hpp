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

#include "mgms/beamforming.hpp"
#include "mgms/direction.hpp"
#include "mgms/rng.hpp"
#include "mgms/schedule.hpp"

namespace mgms {

// Group directions mapped to cluster-ready feature points: phase-aligned unit
// vectors, indexed by group.
struct FeatureSpace {
    std::vector<Eigen::VectorXcd> points;

    int size() const { return static_cast<int>(points.size()); }
};

FeatureSpace build_feature_space(const std::vector<GroupDirection>& directions);

struct Cluster {
    Eigen::VectorXcd centroid;
    std::vector<int> members;
    int iterations = 0;
    bool converged = true;
};

// Disjoint clusters covering all feature points, with the bandwidth they were
// built at.
struct Clustering {
    double bandwidth = 0.0;
    std::vector<Cluster> clusters;

    int num_clusters() const { return static_cast<int>(clusters.size()); }

    // Verifies members form a partition of {0, ..., num_points-1}.
    void validate(int num_points) const;
};

// Sequential mean-shift over the feature sphere.  Each pass seeds at the
// lowest-index unassigned point and shifts a centroid to the truncated-
// Gaussian weighted mean of all points within distance tau (renormalized to
// unit norm) until it moves less than tol; points inside the converged window
// that are still unassigned become the cluster (the seed always joins, so
// every pass makes progress).  Deterministic.
Clustering mean_shift_cluster(const FeatureSpace& space, double tau,
                              double tol = 1e-3, int max_iterations = 100);

// Turns a clustering into a schedule: T equals the largest cluster size; each
// slot takes one random remaining member of the largest cluster (ties to the
// lowest cluster index; picks drawn from `stream`) plus, from every other
// cluster with members remaining, the one whose addition keeps the
// closed-form worst-user SINR highest.  Groups in a slot therefore come from
// pairwise-distinct clusters.
Schedule schedule_clustered(const Clustering& clustering,
                            const ChannelSet& channels, double power,
                            double noise, RngStream& stream);

} // namespace mgms

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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace mgms {

// splitmix64 finalizer.  Used to whiten 64-bit seed material.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Derives a child seed from a master seed and an ordered tag list.  Distinct
// tag sequences yield statistically independent seeds; the mapping is fixed
// across platforms so experiment results are reproducible everywhere.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> tags) noexcept;

// Deterministic random stream.  All distributions are generated from raw
// 64-bit draws with explicit arithmetic (no std::uniform_real_distribution),
// so sequences are bit-identical across standard library implementations.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    // Next raw 64-bit draw.
    std::uint64_t raw() { return gen_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform();

    // Uniform on [lo, hi).  Degenerate intervals (lo == hi) return lo.
    double uniform(double lo, double hi);

    // Circularly-symmetric complex Gaussian with unit variance:
    // real and imaginary parts are independent N(0, 1/2).
    std::complex<double> complex_normal();

    // Uniform integer in [0, n).  n must be positive.
    int uniform_index(int n);

private:
    std::mt19937_64 gen_;
};

} // namespace mgms

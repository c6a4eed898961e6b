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

#include "mgms/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mgms {

std::uint64_t mix64(std::uint64_t x) noexcept {
    // splitmix64 finalizer (Steele, Lea, Flood 2014).
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> tags) noexcept {
    std::uint64_t h = mix64(master);
    for (std::uint64_t tag : tags) {
        h = mix64(h ^ mix64(tag));
    }
    return h;
}

double RngStream::uniform() {
    // Top 53 bits give a uniform dyadic rational in [0, 1).
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    if (hi < lo) {
        throw std::invalid_argument("uniform: upper bound below lower bound");
    }
    return lo + (hi - lo) * uniform();
}

std::complex<double> RngStream::complex_normal() {
    // Polar form: |g|^2 ~ Exp(1), phase uniform, so E|g|^2 = 1 and the real
    // and imaginary parts are independent N(0, 1/2).
    double u1 = 1.0 - uniform(); // (0, 1]: keeps the log finite
    double u2 = uniform();
    double radius = std::sqrt(-std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

int RngStream::uniform_index(int n) {
    if (n <= 0) {
        throw std::invalid_argument("uniform_index: need a positive range");
    }
    int idx = static_cast<int>(uniform() * static_cast<double>(n));
    return idx < n ? idx : n - 1;
}

} // namespace mgms

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

#include <stdexcept>
#include <string>

namespace mgms {

// Thrown when a matrix that must be Hermitian positive definite fails its
// Cholesky factorization.  Carries the index of the first non-positive pivot
// so callers can report which leading minor broke.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, int pivot)
        : std::runtime_error(what + " (pivot " + std::to_string(pivot) + ")"),
          pivot_(pivot) {}

    int pivot() const noexcept { return pivot_; }

private:
    int pivot_;
};

// Thrown when a vector that should carry direction information is numerically
// zero (or lies in the span of an orthonormal basis it should extend).
class DegenerateDirectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mgms

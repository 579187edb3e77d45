// Copyright 2026 The nosignal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "nosignal/matrix.hpp"

namespace nosignal {

/// Seeded pseudo-random stream. Every randomized routine takes one of these
/// explicitly; nothing in the library reads the clock.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream number `index` derived from `seed`. Trial loops use
  /// this so results do not depend on execution order.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [lo, hi].
  std::size_t uniform_int(std::size_t lo, std::size_t hi);
  bool bernoulli(double p);
  double normal();
  /// Real and imaginary parts i.i.d. N(0, 1/2), so E|z|^2 = 1.
  Complex complex_normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Matrix of i.i.d. standard complex Gaussians.
ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// rows x cols matrix with orthonormal columns (rows >= cols), obtained from
/// the QR factorization of a Gaussian matrix with the R diagonal made positive.
ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary.
inline ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  return random_isometry(dim, dim, rng);
}

}  // namespace nosignal

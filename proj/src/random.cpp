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

#include "nosignal/random.hpp"

#include <Eigen/QR>

#include <cmath>

#include "nosignal/errors.hpp"

namespace nosignal {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

double Rng::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

std::size_t Rng::uniform_int(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
}

bool Rng::bernoulli(double p) { return uniform() < p; }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (rows < cols || cols == 0) {
    throw DimensionError("random_isometry: need rows >= cols >= 1");
  }
  const ComplexMatrix g = gaussian_matrix(rows, cols, rng);
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  Eigen::MatrixXcd eg(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      eg(i, j) = g(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(eg);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(r, c);
  const Eigen::MatrixXcd rmat = qr.matrixQR().topRows(c).triangularView<Eigen::Upper>();

  ComplexMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < c; ++j) {
    const Complex d = rmat(j, j);
    const Complex phase = std::abs(d) > 0.0 ? d / std::abs(d) : Complex{1.0, 0.0};
    for (Eigen::Index i = 0; i < r; ++i) {
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = q(i, j) * phase;
    }
  }
  return out;
}

}  // namespace nosignal

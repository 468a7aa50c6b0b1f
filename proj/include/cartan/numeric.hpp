// Copyright 2026 The cartan-skel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Double-precision kernels: symmetric eigen-decomposition by cyclic Jacobi
// rotations, SPD exp/log/sqrt, polar decomposition and general matrix
// exp/log. Only transcendental steps live here; every rank or membership
// decision elsewhere stays exact.

#ifndef CARTAN_NUMERIC_HPP
#define CARTAN_NUMERIC_HPP

#include <Eigen/Dense>
#include <optional>

#include "cartan/exactmat.hpp"

namespace cartan {

using MatF = Eigen::MatrixXd;
using VecF = Eigen::VectorXd;

/// Symmetric double matrix. Construction rejects asymmetry above 1e-12
/// (relative to max(1, max |entry|)) and then symmetrizes.
class SymMatF {
 public:
  SymMatF() = default;
  explicit SymMatF(const MatF& m);
  static SymMatF from_exact(const Mat& m);

  std::size_t n() const { return static_cast<std::size_t>(m_.rows()); }
  const MatF& matrix() const { return m_; }

 private:
  MatF m_;
};

struct EigenDecomposition {
  VecF values;   // ascending
  MatF vectors;  // orthogonal; columns are eigenvectors
};

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm is below
/// 1e-12 * max(1, |m|_F). Throws NumericError if that takes over 100 sweeps.
EigenDecomposition jacobi_eigen(const SymMatF& m);

SymMatF spd_exp(const SymMatF& y);
/// Throws NumericError unless every eigenvalue exceeds 1e-12.
SymMatF spd_log(const SymMatF& a);
SymMatF spd_sqrt(const SymMatF& a);

struct Polar {
  SymMatF p;  // SPD
  MatF q;     // orthogonal
};

/// m = p * q with p = spd_sqrt(m m^T). Throws NumericError when |det m| <= 1e-12.
Polar polar_decompose(const MatF& m);

MatF expm(const MatF& m);
/// Principal logarithm; throws NumericError for eigenvalues on the closed
/// negative real axis.
MatF logm(const MatF& m);

MatF to_float(const Mat& m);
/// Continued-fraction approximation with denominator <= max_den; nullopt if
/// the best one is farther than tol from x.
std::optional<Rational> rationalize(double x, long max_den = 1000000, double tol = 1e-9);

}  // namespace cartan

#endif  // CARTAN_NUMERIC_HPP

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

// Finite-dimensional Lie algebras over Q given by structure constants.
//
// Fixed basis orderings (1-based labels):
//   gl(n)        E_ij, row-major                     "E11", "E12", ...
//   so(n)        E_ij - E_ji for i > j, lexicographic "E21-E12", "E31-E13", ...
//   co(n)        so(n) then the identity              ..., "id"
//   affine(n)    translations then gl(n)             "t1", ..., "E11", ...
//   euclidean(n) translations then so(n)
//   so3_plus_R   so(3) then the central line          ..., "x"

#ifndef CARTAN_LIEALG_HPP
#define CARTAN_LIEALG_HPP

#include <string>
#include <string_view>
#include <vector>

#include "cartan/exactmat.hpp"

namespace cartan {

/// Linear map between coordinate spaces; columns are images of the source
/// basis, so the shape is dst_dim x src_dim.
using LinearMap = Mat;

class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// `brackets[i * dim + j]` holds the coordinates of [e_i, e_j]. Antisymmetry
  /// and the Jacobi identity are checked here; violations throw
  /// InvariantError naming the offending basis triple.
  LieAlgebra(std::size_t dim, std::vector<Vec> brackets, std::vector<std::string> labels = {});

  static LieAlgebra abelian(std::size_t dim, std::vector<std::string> labels = {});
  /// Structure constants of span(basis) under the matrix commutator. The
  /// matrices must be independent and the span closed.
  static LieAlgebra from_matrices(const std::vector<Mat>& basis, std::vector<std::string> labels = {});
  /// The subalgebra `sub` with its canonical (RREF) basis.
  static LieAlgebra restrict_to(const LieAlgebra& g, const Subspace& sub);

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  const Vec& bracket_basis(std::size_t i, std::size_t j) const { return brackets_[i * dim_ + j]; }
  Vec bracket(const Vec& x, const Vec& y) const;
  /// Matrix of ad(x) = [x, .].
  Mat ad(const Vec& x) const;
  bool is_abelian() const;

  /// Structure constants equal; labels are presentation only.
  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.brackets_ == b.brackets_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Vec> brackets_;
  std::vector<std::string> labels_;
};

/// A faithful representation in gl(m), stored as the m^2 x dim matrix whose
/// columns are the flattened basis images.
struct MatrixRealization {
  std::size_t m = 0;
  LinearMap embed;

  Mat matrix_of(const Vec& x) const;
  Mat basis_matrix(std::size_t i) const;
};

struct BuiltinAlgebra {
  LieAlgebra algebra;
  MatrixRealization realization;
};

/// name in {gl, so, co, affine, euclidean, so3_plus_R}; so3_plus_R needs n == 3.
BuiltinAlgebra builtin(std::string_view name, std::size_t n);

Mat elementary(std::size_t n, std::size_t i, std::size_t j);
std::vector<Mat> gl_basis(std::size_t n);
std::vector<std::string> gl_labels(std::size_t n);
std::vector<Mat> so_basis(std::size_t n);
std::vector<std::string> so_labels(std::size_t n);

/// (n+1)x(n+1) matrix [[0, 0], [translation, linear]].
Mat affine_matrix(const Vec& translation, const Mat& linear);
/// R^n (+) span(linear_basis) inside affine(n), translations first.
BuiltinAlgebra affine_subalgebra(std::size_t n, const std::vector<Mat>& linear_basis,
                                 std::vector<std::string> linear_labels);

/// Matrix of X -> p X p^-1 on the realized algebra. Throws InvariantError
/// when conjugation by p does not preserve the image of the realization.
LinearMap conjugation_operator(const MatrixRealization& r, const Mat& p);

/// Smallest bracket-closed subspace containing `generators`.
Subspace subalgebra_closure(const LieAlgebra& g, const Subspace& generators);
/// {x : [x, sub] in sub}
Subspace normalizer_in(const LieAlgebra& g, const Subspace& sub);
/// {x : [x, sub] = 0}
Subspace centralizer_in(const LieAlgebra& g, const Subspace& sub);
bool is_bracket_closed(const LieAlgebra& g, const Subspace& sub);

bool is_derivation(const LieAlgebra& g, const LinearMap& d);
/// a[X, Y] == [aX, aY] on all basis pairs (no invertibility requirement).
bool is_lie_homomorphism(const LieAlgebra& src, const LieAlgebra& dst, const LinearMap& a);
/// Bracket-preserving and invertible.
bool is_lie_automorphism(const LieAlgebra& g, const LinearMap& a);

}  // namespace cartan

#endif  // CARTAN_LIEALG_HPP

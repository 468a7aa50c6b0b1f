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

// Exact rational dense linear algebra.
//
// Every rank, containment and equality decision in the library goes through
// this header. Subspaces are stored by their reduced row-echelon basis, which
// is unique, so two subspaces are equal iff their bases are entrywise equal.

#ifndef CARTAN_EXACTMAT_HPP
#define CARTAN_EXACTMAT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cartan {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator) after arithmetic.
using Rational = mpq_class;
using Vec = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Rational& s, const Vec& v);
/// v[first, first+count)
Vec slice(const Vec& v, std::size_t first, std::size_t count);
Vec concat(const Vec& a, const Vec& b);
Rational dot(const Vec& a, const Vec& b);

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Mat from_cols(const std::vector<Vec>& cols, std::size_t rows);
  /// Interprets a length r*c vector as an r x c matrix, row-major.
  static Mat reshape(const Vec& flat, std::size_t rows, std::size_t cols);
  /// Block diagonal [a 0; 0 b].
  static Mat block_diag(const Mat& a, const Mat& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<Rational>& entries() const { return data_; }
  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  /// Row-major flattening, the coordinate convention for gl(n).
  Vec flatten() const { return data_; }

  Mat transpose() const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);
  bool is_zero() const;
  Vec apply(const Vec& v) const;
  Rational trace() const;

  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(const Rational& s, const Mat& a);
  friend bool operator==(const Mat& a, const Mat& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::ostream& operator<<(std::ostream& os, const Mat& m);

/// a*b - b*a
Mat commutator(const Mat& a, const Mat& b);
/// Vertical concatenation; column counts must match.
Mat vstack(const std::vector<Mat>& blocks, std::size_t cols);
/// Inverse of a square matrix; nullopt when singular.
std::optional<Mat> inverse(const Mat& m);

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;
};

/// Unique reduced row-echelon form (zero rows kept at the bottom).
RrefResult rref(Mat m);
std::size_t rank(const Mat& m);

class Subspace {
 public:
  /// The zero subspace of R^ambient.
  explicit Subspace(std::size_t ambient = 0);

  static Subspace full(std::size_t ambient);
  static Subspace span(std::size_t ambient, const std::vector<Vec>& generators);
  /// Row space of m.
  static Subspace row_space(const Mat& m);
  /// Column space of m.
  static Subspace image(const Mat& m);
  /// span{e_i : i in indices}
  static Subspace coordinate(std::size_t ambient, const std::vector<std::size_t>& indices);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const Mat& basis() const { return basis_; }
  Vec basis_vector(std::size_t i) const { return basis_.row(i); }
  std::vector<Vec> basis_vectors() const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Coordinates not used as pivots; the canonical complement is spanned by
  /// the corresponding unit vectors.
  std::vector<std::size_t> non_pivots() const;
  Subspace canonical_complement() const;

  bool contains(const Vec& v) const;
  bool is_subset_of(const Subspace& other) const;
  /// v minus its component along the basis, zero at every pivot.
  Vec reduce(const Vec& v) const;
  /// Coefficients of v w.r.t. basis(); throws InvariantError when v is
  /// outside the subspace.
  Vec coordinates(const Vec& v) const;
  /// Rows span the annihilator: w in *this iff annihilator() * w == 0.
  Mat annihilator() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}
Subspace kernel(const Mat& m);

struct SolveResult {
  std::optional<Vec> particular;
  Subspace homogeneous;
  bool consistent() const { return particular.has_value(); }
};

/// Solves a x = b. Inconsistency is reported through an empty particular.
SolveResult solve(const Mat& a, const Vec& b);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// Image of a subspace under a linear map.
Subspace map_subspace(const Mat& m, const Subspace& s);

}  // namespace cartan

#endif  // CARTAN_EXACTMAT_HPP

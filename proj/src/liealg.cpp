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

#include "cartan/liealg.hpp"

#include <string>

#include "cartan/errors.hpp"

namespace cartan {

namespace {

std::vector<std::string> default_labels(std::size_t n, std::vector<std::string> given) {
  if (given.empty()) {
    for (std::size_t i = 0; i < n; ++i) given.push_back("e" + std::to_string(i + 1));
  }
  if (given.size() != n) throw DimensionError("label count does not match dimension");
  return given;
}

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
}

}  // namespace

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<Vec> brackets, std::vector<std::string> labels)
    : dim_(dim), brackets_(std::move(brackets)), labels_(default_labels(dim, std::move(labels))) {
  if (brackets_.size() != dim_ * dim_) throw DimensionError("LieAlgebra: need dim^2 brackets");
  for (const Vec& v : brackets_) {
    if (v.size() != dim_) throw DimensionError("LieAlgebra: bracket of wrong length");
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!cartan::is_zero(bracket_basis(i, i))) {
      throw InvariantError("antisymmetry", "[e" + std::to_string(i) + ", e" + std::to_string(i) +
                                               "] != 0");
    }
    for (std::size_t j = i + 1; j < dim_; ++j) {
      if (!cartan::is_zero(bracket_basis(i, j) + bracket_basis(j, i))) {
        throw InvariantError("antisymmetry", "basis pair (" + std::to_string(i) + ", " +
                                                 std::to_string(j) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      for (std::size_t k = j + 1; k < dim_; ++k) {
        Vec s = bracket(unit_vec(dim_, i), bracket_basis(j, k)) +
                bracket(unit_vec(dim_, j), bracket_basis(k, i)) +
                bracket(unit_vec(dim_, k), bracket_basis(i, j));
        if (!cartan::is_zero(s)) throw InvariantError("jacobi", "basis triple " + triple(i, j, k));
      }
    }
  }
}

LieAlgebra LieAlgebra::abelian(std::size_t dim, std::vector<std::string> labels) {
  return LieAlgebra(dim, std::vector<Vec>(dim * dim, zero_vec(dim)), std::move(labels));
}

LieAlgebra LieAlgebra::from_matrices(const std::vector<Mat>& basis, std::vector<std::string> labels) {
  const std::size_t d = basis.size();
  if (d == 0) return abelian(0, std::move(labels));
  const std::size_t flat = basis[0].rows() * basis[0].cols();
  std::vector<Vec> cols;
  for (const Mat& b : basis) {
    if (b.rows() * b.cols() != flat) throw DimensionError("from_matrices: mixed sizes");
    cols.push_back(b.flatten());
  }
  // Coordinates are read off a square invertible minor of the basis matrix.
  Mat bt = Mat::from_cols(cols, flat);
  RrefResult r = rref(bt.transpose());
  if (r.pivots.size() != d) throw InvariantError("independence", "matrix basis is dependent");
  Mat minor(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) minor(i, j) = bt(r.pivots[i], j);
  }
  Mat minv = *inverse(minor);
  std::vector<Vec> brackets(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Vec c = commutator(basis[i], basis[j]).flatten();
      Vec picked(d);
      for (std::size_t k = 0; k < d; ++k) picked[k] = c[r.pivots[k]];
      Vec x = minv.apply(picked);
      if (bt.apply(x) != c) {
        throw InvariantError("closure", "commutator of basis " + std::to_string(i) + ", " +
                                            std::to_string(j) + " leaves the span");
      }
      brackets[i * d + j] = std::move(x);
    }
  }
  return LieAlgebra(d, std::move(brackets), std::move(labels));
}

LieAlgebra LieAlgebra::restrict_to(const LieAlgebra& g, const Subspace& sub) {
  if (sub.ambient_dim() != g.dim()) throw DimensionError("restrict_to: ambient mismatch");
  const std::size_t d = sub.dim();
  std::vector<Vec> brackets(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Vec b = g.bracket(sub.basis_vector(i), sub.basis_vector(j));
      if (!sub.contains(b)) throw InvariantError("closure", "subspace is not a subalgebra");
      brackets[i * d + j] = sub.coordinates(b);
    }
  }
  return LieAlgebra(d, std::move(brackets));
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionError("bracket: wrong length");
  Vec out = zero_vec(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Vec& b = bracket_basis(i, j);
      Rational f = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k) {
        if (sgn(b[k]) != 0) out[k] += f * b[k];
      }
    }
  }
  return out;
}

Mat LieAlgebra::ad(const Vec& x) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim_; ++j) cols.push_back(bracket(x, unit_vec(dim_, j)));
  return Mat::from_cols(cols, dim_);
}

bool LieAlgebra::is_abelian() const {
  for (const Vec& v : brackets_) {
    if (!cartan::is_zero(v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Mat MatrixRealization::matrix_of(const Vec& x) const {
  return Mat::reshape(embed.apply(x), m, m);
}

Mat MatrixRealization::basis_matrix(std::size_t i) const {
  return Mat::reshape(embed.col(i), m, m);
}

Mat elementary(std::size_t n, std::size_t i, std::size_t j) {
  Mat e(n, n);
  e(i, j) = 1;
  return e;
}

std::vector<Mat> gl_basis(std::size_t n) {
  std::vector<Mat> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.push_back(elementary(n, i, j));
  }
  return out;
}

std::vector<std::string> gl_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  return out;
}

std::vector<Mat> so_basis(std::size_t n) {
  std::vector<Mat> out;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) out.push_back(elementary(n, i, j) - elementary(n, j, i));
  }
  return out;
}

std::vector<std::string> so_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::string a = std::to_string(i + 1);
      std::string b = std::to_string(j + 1);
      out.push_back("E" + a + b + "-E" + b + a);
    }
  }
  return out;
}

Mat affine_matrix(const Vec& translation, const Mat& linear) {
  const std::size_t n = linear.rows();
  if (translation.size() != n || !linear.is_square()) {
    throw DimensionError("affine_matrix: shape mismatch");
  }
  Mat out(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) out(i + 1, 0) = translation[i];
  out.set_block(1, 1, linear);
  return out;
}

namespace {

BuiltinAlgebra realize(const std::vector<Mat>& basis, std::vector<std::string> labels) {
  BuiltinAlgebra out;
  out.algebra = LieAlgebra::from_matrices(basis, std::move(labels));
  out.realization.m = basis.empty() ? 0 : basis[0].rows();
  std::vector<Vec> cols;
  for (const Mat& b : basis) cols.push_back(b.flatten());
  out.realization.embed = Mat::from_cols(cols, out.realization.m * out.realization.m);
  return out;
}

}  // namespace

BuiltinAlgebra affine_subalgebra(std::size_t n, const std::vector<Mat>& linear_basis,
                                 std::vector<std::string> linear_labels) {
  std::vector<Mat> basis;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    basis.push_back(affine_matrix(unit_vec(n, i), Mat(n, n)));
    labels.push_back("t" + std::to_string(i + 1));
  }
  for (const Mat& m : linear_basis) basis.push_back(affine_matrix(zero_vec(n), m));
  if (linear_labels.empty()) {
    for (std::size_t i = 0; i < linear_basis.size(); ++i) labels.push_back("m" + std::to_string(i + 1));
  } else {
    labels.insert(labels.end(), linear_labels.begin(), linear_labels.end());
  }
  return realize(basis, std::move(labels));
}

BuiltinAlgebra builtin(std::string_view name, std::size_t n) {
  if (n == 0) throw DimensionError("builtin: n must be positive");
  if (name == "gl") return realize(gl_basis(n), gl_labels(n));
  if (name == "so") return realize(so_basis(n), so_labels(n));
  if (name == "co") {
    auto basis = so_basis(n);
    auto labels = so_labels(n);
    basis.push_back(Mat::identity(n));
    labels.push_back("id");
    return realize(basis, labels);
  }
  if (name == "affine") return affine_subalgebra(n, gl_basis(n), gl_labels(n));
  if (name == "euclidean") return affine_subalgebra(n, so_basis(n), so_labels(n));
  if (name == "so3_plus_R") {
    if (n != 3) throw DimensionError("so3_plus_R is only defined for n = 3");
    std::vector<Mat> basis;
    for (const Mat& m : so_basis(3)) {
      Mat e(4, 4);
      e.set_block(0, 0, m);
      basis.push_back(e);
    }
    basis.push_back(elementary(4, 3, 3));
    auto labels = so_labels(3);
    labels.push_back("x");
    return realize(basis, labels);
  }
  throw DimensionError("unknown builtin algebra '" + std::string(name) + "'");
}

LinearMap conjugation_operator(const MatrixRealization& r, const Mat& p) {
  auto pinv = inverse(p);
  if (!pinv) throw InvariantError("invertibility", "conjugating matrix is singular");
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < r.embed.cols(); ++i) {
    Vec c = (p * r.basis_matrix(i) * *pinv).flatten();
    auto s = solve(r.embed, c);
    if (!s.consistent()) throw InvariantError("normalizes", "conjugation leaves the algebra");
    cols.push_back(*s.particular);
  }
  return Mat::from_cols(cols, r.embed.cols());
}

// ---------------------------------------------------------------------------

bool is_bracket_closed(const LieAlgebra& g, const Subspace& sub) {
  for (std::size_t i = 0; i < sub.dim(); ++i) {
    for (std::size_t j = i + 1; j < sub.dim(); ++j) {
      if (!sub.contains(g.bracket(sub.basis_vector(i), sub.basis_vector(j)))) return false;
    }
  }
  return true;
}

Subspace subalgebra_closure(const LieAlgebra& g, const Subspace& generators) {
  Subspace cur = generators;
  while (true) {
    std::vector<Vec> gens = cur.basis_vectors();
    const std::size_t d = gens.size();
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) gens.push_back(g.bracket(gens[i], gens[j]));
    }
    Subspace next = Subspace::span(g.dim(), gens);
    if (next.dim() == cur.dim()) return next;
    cur = std::move(next);
  }
}

Subspace normalizer_in(const LieAlgebra& g, const Subspace& sub) {
  // x in N  iff  ann * ad(s_j) x = 0 for every basis vector s_j.
  Mat ann = sub.annihilator();
  std::vector<Mat> blocks;
  for (std::size_t j = 0; j < sub.dim(); ++j) blocks.push_back(ann * g.ad(sub.basis_vector(j)));
  if (blocks.empty()) return Subspace::full(g.dim());
  return kernel(vstack(blocks, g.dim()));
}

Subspace centralizer_in(const LieAlgebra& g, const Subspace& sub) {
  std::vector<Mat> blocks;
  for (std::size_t j = 0; j < sub.dim(); ++j) blocks.push_back(g.ad(sub.basis_vector(j)));
  if (blocks.empty()) return Subspace::full(g.dim());
  return kernel(vstack(blocks, g.dim()));
}

bool is_lie_homomorphism(const LieAlgebra& src, const LieAlgebra& dst, const LinearMap& a) {
  if (a.rows() != dst.dim() || a.cols() != src.dim()) {
    throw DimensionError("is_lie_homomorphism: shape mismatch");
  }
  for (std::size_t i = 0; i < src.dim(); ++i) {
    for (std::size_t j = i + 1; j < src.dim(); ++j) {
      if (a.apply(src.bracket_basis(i, j)) != dst.bracket(a.col(i), a.col(j))) return false;
    }
  }
  return true;
}

bool is_derivation(const LieAlgebra& g, const LinearMap& d) {
  if (d.rows() != g.dim() || d.cols() != g.dim()) throw DimensionError("is_derivation: shape");
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      Vec lhs = d.apply(g.bracket_basis(i, j));
      Vec rhs = g.bracket(d.col(i), unit_vec(g.dim(), j)) + g.bracket(unit_vec(g.dim(), i), d.col(j));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

bool is_lie_automorphism(const LieAlgebra& g, const LinearMap& a) {
  return is_lie_homomorphism(g, g, a) && rank(a) == g.dim();
}

}  // namespace cartan

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

#include "cartan/exactmat.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "cartan/errors.hpp"

namespace cartan {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

void require_len(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": length mismatch " +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' ||
      den[0] == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num[0] == '+' ? num.substr(1) : num);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(zn, zd);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v = zero_vec(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Vec operator+(const Vec& a, const Vec& b) {
  require_len(a, b, "vector +");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  require_len(a, b, "vector -");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vec operator*(const Rational& s, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Vec slice(const Vec& v, std::size_t first, std::size_t count) {
  if (first + count > v.size()) throw DimensionError("slice out of range");
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(first),
             v.begin() + static_cast<std::ptrdiff_t>(first + count));
}

Vec concat(const Vec& a, const Vec& b) {
  Vec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Rational dot(const Vec& a, const Vec& b) {
  require_len(a, b, "dot");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------------------
// Mat

Mat::Mat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("Mat: " + std::to_string(data_.size()) + " entries for " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, std::size_t rows) {
  Mat m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DimensionError("from_cols: ragged columns");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Mat Mat::reshape(const Vec& flat, std::size_t rows, std::size_t cols) {
  return Mat(rows, cols, flat);
}

Mat Mat::block_diag(const Mat& a, const Mat& b) {
  Mat m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Vec Mat::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Mat::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  Mat b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("set_block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool Mat::is_zero() const { return cartan::is_zero(data_); }

Vec Mat::apply(const Vec& v) const {
  if (v.size() != cols_) {
    throw DimensionError("apply: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                         " matrix on length " + std::to_string(v.size()));
  }
  Vec r(rows_, Rational(0));
  for (std::size_t j = 0; j < cols_; ++j) {
    if (sgn(v[j]) == 0) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& a = (*this)(i, j);
      if (sgn(a) != 0) r[i] += a * v[j];
    }
  }
  return r;
}

Rational Mat::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("Mat +: shape mismatch");
  Mat r(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("Mat -: shape mismatch");
  Mat r(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("Mat *: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                         " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  Mat r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& y = b(k, j);
        if (sgn(y) != 0) r(i, j) += x * y;
      }
    }
  }
  return r;
}

Mat operator*(const Rational& s, const Mat& a) {
  Mat r = a;
  for (auto& x : r.data_) x *= s;
  return r;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::ostream& operator<<(std::ostream& os, const Mat& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j).get_str();
    }
  }
  return os << ']';
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat vstack(const std::vector<Mat>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw DimensionError("vstack: column mismatch");
    rows += b.rows();
  }
  Mat m(rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    m.set_block(r, 0, b);
    r += b.rows();
  }
  return m;
}

std::optional<Mat> inverse(const Mat& m) {
  if (!m.is_square()) throw DimensionError("inverse: non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Mat::identity(n));
  RrefResult r = rref(std::move(aug));
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  return r.reduced.block(0, n, n, n);
}

// ---------------------------------------------------------------------------
// Row reduction

RrefResult rref(Mat m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Rational factor;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
    }
    if (m(r, c) != 1) {
      Rational inv = 1 / m(r, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(m(r, j)) != 0) m(r, j) *= inv;
      }
    }
    // Nonzero columns of the pivot row drive the elimination; the rows that
    // come out of the linear systems here are sparse.
    std::vector<std::size_t> support;
    for (std::size_t j = c; j < cols; ++j) {
      if (sgn(m(r, j)) != 0) support.push_back(j);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      factor = m(i, c);
      for (std::size_t j : support) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s(ambient);
  s.basis_ = Mat::identity(ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

Subspace Subspace::row_space(const Mat& m) {
  RrefResult r = rref(m);
  Subspace s(m.cols());
  s.pivots_ = r.pivots;
  s.basis_ = r.reduced.block(0, 0, r.pivots.size(), m.cols());
  return s;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec>& generators) {
  if (generators.empty()) return Subspace(ambient);
  return row_space(Mat::from_rows(generators, ambient));
}

Subspace Subspace::image(const Mat& m) { return row_space(m.transpose()); }

Subspace Subspace::coordinate(std::size_t ambient, const std::vector<std::size_t>& indices) {
  std::vector<Vec> gens;
  for (std::size_t i : indices) gens.push_back(unit_vec(ambient, i));
  return span(ambient, gens);
}

std::vector<Vec> Subspace::basis_vectors() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
  return out;
}

std::vector<std::size_t> Subspace::non_pivots() const {
  std::vector<std::size_t> out;
  std::size_t p = 0;
  for (std::size_t j = 0; j < ambient_; ++j) {
    if (p < pivots_.size() && pivots_[p] == j) {
      ++p;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

Subspace Subspace::canonical_complement() const { return coordinate(ambient_, non_pivots()); }

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != ambient_) throw DimensionError("Subspace::reduce: dimension mismatch");
  Vec r = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    Rational f = r[pivots_[i]];
    if (sgn(f) == 0) continue;
    for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
      if (sgn(basis_(i, j)) != 0) r[j] -= f * basis_(i, j);
    }
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return cartan::is_zero(reduce(v)); }

bool Subspace::is_subset_of(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw DimensionError("is_subset: ambient mismatch");
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!other.contains(basis_.row(i))) return false;
  }
  return true;
}

Vec Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) throw InvariantError("membership", "vector is not in the subspace");
  Vec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Mat Subspace::annihilator() const {
  Subspace k = kernel(basis_);
  return k.basis();
}

Subspace kernel(const Mat& m) {
  RrefResult r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> gens;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zero_vec(n);
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, f);
    gens.push_back(std::move(v));
  }
  return Subspace::span(n, gens);
}

SolveResult solve(const Mat& a, const Vec& b) {
  if (a.rows() != b.size()) throw DimensionError("solve: rows and rhs length differ");
  const std::size_t n = a.cols();
  Mat aug(a.rows(), n + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, n) = b[i];
  RrefResult r = rref(std::move(aug));
  SolveResult out{std::nullopt, kernel(a)};
  if (!r.pivots.empty() && r.pivots.back() == n) return out;
  Vec x = zero_vec(n);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced(i, n);
  out.particular = std::move(x);
  return out;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("sum: ambient mismatch");
  return Subspace::row_space(vstack({a.basis(), b.basis()}, a.ambient_dim()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("intersect: ambient mismatch");
  return kernel(vstack({a.annihilator(), b.annihilator()}, a.ambient_dim()));
}

Subspace map_subspace(const Mat& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) throw DimensionError("map_subspace: dimension mismatch");
  std::vector<Vec> imgs;
  for (std::size_t i = 0; i < s.dim(); ++i) imgs.push_back(m.apply(s.basis_vector(i)));
  return Subspace::span(m.rows(), imgs);
}

}  // namespace cartan

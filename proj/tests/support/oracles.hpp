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

// Independent reference computations shared by the unit and acceptance tests.

#ifndef CARTAN_TESTS_ORACLES_HPP
#define CARTAN_TESTS_ORACLES_HPP

#include <optional>
#include <vector>

#include "cartan/autos.hpp"
#include "random.hpp"

namespace cartan::testing {

/// Row-major vec of [a, .] on N x N matrices: a (x) I - I (x) a^T.
inline Mat ad_superoperator(const Mat& a) {
  const std::size_t n = a.rows();
  Mat out(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        out(i * n + j, k * n + j) += a(i, k);
        out(i * n + j, i * n + k) -= a(k, j);
      }
    }
  }
  return out;
}

/// Span of all words ad(A_k1) ... ad(A_kd) F with d bounded by N^2, grown
/// level by level as a column space.
inline Subspace closure_by_enumeration(const std::vector<Mat>& ops, const std::vector<Mat>& gens) {
  if (gens.empty()) return Subspace(0);
  const std::size_t n = gens.front().rows();
  std::vector<Mat> ads;
  for (const Mat& a : ops) ads.push_back(ad_superoperator(a));
  std::vector<Vec> level;
  for (const Mat& g : gens) level.push_back(g.flatten());
  std::vector<Vec> all = level;
  std::size_t r = rank(Mat::from_cols(all, n * n));
  for (std::size_t depth = 0; depth < n * n && !level.empty(); ++depth) {
    std::vector<Vec> next;
    for (const Mat& ad : ads)
      for (const Vec& v : level) next.push_back(ad.apply(v));
    all.insert(all.end(), next.begin(), next.end());
    // keep one column space basis so that the word count stays bounded
    Subspace s = Subspace::span(n * n, all);
    all = s.basis_vectors();
    level = next.empty() ? next : Subspace::span(n * n, next).basis_vectors();
    if (s.dim() == r) break;
    r = s.dim();
  }
  return Subspace::span(n * n, all);
}

/// alpha = id + E on the Klein skeleton of (g, h) with E vanishing on h and
/// commuting with ad(h); nullopt when the draw is not an extension.
inline std::optional<SkeletonMorphism> random_klein_extension(const KleinModel& k, Rng& rng) {
  const std::size_t d = k.g.dim();
  std::vector<Mat> blocks;
  for (std::size_t b = 0; b < k.h.dim(); ++b) {
    Vec x = k.h.basis_vector(b);
    Mat vanish(d, d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) vanish(i, i * d + j) = x[j];
    blocks.push_back(vanish);
    Mat ad = k.g.ad(x);
    Mat comm(d * d, d * d);
    for (std::size_t e = 0; e < d * d; ++e) {
      Mat unit(d, d);
      unit(e / d, e % d) = 1;
      Vec c = commutator(unit, ad).flatten();
      for (std::size_t r = 0; r < d * d; ++r) comm(r, e) = c[r];
    }
    blocks.push_back(comm);
  }
  Subspace sol = kernel(vstack(blocks, d * d));
  Vec coef(sol.dim());
  for (auto& c : coef) {
    c = Rational(rng.coin() ? rng.integer(1, 3) : -rng.integer(1, 3), rng.integer(1, 2));
    c.canonicalize();
  }
  Vec e = zero_vec(d * d);
  for (std::size_t i = 0; i < sol.dim(); ++i) e = e + coef[i] * sol.basis_vector(i);
  Mat alpha = Mat::identity(d) + Mat::reshape(e, d, d);
  SkeletonMorphism m{k, k.skeleton(), alpha, Mat::identity(k.h.dim())};
  if (!is_extension(m)) return std::nullopt;
  return m;
}

/// Smallest commutator-closed subspace of gl(k) containing the given
/// operators, in row-major coordinates.
inline Subspace matrix_closure(const std::vector<Mat>& gens, std::size_t k) {
  std::vector<Vec> cur;
  for (const Mat& g : gens) cur.push_back(g.flatten());
  Subspace s = Subspace::span(k * k, cur);
  for (;;) {
    std::vector<Vec> more = s.basis_vectors();
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = i + 1; j < s.dim(); ++j)
        more.push_back(commutator(Mat::reshape(s.basis_vector(i), k, k),
                                  Mat::reshape(s.basis_vector(j), k, k))
                           .flatten());
    Subspace next = Subspace::span(k * k, more);
    if (next.dim() == s.dim()) return s;
    s = next;
  }
}

/// The A-map of the SO(2) example written out by hand in affine(3)
/// coordinates (t1, t2, t3, gl(3) row-major). The g element is
/// a X1 + b X2 + c X3 + x x and the argument has translation (a', b', x') and
/// linear part [[m1', -c', 0], [c', m1', 0], [0, 0, m2']]. Returns nullopt when
/// the argument does not have that shape.
inline std::optional<Vec> so2_displayed_a(const Vec& z, const Vec& arg) {
  const Rational &a = z[0], &b = z[1], &c = z[2], &x = z[3];
  auto lin = [&](std::size_t i, std::size_t j) -> const Rational& { return arg[3 + 3 * i + j]; };
  const Rational &a1 = arg[0], &b1 = arg[1], &x1 = arg[2];
  const Rational m1 = lin(0, 0), c1 = lin(1, 0), m2 = lin(2, 2);
  if (lin(1, 1) != m1 || lin(0, 1) != -c1 || sgn(lin(0, 2)) || sgn(lin(1, 2)) || sgn(lin(2, 0)) ||
      sgn(lin(2, 1))) {
    return std::nullopt;
  }
  Vec out = zero_vec(12);
  out[0] = -a * m1 + b * c1 - c * b1;
  out[1] = -b * m1 - a * c1 + c * a1;
  out[2] = -x * m2;
  Rational j = a * b1 - b * a1;
  out[3 + 1] = -j;
  out[3 + 3] = j;
  return out;
}

}  // namespace cartan::testing

#endif  // CARTAN_TESTS_ORACLES_HPP

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

#include "cartan/autos.hpp"

#include <deque>

#include "cartan/errors.hpp"

namespace cartan {

namespace {

Vec l_coords(const Skeleton& s, const Vec& v) {
  auto r = solve(s.l_embed, v);
  if (!r.consistent()) throw InvariantError("normalizes l", "operator moves l out of itself");
  return *r.particular;
}

Mat pad(const Mat& m, std::size_t rows, std::size_t cols) {
  Mat out(rows, cols);
  out.set_block(0, 0, m);
  return out;
}

Mat combine(const std::vector<Mat>& ms, const Vec& x, std::size_t rows, std::size_t cols) {
  Mat out(rows, cols);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (sgn(x[i]) != 0) out = out + x[i] * ms[i];
  }
  return out;
}

}  // namespace

SkeletonMap ExtendedSkeleton::inclusion() const {
  return {base, result, k_inclusion, l_inclusion};
}

ExtendedSkeleton build_rho_s(const Skeleton& base, const Subspace& s) {
  const std::size_t k = base.k_dim;
  const std::size_t l = base.l.dim();
  if (s.ambient_dim() != k * k) throw DimensionError("build_rho_s: s must live in gl(k)");
  ExtendedSkeleton ext;
  ext.base = base;
  ext.s = s;
  const std::size_t d = s.dim();
  for (std::size_t a = 0; a < d; ++a) ext.s_basis.push_back(Mat::reshape(s.basis_vector(a), k, k));
  const auto& w = ext.s_basis;

  if (d > 0 && !s.is_subset_of(iext_algebra(base))) {
    throw InvariantError("iext", "s is not contained in the infinitesimal extension algebra");
  }
  auto s_coords = [&](const Mat& m) {
    Vec f = m.flatten();
    if (!s.contains(f)) throw InvariantError("closure", "s is not closed under the commutator");
    return s.coordinates(f);
  };
  // ad_s(W_a) in s coordinates
  std::vector<Mat> ad_s;
  for (std::size_t a = 0; a < d; ++a) {
    std::vector<Vec> cols;
    for (std::size_t b = 0; b < d; ++b) cols.push_back(s_coords(commutator(w[a], w[b])));
    ad_s.push_back(Mat::from_cols(cols, d));
  }
  // W_a restricted to l, in l coordinates
  std::vector<Mat> w_on_l;
  for (std::size_t a = 0; a < d; ++a) {
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < l; ++i) cols.push_back(l_coords(base, w[a].apply(base.l_embed.col(i))));
    w_on_l.push_back(Mat::from_cols(cols, l));
  }

  const std::size_t ld = l + d;
  std::vector<Vec> brackets(ld * ld, zero_vec(ld));
  for (std::size_t p = 0; p < ld; ++p) {
    for (std::size_t q = 0; q < ld; ++q) {
      Vec& out = brackets[p * ld + q];
      if (p < l && q < l) {
        out = concat(base.l.bracket_basis(p, q), zero_vec(d));
      } else if (p < l) {
        out = concat(-w_on_l[q - l].col(p), zero_vec(d));
      } else if (q < l) {
        out = concat(w_on_l[p - l].col(q), zero_vec(d));
      } else {
        out = concat(zero_vec(l), ad_s[p - l].col(q - l));
      }
    }
  }
  std::vector<std::string> l_labels = base.l.labels();
  std::vector<std::string> k_labels = base.k_labels;
  if (k_labels.empty()) {
    for (std::size_t i = 0; i < k; ++i) k_labels.push_back("k" + std::to_string(i + 1));
  }
  for (std::size_t a = 0; a < d; ++a) {
    l_labels.push_back("s" + std::to_string(a + 1));
    k_labels.push_back("s" + std::to_string(a + 1));
  }

  Skeleton& r = ext.result;
  r.k_dim = k + d;
  r.l = LieAlgebra(ld, brackets, l_labels);
  r.l_embed = Mat::block_diag(base.l_embed, Mat::identity(d));
  for (std::size_t i = 0; i < l; ++i) {
    Mat op = pad(base.drho[i], k + d, k + d);
    for (std::size_t a = 0; a < d; ++a) {
      Vec col = -w[a].apply(base.l_embed.col(i));
      for (std::size_t row = 0; row < k; ++row) op(row, k + a) = col[row];
    }
    r.drho.push_back(std::move(op));
  }
  for (std::size_t a = 0; a < d; ++a) r.drho.push_back(Mat::block_diag(w[a], ad_s[a]));
  for (const auto& rep : base.component_reps) {
    auto inv = inverse(rep.rho_op);
    if (!inv) throw InvariantError("component invertible", "singular component representative");
    std::vector<Vec> cols;
    for (std::size_t b = 0; b < d; ++b) {
      Mat c = rep.rho_op * w[b] * *inv;
      if (!s.contains(c.flatten())) {
        throw InvariantError("component", "s is not stable under a component representative");
      }
      cols.push_back(s.coordinates(c.flatten()));
    }
    Mat conj = Mat::from_cols(cols, d);
    r.component_reps.push_back({Mat::block_diag(rep.rho_op, conj), Mat::block_diag(rep.l_auto, conj)});
  }
  r.k_labels = k_labels;
  if (base.translation_dim) {
    const std::size_t n = *base.translation_dim;
    bool stable = true;
    for (const Mat& op : w) {
      for (std::size_t j = 0; j < n && stable; ++j) {
        for (std::size_t row = n; row < k && stable; ++row) stable = sgn(op(row, j)) == 0;
      }
    }
    if (stable) r.translation_dim = n;
  }
  require_valid(r);

  ext.k_inclusion = pad(Mat::identity(k), k + d, k);
  ext.l_inclusion = pad(Mat::identity(l), ld, l);
  return ext;
}

Subspace antidiagonal_kernel(const ExtendedSkeleton& ext) {
  const std::size_t k = ext.base.k_dim;
  std::vector<Vec> cols;
  for (const Mat& d : ext.base.drho) cols.push_back(d.flatten());
  for (const Mat& w : ext.s_basis) cols.push_back(w.flatten());
  if (cols.empty()) return Subspace(0);
  return kernel(Mat::from_cols(cols, k * k));
}

// ---------------------------------------------------------------------------

AMap build_a_map(const SkeletonMorphism& m, const ExtendedSkeleton& ext,
                 const std::optional<Subspace>& complement) {
  require_extension(m);
  if (!same_skeleton(m.target, ext.base)) {
    throw InvariantError("a-map", "the extension does not land in the base of the extended skeleton");
  }
  const auto& g = m.source.g;
  const auto& h = m.source.h;
  const Skeleton& base = ext.base;
  const std::size_t k = base.k_dim;
  const std::size_t l = base.l.dim();
  const std::size_t total = ext.total_dim();

  AMap a{m, ext, {}, complement ? *complement : h.canonical_complement()};
  const Subspace& c = a.complement;
  if (c.ambient_dim() != g.dim() || c.dim() + h.dim() != g.dim() || !intersect(c, h).is_zero()) {
    throw DimensionError("build_a_map: not a complement of h");
  }
  // split v in k as alpha(c) + l_embed(y)
  Mat c_cols = c.basis().transpose();
  Mat split(k, c.dim() + l);
  split.set_block(0, 0, m.alpha * c_cols);
  split.set_block(0, c.dim(), base.l_embed);
  auto split_inv = inverse(split);
  if (!split_inv) throw InvariantError("extension", "alpha(complement) and l do not span k");

  for (std::size_t t = 0; t < g.dim(); ++t) {
    const Vec et = unit_vec(g.dim(), t);
    const Vec at = m.alpha.col(t);
    Mat op(total, total);
    for (std::size_t j = 0; j < k; ++j) {
      Vec gy = split_inv->col(j);
      Vec sg = c_cols.apply(slice(gy, 0, c.dim()));
      Vec y = slice(gy, c.dim(), l);
      Vec col = -m.alpha.apply(g.bracket(sg, et)) - base.drho_of(y).apply(at);
      for (std::size_t row = 0; row < k; ++row) op(row, j) = col[row];
    }
    for (std::size_t b = 0; b < ext.s_dim(); ++b) {
      Vec col = -ext.s_basis[b].apply(at);
      for (std::size_t row = 0; row < k; ++row) op(row, k + b) = col[row];
    }
    a.operators.push_back(std::move(op));
  }
  return a;
}

std::vector<Violation> check_a_map(const AMap& a) {
  std::vector<Violation> out;
  const auto& g = a.morphism.source.g;
  const auto& h = a.morphism.source.h;
  const auto& ext = a.extended;
  const std::size_t k = ext.base.k_dim;
  const std::size_t total = ext.total_dim();
  for (std::size_t t = 0; t < a.operators.size(); ++t) {
    for (std::size_t row = k; row < total; ++row) {
      for (std::size_t col = 0; col < total; ++col) {
        if (sgn(a.operators[t](row, col)) != 0) {
          out.push_back({"image in k", "A(Z" + std::to_string(t) + ") leaves k"});
          row = total;
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < h.dim(); ++i) {
    const Vec x = h.basis_vector(i);
    Mat rho = ext.result.drho_of(ext.l_inclusion.apply(a.morphism.dj.col(i)));
    if (combine(a.operators, x, total, total) != rho) {
      out.push_back({"A on h", "A(X) != drho_S(dj X) for h basis " + std::to_string(i)});
    }
    for (std::size_t z = 0; z < g.dim(); ++z) {
      Mat lhs = combine(a.operators, g.bracket(x, unit_vec(g.dim(), z)), total, total);
      if (lhs != commutator(rho, a.operators[z])) {
        out.push_back({"h-equivariance", "A([X, Z]) != [drho_S(dj X), A(Z)] at (h basis, g basis) (" +
                                             std::to_string(i) + ", " + std::to_string(z) + ")"});
      }
    }
  }
  return out;
}

std::vector<Mat> curvature_operators(const AMap& a) {
  const auto& g = a.morphism.source.g;
  const std::size_t total = a.extended.total_dim();
  std::vector<Mat> out;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      out.push_back(commutator(a.operators[i], a.operators[j]) -
                    combine(a.operators, g.bracket_basis(i, j), total, total));
    }
  }
  return out;
}

Subspace holonomy_closure(const AMap& a) {
  const std::size_t total = a.extended.total_dim();
  Subspace cur(total * total);
  std::deque<Mat> work;
  auto add = [&](Mat m) {
    Vec f = m.flatten();
    if (cur.contains(f)) return;
    cur = Subspace::row_space(vstack({cur.basis(), Mat::from_rows({f}, f.size())}, f.size()));
    work.push_back(std::move(m));
  };
  for (Mat& f : curvature_operators(a)) add(std::move(f));
  while (!work.empty()) {
    Mat m = std::move(work.front());
    work.pop_front();
    for (const Mat& op : a.operators) add(commutator(op, m));
  }
  return cur;
}

Subspace infinitesimal_autos(const AMap& a, const Subspace& closure) {
  const std::size_t total = a.extended.total_dim();
  if (closure.is_zero()) return Subspace::full(total);
  std::vector<Mat> blocks;
  for (std::size_t i = 0; i < closure.dim(); ++i) {
    blocks.push_back(Mat::reshape(closure.basis_vector(i), total, total));
  }
  return kernel(vstack(blocks, total));
}

Subspace infinitesimal_autos(const AMap& a) { return infinitesimal_autos(a, holonomy_closure(a)); }

Subspace flat_model_auto_filter(const ExtendedSkeleton& ext, const KleinModel& klein) {
  if (!same_skeleton(ext.base, klein.skeleton())) {
    throw InvariantError("flat model", "base of the extended skeleton is not the Klein skeleton");
  }
  const auto& g = klein.g;
  const std::size_t n = g.dim();
  const std::size_t d = ext.s_dim();
  if (d == 0) return Subspace(0);
  Mat ann_h = klein.h.annihilator();
  std::vector<Mat> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec ei = unit_vec(n, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec ej = unit_vec(n, j);
      std::vector<Vec> cols;
      for (const Mat& w : ext.s_basis) {
        cols.push_back(w.apply(g.bracket_basis(i, j)) - g.bracket(w.col(i), ej) -
                       g.bracket(ei, w.col(j)));
      }
      blocks.push_back(Mat::from_cols(cols, n));
    }
  }
  for (std::size_t b = 0; b < klein.h.dim(); ++b) {
    std::vector<Vec> cols;
    for (const Mat& w : ext.s_basis) cols.push_back(ann_h.apply(w.apply(klein.h.basis_vector(b))));
    blocks.push_back(Mat::from_cols(cols, ann_h.rows()));
  }
  return kernel(vstack(blocks, d));
}

AutcorResult autcor_check(const SkeletonMorphism& m, const Mat& l_op, const Mat& beta) {
  const std::size_t k = m.target.k_dim;
  if (l_op.rows() != k || l_op.cols() != k || beta.rows() != k || beta.cols() != k) {
    throw DimensionError("autcor_check: operators must be k x k");
  }
  AutcorResult r;
  Mat b = l_op * beta;
  Subspace img = Subspace::image(m.alpha);
  r.preserves_image = map_subspace(b, img).is_subset_of(img);
  if (!r.preserves_image || rank(m.alpha) != m.source.g.dim()) return r;
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < m.source.g.dim(); ++j) {
    cols.push_back(*solve(m.alpha, b.apply(m.alpha.col(j))).particular);
  }
  Mat phi = Mat::from_cols(cols, m.source.g.dim());
  r.bracket_preserving = is_lie_homomorphism(m.source.g, m.source.g, phi);
  return r;
}

}  // namespace cartan

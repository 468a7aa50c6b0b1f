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

#include "cartan/extension.hpp"

#include "cartan/errors.hpp"

namespace cartan {

namespace {

std::string pair_str(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

const LieAlgebra& target_bracket(const Skeleton& s) {
  if (!s.k_bracket) throw InvariantError("bracket", "target has no declared bracket");
  return *s.k_bracket;
}

}  // namespace

KleinModel KleinModel::make(LieAlgebra g, Subspace h) {
  if (h.ambient_dim() != g.dim()) throw DimensionError("KleinModel: ambient mismatch");
  if (!is_bracket_closed(g, h)) throw InvariantError("closure", "h is not a subalgebra of g");
  return {std::move(g), std::move(h)};
}

std::vector<Violation> validate_morphism(const SkeletonMorphism& m) {
  std::vector<Violation> out;
  const auto& g = m.source.g;
  const auto& h = m.source.h;
  const auto& t = m.target;
  if (m.alpha.rows() != t.k_dim || m.alpha.cols() != g.dim() || m.dj.rows() != t.l.dim() ||
      m.dj.cols() != h.dim()) {
    out.push_back({"shape", "alpha must be k x g and dj l x h"});
    return out;
  }
  for (auto& v : validate(t)) out.push_back({"target " + v.equation, v.detail});
  Mat h_cols = h.basis().transpose();
  if (m.alpha * h_cols != t.l_embed * m.dj) {
    out.push_back({"alpha on h", "alpha restricted to h differs from l_embed o dj"});
  }
  for (std::size_t i = 0; i < h.dim(); ++i) {
    Mat lhs = m.alpha * g.ad(h.basis_vector(i));
    Mat rhs = t.drho_of(m.dj.col(i)) * m.alpha;
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (lhs.col(j) != rhs.col(j)) {
        out.push_back({"equivariance", "alpha([X, Y]) != drho(dj X) alpha(Y) at (h basis, g basis) " +
                                           pair_str(i, j)});
      }
    }
  }
  if (!is_lie_homomorphism(m.source.h_algebra(), t.l, m.dj)) {
    out.push_back({"dj homomorphism", "dj does not preserve brackets"});
  }
  return out;
}

std::vector<Violation> validate_map(const SkeletonMap& m) {
  std::vector<Violation> out;
  const auto& a = m.source;
  const auto& b = m.target;
  if (m.alpha.rows() != b.k_dim || m.alpha.cols() != a.k_dim || m.dj.rows() != b.l.dim() ||
      m.dj.cols() != a.l.dim()) {
    out.push_back({"shape", "alpha must be k' x k and dj l' x l"});
    return out;
  }
  if (m.alpha * a.l_embed != b.l_embed * m.dj) {
    out.push_back({"alpha on l", "alpha restricted to l differs from l_embed' o dj"});
  }
  for (std::size_t i = 0; i < a.l.dim(); ++i) {
    if (m.alpha * a.drho[i] != b.drho_of(m.dj.col(i)) * m.alpha) {
      out.push_back({"equivariance", "alpha drho(X) != drho'(dj X) alpha at l basis " +
                                         std::to_string(i)});
    }
  }
  if (!is_lie_homomorphism(a.l, b.l, m.dj)) {
    out.push_back({"dj homomorphism", "dj does not preserve brackets"});
  }
  return out;
}

bool is_extension(const SkeletonMorphism& m) {
  if (!validate_morphism(m).empty()) return false;
  const auto& t = m.target;
  if (m.source.g.dim() - m.source.h.dim() != t.k_dim - t.l.dim()) return false;
  return sum(Subspace::image(m.alpha), t.l_image()).dim() == t.k_dim;
}

void require_extension(const SkeletonMorphism& m) {
  auto v = validate_morphism(m);
  if (!v.empty()) throw InvariantError(v.front().equation, v.front().detail);
  if (!is_extension(m)) {
    throw InvariantError("extension", "g/h -> k/l is not an isomorphism");
  }
}

SkeletonMorphism identity_extension(const KleinModel& klein) {
  return {klein, klein.skeleton(), Mat::identity(klein.g.dim()), Mat::identity(klein.h.dim())};
}

SkeletonMap identity_map(const Skeleton& s) {
  return {s, s, Mat::identity(s.k_dim), Mat::identity(s.l.dim())};
}

bool same_skeleton(const Skeleton& a, const Skeleton& b) {
  return a.k_dim == b.k_dim && a.l == b.l && a.l_embed == b.l_embed && a.drho == b.drho;
}

SkeletonMorphism compose(const SkeletonMap& second, const SkeletonMorphism& first) {
  if (!same_skeleton(first.target, second.source)) {
    throw InvariantError("compose", "target of the first morphism is not the source of the second");
  }
  return {first.source, second.target, second.alpha * first.alpha, second.dj * first.dj};
}

SkeletonMap compose(const SkeletonMap& second, const SkeletonMap& first) {
  if (!same_skeleton(first.target, second.source)) {
    throw InvariantError("compose", "target of the first map is not the source of the second");
  }
  return {first.source, second.target, second.alpha * first.alpha, second.dj * first.dj};
}

Vec r_alpha(const SkeletonMorphism& m, const Vec& x, const Vec& y) {
  const LieAlgebra& k = target_bracket(m.target);
  return k.bracket(m.alpha.apply(x), m.alpha.apply(y)) - m.alpha.apply(m.source.g.bracket(x, y));
}

Subspace CurvatureTable::span(std::size_t k_dim) const {
  std::vector<Vec> gens;
  for (const auto& row : values) gens.insert(gens.end(), row.begin(), row.end());
  return Subspace::span(k_dim, gens);
}

CurvatureTable curvature_homogeneous(const SkeletonMorphism& m,
                                     const std::optional<Subspace>& complement) {
  target_bracket(m.target);
  CurvatureTable t;
  t.complement = complement ? *complement : m.source.h.canonical_complement();
  if (t.complement.ambient_dim() != m.source.g.dim() ||
      t.complement.dim() + m.source.h.dim() != m.source.g.dim() ||
      !intersect(t.complement, m.source.h).is_zero()) {
    throw DimensionError("curvature_homogeneous: not a complement of h");
  }
  t.reps = t.complement.basis_vectors();
  const std::size_t c = t.reps.size();
  t.values.assign(c, std::vector<Vec>(c, zero_vec(m.target.k_dim)));
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = i + 1; j < c; ++j) {
      t.values[i][j] = r_alpha(m, t.reps[i], t.reps[j]);
      t.values[j][i] = -t.values[i][j];
    }
  }
  return t;
}

Mat translation_projection(const Skeleton& s) {
  if (!s.translation_dim) {
    throw InvariantError("invariant complement", "target has no declared invariant complement");
  }
  const std::size_t n = *s.translation_dim;
  Mat b(s.k_dim, s.k_dim);
  for (std::size_t i = 0; i < n; ++i) b(i, i) = 1;
  b.set_block(0, n, s.l_embed);
  auto inv = inverse(b);
  if (!inv) throw InvariantError("invariant complement", "R^n and l do not span k");
  return inv->block(0, 0, n, s.k_dim);
}

std::vector<std::vector<Vec>> torsion_component(const SkeletonMorphism& m) {
  Mat p = translation_projection(m.target);
  CurvatureTable t = curvature_homogeneous(m);
  std::vector<std::vector<Vec>> out;
  for (const auto& row : t.values) {
    std::vector<Vec> r;
    for (const auto& v : row) r.push_back(p.apply(v));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cartan

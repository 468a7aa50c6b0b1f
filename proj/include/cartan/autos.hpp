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

// Extended skeletons (k + s, L x| S, rho_S), the A-map of a homogeneous
// extension and its holonomy closure, whose joint kernel is the space of
// infinitesimal automorphisms. Whether those integrate to group elements is
// not decided here.

#ifndef CARTAN_AUTOS_HPP
#define CARTAN_AUTOS_HPP

#include <optional>
#include <string>
#include <vector>

#include "cartan/extension.hpp"

namespace cartan {

/// k (+) s with coordinates k first, then the RREF basis of s. l (+) s has
/// coordinates l first, then s.
struct ExtendedSkeleton {
  Skeleton base;
  Subspace s;               // in gl(k), row-major
  std::vector<Mat> s_basis;  // k x k operators
  Skeleton result;
  LinearMap k_inclusion;  // (k + s) x k
  LinearMap l_inclusion;  // (l + s) x l

  std::size_t s_dim() const { return s_basis.size(); }
  std::size_t total_dim() const { return base.k_dim + s_dim(); }
  /// The inclusion (k, L) -> (k + s, L x| S) as a skeleton map.
  SkeletonMap inclusion() const;
};

/// Throws InvariantError when s is not bracket-closed, not inside iext, or
/// not stable under the listed component representatives.
ExtendedSkeleton build_rho_s(const Skeleton& base, const Subspace& s);

/// {X + W : drho(X) + W = 0 on k}, X in l and W in s, as a subspace of l + s.
Subspace antidiagonal_kernel(const ExtendedSkeleton& ext);

struct AMap {
  SkeletonMorphism morphism;
  ExtendedSkeleton extended;
  std::vector<Mat> operators;  // A(Z_i) on k + s, one per basis vector of g
  Subspace complement;         // complement of h used to split k
};

/// m must be an extension onto ext.base. The k part of an argument is split
/// as alpha(s_g) + s_l with s_g in `complement` (default: the canonical
/// complement of h).
AMap build_a_map(const SkeletonMorphism& m, const ExtendedSkeleton& ext,
                 const std::optional<Subspace>& complement = std::nullopt);

/// Image in k, h-equivariance and A(X) = drho_S(dj X) on h.
std::vector<Violation> check_a_map(const AMap& a);

/// F(Z_i, Z_j) = [A(Z_i), A(Z_j)] - A([Z_i, Z_j]) for i < j, row-major order.
std::vector<Mat> curvature_operators(const AMap& a);

/// Smallest subspace of gl(k + s) containing every F(Z_i, Z_j) and stable
/// under [A(Z_k), .].
Subspace holonomy_closure(const AMap& a);
/// Joint kernel of the closure, a subspace of k + s.
Subspace infinitesimal_autos(const AMap& a);
Subspace infinitesimal_autos(const AMap& a, const Subspace& closure);

/// {W in s : W is a derivation of g preserving h}, in s coordinates. The base
/// of ext must be the Klein skeleton of klein.
Subspace flat_model_auto_filter(const ExtendedSkeleton& ext, const KleinModel& klein);

struct AutcorResult {
  bool preserves_image = false;
  bool bracket_preserving = false;
  bool ok() const { return preserves_image && bracket_preserving; }
};

/// rho(l) o beta preserves alpha(g), and alpha^-1 rho(l) beta alpha is
/// bracket preserving on g. Group integrability is not decided.
AutcorResult autcor_check(const SkeletonMorphism& m, const Mat& l_op, const Mat& beta);

}  // namespace cartan

#endif  // CARTAN_AUTOS_HPP

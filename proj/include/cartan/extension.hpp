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

// Morphisms and extensions of skeletons, and the curvature of the
// homogeneous Cartan geometry they induce from a Klein model.
//
// Sign convention: the Maurer-Cartan form satisfies
// d omega(omega^-1 X, omega^-1 Y) = -[X, Y], so the curvature of the
// extended flat model is kappa(X, Y) = [aX, aY]_k - a([X, Y]_g) = R_a(X, Y)
// and vanishes exactly when a is a Lie algebra homomorphism.

#ifndef CARTAN_EXTENSION_HPP
#define CARTAN_EXTENSION_HPP

#include <optional>
#include <vector>

#include "cartan/skeleton.hpp"

namespace cartan {

struct KleinModel {
  LieAlgebra g;
  Subspace h;

  /// Throws InvariantError unless h is a subalgebra.
  static KleinModel make(LieAlgebra g, Subspace h);
  Skeleton skeleton() const { return klein_skeleton(g, h); }
  /// h with its RREF basis as a Lie algebra.
  LieAlgebra h_algebra() const { return LieAlgebra::restrict_to(g, h); }
};

/// (alpha, dj) from the Klein skeleton of `source` to `target`. dj is written
/// in the RREF basis of h.
struct SkeletonMorphism {
  KleinModel source;
  Skeleton target;
  LinearMap alpha;  // k x g
  LinearMap dj;     // l x h
};

/// (alpha, dj) between two general skeletons.
struct SkeletonMap {
  Skeleton source;
  Skeleton target;
  LinearMap alpha;  // k' x k
  LinearMap dj;     // l' x l
};

std::vector<Violation> validate_morphism(const SkeletonMorphism& m);
std::vector<Violation> validate_map(const SkeletonMap& m);
/// Valid, alpha(g) + l = k and dim g - dim h = dim k - dim l.
bool is_extension(const SkeletonMorphism& m);
void require_extension(const SkeletonMorphism& m);

SkeletonMorphism identity_extension(const KleinModel& klein);
SkeletonMap identity_map(const Skeleton& s);

/// Same dimensions, l brackets, embedding and operators.
bool same_skeleton(const Skeleton& a, const Skeleton& b);
SkeletonMorphism compose(const SkeletonMap& second, const SkeletonMorphism& first);
SkeletonMap compose(const SkeletonMap& second, const SkeletonMap& first);

/// [aX, aY]_k - a([X, Y]_g). Throws InvariantError("bracket") when the
/// target has no declared bracket on k.
Vec r_alpha(const SkeletonMorphism& m, const Vec& x, const Vec& y);

/// kappa on a fixed complement of h, one value per basis pair i < j.
struct CurvatureTable {
  Subspace complement;         // in g
  std::vector<Vec> reps;       // basis of the complement used as coset representatives
  std::vector<std::vector<Vec>> values;  // values[i][j], antisymmetric, in k

  Subspace span(std::size_t k_dim) const;
};

/// Uses the canonical complement of h unless another complement is given.
CurvatureTable curvature_homogeneous(const SkeletonMorphism& m,
                                     const std::optional<Subspace>& complement = std::nullopt);

/// Components of kappa in the declared invariant complement R^n, projected
/// along l. Throws InvariantError("invariant complement") without one.
std::vector<std::vector<Vec>> torsion_component(const SkeletonMorphism& m);

/// Projection k -> R^n along l for a skeleton with translation_dim.
Mat translation_projection(const Skeleton& s);

}  // namespace cartan

#endif  // CARTAN_EXTENSION_HPP

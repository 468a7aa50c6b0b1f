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

// Skeletons (k, L, rho) at the Lie algebra level.
//
// A skeleton is stored as: the dimension of k, the Lie algebra l of L, the
// inclusion l -> k, the operators drho(e_i) on k for the basis of l, and one
// (rho operator, Ad automorphism of l) pair per listed non-identity component
// of L. A bracket on k is optional; it is present for Klein and affine-type
// skeletons and required by curvature computations.

#ifndef CARTAN_SKELETON_HPP
#define CARTAN_SKELETON_HPP

#include <optional>
#include <string>
#include <vector>

#include "cartan/exactmat.hpp"
#include "cartan/liealg.hpp"

namespace cartan {

struct ComponentRep {
  Mat rho_op;  // on k
  Mat l_auto;  // on l
};

struct Skeleton {
  std::size_t k_dim = 0;
  LieAlgebra l;
  LinearMap l_embed;  // k_dim x dim l
  std::vector<Mat> drho;
  std::vector<ComponentRep> component_reps;
  std::optional<LieAlgebra> k_bracket;
  std::vector<std::string> k_labels;
  /// When set to n, the first n coordinates of k span an invariant
  /// complement R^n of l (affine-type skeletons).
  std::optional<std::size_t> translation_dim;
  /// gl(n) matrices of the l basis for affine-type skeletons, empty otherwise.
  std::vector<Mat> linear_basis;

  std::size_t l_dim() const { return l.dim(); }
  Subspace l_image() const { return Subspace::image(l_embed); }
  /// drho(x) for x in l coordinates.
  Mat drho_of(const Vec& x) const;
  const std::string& k_label(std::size_t i) const { return k_labels.at(i); }
};

struct Violation {
  std::string equation;
  std::string detail;
};

std::vector<Violation> validate(const Skeleton& s);
/// Throws InvariantError for the first violation.
void require_valid(const Skeleton& s);

/// Klein skeleton (g, H, Ad) of a subalgebra h of g.
Skeleton klein_skeleton(const LieAlgebra& g, const Subspace& h);
/// (R^n (+) m, M, Ad) inside affine(n) for a matrix subalgebra m of gl(n);
/// `components` are matrices in GL(n) normalizing m, one per extra component.
Skeleton affine_skeleton(std::size_t n, const std::vector<Mat>& linear_basis,
                         std::vector<std::string> linear_labels,
                         const std::vector<Mat>& components = {});
/// (R^n (+) so(n), O(n), Ad) with the reflection diag(-1, 1, ..., 1) as
/// representative of the second component.
Skeleton euclidean_skeleton(std::size_t n);
/// (R^n (+) co(n), CO(n), Ad), same reflection.
Skeleton conformal_skeleton(std::size_t n);

/// Greatest ideal n of l with drho(n) k in n, computed as a decreasing
/// fixpoint. Listed component automorphisms must preserve n as well.
Subspace kernel_ideal(const Skeleton& s);

struct Quotient {
  Skeleton skeleton;
  Subspace kernel;       // in l
  Subspace kernel_in_k;  // its image in k
  Mat k_projection;      // k -> k/n, along n onto the canonical complement
  Mat l_projection;      // l -> l/n
  Mat k_lift;            // k/n -> k, unit vectors at the non-pivot coordinates
  Mat l_lift;            // l/n -> l, likewise
};

/// Skeleton on k/n with l/n and the induced action. The bracket on k is kept
/// only when n is an ideal of it.
Quotient effective_quotient(const Skeleton& s);

/// {a in gl(k) : a(l) in l and [a, drho(X)] = drho(a X) for X in l} with
/// gl(k) in row-major coordinates. Throws InvariantError("effective") for a
/// skeleton with nonzero kernel.
Subspace iext_algebra(const Skeleton& s);
std::vector<Mat> iext_basis(const Skeleton& s);

struct ExtGroupElement {
  Mat alpha;           // on k
  Mat induced_l_auto;  // on l
};

struct ExtCheck {
  std::vector<Violation> violations;
  bool heuristic = false;  // the component check used a numerical logarithm
  bool ok() const { return violations.empty(); }
};

ExtCheck verify_ext_candidate(const Skeleton& s, const ExtGroupElement& e);

}  // namespace cartan

#endif  // CARTAN_SKELETON_HPP

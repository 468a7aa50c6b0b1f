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

// Riemannian metrics sharing one invariant affine connection: the holonomy
// algebra of an extension into an affine-type skeleton, the space Z of
// compatible metrics, the tau action on Z and its orbit space.
//
// Holonomy, normalizers, Z and the automorphism algebra are exact. The tau
// action and orbit ranks are floating point.

#ifndef CARTAN_RIEMANN_HPP
#define CARTAN_RIEMANN_HPP

#include <optional>
#include <string>
#include <vector>

#include "cartan/autos.hpp"
#include "cartan/numeric.hpp"

namespace cartan {

/// Coordinates on S^2 R^n: E_ii and E_ij + E_ji for i < j, row-major.
std::vector<Mat> sym_basis(std::size_t n);
std::vector<std::string> sym_labels(std::size_t n);

/// gl(n) part of a vector of k for an affine-type skeleton (projection along
/// R^n, then the linear realization of l).
Mat linear_part(const Skeleton& s, const Vec& v);

/// Closure of the gl(n) parts of kappa under brackets with the gl(n) parts
/// of alpha(g). Throws InvariantError when the target is not affine-type.
Subspace holonomy_of_extension(const SkeletonMorphism& m);

/// hol in so(n).
bool metrizability_check(const Subspace& hol, std::size_t n);

struct MetricFamily {
  std::size_t n = 0;
  Subspace hol;                 // in gl(n)
  std::vector<Mat> z_exact;     // symmetric, commuting with hol and the reps
  std::vector<SymMatF> z_basis;
  bool component_constraints = false;

  std::size_t dim() const { return z_exact.size(); }
  SymMatF point(const VecF& z) const;
  /// Least-squares coordinates of y in z_basis.
  VecF coordinates(const SymMatF& y) const;
};

MetricFamily metric_space_z(const Subspace& hol, std::size_t n,
                            const std::vector<Mat>& component_reps = {});

struct TauResult {
  SymMatF y_p;
  MatF k;  // orthogonal, p^-1 exp(Y) = exp(Y_p) k^-1
};

TauResult tau_apply(const MatF& p, const SymMatF& y);

struct OrbitSpace {
  std::size_t orbit_dim = 0;
  bool uniform = true;               // same rank at every base point
  std::vector<std::size_t> ranks;    // per base point
  MatF complement_numeric;           // columns in z coordinates
  std::optional<Subspace> complement;  // snapped to rationals when possible
  std::vector<std::string> representatives;
  std::vector<double> singular_values;  // at Y = 0
};

/// Rank of the infinitesimal tau action of exp(w * g) for the generators g,
/// by central differences with step w at Y = 0 and at each z_basis / 2.
OrbitSpace orbit_space(const MetricFamily& fam, const std::vector<Mat>& generators,
                       double step = 1e-4);

/// "diag(e^{m1}, e^{m1}, 1)" style rendering of exp(sum p_b Y_b), with the
/// parameter of each direction named after its leading z coordinate.
std::string render_representative(const MetricFamily& fam, const Subspace& directions);

struct Classification {
  std::size_t n = 0;
  Subspace hol;
  Subspace normalizer;  // n_gl(n)(hol)
  Skeleton base;        // (R^n + hol, Hol)
  SkeletonMorphism reduced;  // the extension into base
  ExtendedSkeleton extended;
  Quotient quotient;
  SkeletonMorphism effective;  // into the quotient skeleton
  SkeletonMap realization;     // quotient -> affine(n)
  AMap a_map;
  Subspace closure;
  Subspace autos;                    // in quotient coordinates
  std::vector<Mat> n_components;     // per autos basis vector
  MetricFamily family;
  OrbitSpace orbits;
  std::vector<std::string> notes;
  std::vector<std::string> caveats;
};

/// The full pipeline for an extension of a Klein model into an affine-type
/// skeleton carrying a linear realization. Requires alpha(g) in R^n + hol
/// and a metrizable holonomy; throws InvariantError naming the failed
/// condition otherwise.
Classification classify_metrics(const SkeletonMorphism& m, double step = 1e-4);

/// Operator on R^n + hol induced by P in the normalizer of hol:
/// (v, H) -> (P v, [P, H]).
Mat normalizer_operator(const Skeleton& base, const Mat& p);

}  // namespace cartan

#endif  // CARTAN_RIEMANN_HPP

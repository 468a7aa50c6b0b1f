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
#include "cartan/errors.hpp"
#include "cartan/examples.hpp"
#include "cartan/riemann.hpp"
#include "doctest.h"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace cartan;
using cartan::examples::rotation_generator;

namespace {

KleinModel euclidean_klein(std::size_t n) {
  auto e = builtin("euclidean", n).algebra;
  std::vector<std::size_t> lin;
  for (std::size_t i = n; i < e.dim(); ++i) lin.push_back(i);
  return KleinModel::make(e, Subspace::coordinate(e.dim(), lin));
}

Subspace no_s(const Skeleton& s) { return Subspace(s.k_dim * s.k_dim); }

Subspace line(const Mat& w) { return Subspace::span(w.rows() * w.cols(), {w.flatten()}); }

Mat diag(const Vec& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// The normalizer of hol acting on R^3 + hol for the SO(2) example.
ExtendedSkeleton so2_extended() {
  Skeleton base = examples::so3_into_hol().target;
  Subspace hol = Subspace::span(9, {rotation_generator().flatten()});
  Subspace n = normalizer_in(builtin("gl", 3).algebra, hol);
  std::vector<Vec> ops;
  for (const Vec& p : n.basis_vectors()) ops.push_back(normalizer_operator(base, Mat::reshape(p, 3, 3)).flatten());
  return build_rho_s(base, Subspace::span(16, ops));
}

}  // namespace

TEST_CASE("flat models have dim g automorphisms") {
  struct Case {
    KleinModel k;
    std::size_t dim;
  };
  std::vector<Case> cases{{examples::so3_klein(), 4}, {euclidean_klein(2), 3}, {euclidean_klein(3), 6}};
  for (const auto& c : cases) {
    auto id = identity_extension(c.k);
    auto ext = build_rho_s(id.target, no_s(id.target));
    AMap a = build_a_map(id, ext);
    CHECK(check_a_map(a).empty());
    for (const Mat& f : curvature_operators(a)) CHECK(f.is_zero());
    CHECK(holonomy_closure(a).is_zero());
    CHECK(infinitesimal_autos(a).dim() == c.dim);
    // A(Z)(s) = [Z, s] for the identity extension
    for (std::size_t z = 0; z < c.k.g.dim(); ++z) {
      for (std::size_t s = 0; s < c.k.g.dim(); ++s) {
        CHECK(a.operators[z].col(s) == c.k.g.bracket_basis(z, s));
      }
    }
  }
}

TEST_CASE("s = 0 leaves the skeleton unchanged") {
  Skeleton s = euclidean_skeleton(3);
  auto ext = build_rho_s(s, no_s(s));
  CHECK(same_skeleton(ext.result, s));
  CHECK(ext.s_dim() == 0);
}

TEST_CASE("homothety line gives the conformal skeleton") {
  Skeleton e = euclidean_skeleton(3);
  Mat h(6, 6);
  for (std::size_t i = 0; i < 3; ++i) h(i, i) = 1;
  auto ext = build_rho_s(e, line(h));
  CHECK(validate(ext.result).empty());
  CHECK(ext.result.l.dim() == 4);
  CHECK(ext.result.translation_dim == std::optional<std::size_t>(3));
  // l + s is co(3): the new generator is central and acts on R^3 as the identity
  for (std::size_t i = 0; i < 4; ++i) CHECK(is_zero(ext.result.l.bracket_basis(3, i)));
  CHECK(same_skeleton(ext.result, conformal_skeleton(3)));
  CHECK(kernel_ideal(ext.result).is_zero());
}

TEST_CASE("build_rho_s rejects operators outside iext and non-closed s") {
  Skeleton e = euclidean_skeleton(3);
  Mat shear(6, 6);
  shear(0, 1) = 1;
  CHECK_THROWS_AS(build_rho_s(e, line(shear)), InvariantError);
  auto iext = iext_basis(e);
  REQUIRE(iext.size() >= 2);
  // two iext elements whose commutator leaves their span
  bool found = false;
  for (std::size_t i = 0; i < iext.size() && !found; ++i) {
    for (std::size_t j = i + 1; j < iext.size() && !found; ++j) {
      Subspace s = Subspace::span(36, {iext[i].flatten(), iext[j].flatten()});
      if (!s.contains(commutator(iext[i], iext[j]).flatten())) {
        found = true;
        try {
          build_rho_s(e, s);
          FAIL("expected an error");
        } catch (const InvariantError& err) {
          CHECK(err.equation() == "closure");
        }
      }
    }
  }
  CHECK(found);
}

TEST_CASE("flat model filter agrees with the automorphism algebra") {
  KleinModel k = examples::so3_klein();
  Skeleton base = k.skeleton();
  struct Case {
    Mat w;
    std::size_t kept;
  };
  std::vector<Case> cases{{diag({0, 0, 0, 1}), 1}, {diag({1, 1, 0, 0}), 0}};
  for (const auto& c : cases) {
    auto ext = build_rho_s(base, line(c.w));
    CHECK(flat_model_auto_filter(ext, k).dim() == c.kept);
    AMap a = build_a_map(identity_extension(k), ext);
    CHECK(check_a_map(a).empty());
    Subspace autos = infinitesimal_autos(a);
    CHECK(autos.dim() == k.g.dim() + c.kept);
    Subspace s_part = Subspace::coordinate(5, {4});
    CHECK(intersect(autos, s_part).dim() == c.kept);
  }
  auto ext0 = build_rho_s(base, no_s(base));
  CHECK(flat_model_auto_filter(ext0, k).is_zero());
  CHECK_THROWS_AS(flat_model_auto_filter(build_rho_s(euclidean_skeleton(2), Subspace(9)), k), InvariantError);
}

TEST_CASE("closure matches bracket enumeration") {
  testing::Rng rng(11);
  // (untwisted extension, model) pairs; each draw twists alpha by a random
  // h-equivariant automorphism of g and adds a random subalgebra of iext
  std::vector<SkeletonMorphism> seeds{identity_extension(examples::so3_klein()), examples::so3_into_hol(),
                                      identity_extension(euclidean_klein(2)),
                                      identity_extension(euclidean_klein(3))};
  std::size_t checked = 0;
  std::size_t curved = 0;
  std::size_t with_s = 0;
  for (int round = 0; round < 60 && checked < 24; ++round) {
    const SkeletonMorphism& seed = seeds[static_cast<std::size_t>(round) % seeds.size()];
    auto twist = testing::random_klein_extension(seed.source, rng);
    if (!twist) continue;
    SkeletonMorphism m{seed.source, seed.target, seed.alpha * twist->alpha, seed.dj};
    if (!is_extension(m)) continue;
    const Skeleton& base = m.target;
    std::vector<Mat> picks;
    for (const Mat& w : iext_basis(base))
      if (rng.coin()) picks.push_back(w);
    Subspace s = testing::matrix_closure(picks, base.k_dim);
    if (base.k_dim + s.dim() > 8) s = no_s(base);
    ExtendedSkeleton ext;
    try {
      ext = build_rho_s(base, s);
    } catch (const InvariantError& e) {
      CHECK(e.equation() == "component");
      continue;
    }
    AMap a = build_a_map(m, ext);
    CHECK(check_a_map(a).empty());
    Subspace closure = holonomy_closure(a);
    CHECK(closure == testing::closure_by_enumeration(a.operators, curvature_operators(a)));
    for (const Vec& v : closure.basis_vectors()) {
      for (const Mat& op : a.operators) {
        CHECK(closure.contains(commutator(op, Mat::reshape(v, ext.total_dim(), ext.total_dim())).flatten()));
      }
    }
    Subspace autos = infinitesimal_autos(a, closure);
    CHECK(autos.dim() <= ext.total_dim());
    ++checked;
    curved += closure.is_zero() ? 0 : 1;
    with_s += ext.s_dim() > 0 ? 1 : 0;
  }
  CHECK(checked >= 20);
  CHECK(curved >= 5);
  CHECK(with_s >= 10);
}

TEST_CASE("A-map does not depend on the complement of h") {
  testing::Rng rng(5);
  auto check_both = [&](const SkeletonMorphism& m, const ExtendedSkeleton& ext) {
    AMap a = build_a_map(m, ext);
    CHECK(check_a_map(a).empty());
    const auto& h = m.source.h;
    std::vector<Vec> shifted;
    for (const Vec& c : h.canonical_complement().basis_vectors()) {
      Vec v = c;
      for (const Vec& hv : h.basis_vectors()) v = v + rng.rational() * hv;
      shifted.push_back(v);
    }
    AMap b = build_a_map(m, ext, Subspace::span(m.source.g.dim(), shifted));
    CHECK(a.operators == b.operators);
  };
  check_both(examples::so3_into_hol(), so2_extended());
  std::vector<KleinModel> models{examples::so3_klein(), euclidean_klein(2), euclidean_klein(3)};
  std::size_t done = 0;
  for (int round = 0; done < 10 && round < 30; ++round) {
    auto m = testing::random_klein_extension(models[static_cast<std::size_t>(round) % 3], rng);
    if (!m) continue;
    check_both(*m, build_rho_s(m->target, no_s(m->target)));
    ++done;
  }
  CHECK(done == 10);
}

TEST_CASE("A-map of the SO(2) example") {
  auto m = examples::so3_into_hol();
  auto ext = so2_extended();
  CHECK(ext.s_dim() == 3);
  AMap a = build_a_map(m, ext);
  CHECK(check_a_map(a).empty());
  // one curvature direction: only [X1, X2] is non-flat
  auto fs = curvature_operators(a);
  std::vector<Vec> flat;
  for (const Mat& f : fs) flat.push_back(f.flatten());
  CHECK(Subspace::span(49, flat).dim() == 1);
  CHECK(infinitesimal_autos(a).dim() == 6);
  CHECK(kernel_ideal(ext.result).dim() == 1);
}

TEST_CASE("kernel of extended skeletons is the antidiagonal") {
  testing::Rng rng(17);
  std::vector<Skeleton> bases{euclidean_skeleton(2), euclidean_skeleton(3), examples::so3_klein().skeleton(),
                              examples::so3_into_hol().target};
  std::size_t count = 0;
  auto check = [&](const ExtendedSkeleton& ext) {
    CHECK(kernel_ideal(ext.result) == antidiagonal_kernel(ext));
    ++count;
  };
  check(so2_extended());
  for (int round = 0; round < 24; ++round) {
    const Skeleton& base = bases[static_cast<std::size_t>(round) % bases.size()];
    auto iext = iext_basis(base);
    std::vector<Mat> picks;
    for (const Mat& w : iext)
      if (rng.coin()) picks.push_back(w);
    Subspace s = testing::matrix_closure(picks, base.k_dim);
    try {
      check(build_rho_s(base, s));
    } catch (const InvariantError& e) {
      // the reflection of O(n) need not preserve a random s
      CHECK(e.equation() == "component");
    }
  }
  CHECK(count >= 10);
}

TEST_CASE("autcor") {
  auto m = examples::so3_into_hol();
  Mat id = Mat::identity(4);
  CHECK(autcor_check(m, id, id).ok());

  auto group_op = [](const Mat& p) {
    Mat op = Mat::identity(4);
    op.set_block(0, 0, p);
    return op;
  };
  Mat rot = Mat::identity(3);
  rot(0, 0) = Rational(3, 5);
  rot(0, 1) = Rational(-4, 5);
  rot(1, 0) = Rational(4, 5);
  rot(1, 1) = Rational(3, 5);
  CHECK(autcor_check(m, id, group_op(rot)).ok());
  CHECK(autcor_check(m, id, group_op(diag({1, 1, 2}))).ok());
  // scaling the plane rescales [X1, X2] but not X3
  AutcorResult r = autcor_check(m, id, group_op(diag({2, 2, 1})));
  CHECK(r.preserves_image);
  CHECK_FALSE(r.bracket_preserving);

  auto ma = examples::so3_into_affine();
  Mat p = diag({1, 2, 1});
  auto aff = builtin("affine", 3).realization;
  Mat big = Mat::identity(4);
  big.set_block(1, 1, p);
  Mat beta = conjugation_operator(aff, big);
  CHECK_FALSE(autcor_check(ma, Mat::identity(12), beta).preserves_image);
  CHECK_THROWS_AS(autcor_check(ma, id, id), DimensionError);
}

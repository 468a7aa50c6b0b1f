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

#include "cartan/errors.hpp"
#include "cartan/skeleton.hpp"
#include "doctest.h"

using namespace cartan;

namespace {

Mat rot_j() { return elementary(3, 1, 0) - elementary(3, 0, 1); }

Skeleton hol_skeleton() { return affine_skeleton(3, {rot_j()}, {"E21-E12"}); }

Skeleton so3_source() {
  auto g = builtin("so3_plus_R", 3).algebra;
  return klein_skeleton(g, Subspace::coordinate(4, {2}));
}

bool has_equation(const std::vector<Violation>& v, const std::string& eq) {
  for (const auto& x : v) {
    if (x.equation == eq) return true;
  }
  return false;
}

Mat diag3(int a, int b, int c) {
  Mat m(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

ExtGroupElement ad_conj(const Mat& p) {
  auto k = affine_subalgebra(3, {rot_j()}, {"E21-E12"});
  Mat op = conjugation_operator(k.realization, Mat::block_diag(Mat::identity(1), p));
  return {op, op.block(3, 3, 1, 1)};
}

}  // namespace

TEST_CASE("validate") {
  for (std::size_t n = 1; n <= 3; ++n) {
    Skeleton e = euclidean_skeleton(n);
    CHECK(validate(e).empty());
    CHECK(kernel_ideal(e).is_zero());
    CHECK(validate(conformal_skeleton(n)).empty());
  }
  CHECK(validate(so3_source()).empty());
  CHECK(validate(hol_skeleton()).empty());

  Skeleton bad = euclidean_skeleton(3);
  for (auto& d : bad.drho) d = Mat(6, 6);
  auto v = validate(bad);
  CHECK(has_equation(v, "drho restricts to ad on l"));
  CHECK(has_equation(v, "drho = ad_k on l"));
  CHECK_THROWS_AS(require_valid(bad), InvariantError);

  Skeleton wrong_rep = euclidean_skeleton(2);
  wrong_rep.component_reps[0].l_auto = Mat::identity(1);
  CHECK_FALSE(validate(wrong_rep).empty());
}

TEST_CASE("kernel ideal") {
  // l = span(e1) in k = R^2, drho(e) e2 = e1: acts only into l.
  Skeleton s;
  s.k_dim = 2;
  s.l = LieAlgebra::abelian(1);
  s.l_embed = Mat(2, 1);
  s.l_embed(0, 0) = 1;
  Mat d(2, 2);
  d(0, 1) = 1;
  s.drho = {d};
  REQUIRE(validate(s).empty());
  CHECK(kernel_ideal(s) == Subspace::full(1));
  auto q = effective_quotient(s);
  CHECK(q.skeleton.k_dim == 1);
  CHECK(q.skeleton.l.dim() == 0);
  CHECK(validate(q.skeleton).empty());
  CHECK_THROWS_AS(iext_algebra(s), InvariantError);
}

TEST_CASE("effective quotient of an effective skeleton") {
  Skeleton e = euclidean_skeleton(3);
  auto q = effective_quotient(e);
  CHECK(q.kernel.is_zero());
  CHECK(q.skeleton.k_dim == e.k_dim);
  CHECK(q.skeleton.drho == e.drho);
  CHECK(q.skeleton.l_embed == e.l_embed);
  CHECK(q.skeleton.k_bracket.has_value());
  CHECK(q.skeleton.translation_dim == e.translation_dim);
  auto qq = effective_quotient(q.skeleton);
  CHECK(qq.skeleton.drho == q.skeleton.drho);
}

TEST_CASE("iext") {
  Skeleton trivial;
  trivial.k_dim = 3;
  trivial.l = LieAlgebra::abelian(0);
  trivial.l_embed = Mat(3, 0);
  CHECK(iext_algebra(trivial) == Subspace::full(9));

  Skeleton e = euclidean_skeleton(3);
  Subspace ie = iext_algebra(e);
  Mat grading(6, 6);
  for (std::size_t i = 0; i < 3; ++i) grading(i, i) = 1;
  CHECK(ie.contains(grading.flatten()));
  for (const Mat& d : e.drho) CHECK(ie.contains(d.flatten()));

  auto basis = iext_basis(e);
  for (const Mat& a : basis) {
    // both defining conditions, checked directly
    CHECK(e.l_image().contains(a.apply(e.l_embed.col(0))));
    for (std::size_t i = 0; i < e.l.dim(); ++i) {
      Vec ax = Subspace::image(e.l_embed).coordinates(a.apply(e.l_embed.col(i)));
      CHECK(e.drho_of(ax) == commutator(a, e.drho[i]));
    }
    for (const Mat& b : basis) CHECK(ie.contains(commutator(a, b).flatten()));
  }
  // drho(so(3)), plus maps vanishing on l that commute with so(3): the scalar
  // on R^3 and the equivariant isomorphism R^3 -> so(3). 3 + 1 + 1.
  CHECK(ie.dim() == 5);
}

TEST_CASE("ext candidates") {
  Skeleton s = hol_skeleton();
  auto id = verify_ext_candidate(s, {Mat::identity(4), Mat::identity(1)});
  CHECK(id.ok());
  CHECK_FALSE(id.heuristic);

  for (const Mat& p : {diag3(2, 2, 1), diag3(1, 1, 3), diag3(-1, -1, 1)}) {
    CHECK(verify_ext_candidate(s, ad_conj(p)).ok());
  }
  Mat rot = Mat::identity(3);
  rot(0, 0) = Rational(3, 5);
  rot(0, 1) = Rational(-4, 5);
  rot(1, 0) = Rational(4, 5);
  rot(1, 1) = Rational(3, 5);
  CHECK(verify_ext_candidate(s, ad_conj(rot)).ok());

  // shear E13 does not normalize so(2)
  ExtGroupElement shear{Mat::identity(4), Mat::identity(1)};
  shear.alpha(0, 2) = 1;
  shear.alpha(0, 3) = 1;
  auto r = verify_ext_candidate(s, shear);
  CHECK_FALSE(r.ok());

  Skeleton e = euclidean_skeleton(3);
  Mat homothety = Mat::identity(6);
  for (std::size_t i = 0; i < 3; ++i) homothety(i, i) = 2;
  auto h = verify_ext_candidate(e, {homothety, Mat::identity(3)});
  CHECK(h.ok());
  CHECK(h.heuristic);
}

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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "cartan/autos.hpp"
#include "cartan/errors.hpp"
#include "cartan/examples.hpp"
#include "cartan/riemann.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace cartan;
using cartan::examples::rotation_generator;

namespace {

struct Criterion {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

// Every A-map built by the suite passes through here.
std::size_t bound_checks = 0;
bool bounds_ok = true;

Subspace autos_checked(const AMap& a) {
  Subspace s = infinitesimal_autos(a);
  ++bound_checks;
  bounds_ok = bounds_ok && s.dim() <= a.extended.base.k_dim + a.extended.s_dim();
  return s;
}

Classification classify_checked(const SkeletonMorphism& m) {
  Classification c = classify_metrics(m);
  ++bound_checks;
  bounds_ok = bounds_ok && c.autos.dim() <= c.n + c.extended.s_dim() &&
              c.autos.dim() <= c.quotient.skeleton.k_dim;
  return c;
}

KleinModel euclidean_klein(std::size_t n) {
  auto e = builtin("euclidean", n).algebra;
  std::vector<std::size_t> lin;
  for (std::size_t i = n; i < e.dim(); ++i) lin.push_back(i);
  return KleinModel::make(e, Subspace::coordinate(e.dim(), lin));
}

Mat diag(const Vec& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Subspace zero_s(const Skeleton& s) { return Subspace(s.k_dim * s.k_dim); }

ExtendedSkeleton so2_extended() {
  Skeleton base = examples::so3_into_hol().target;
  Subspace hol = Subspace::span(9, {rotation_generator().flatten()});
  std::vector<Vec> ops;
  for (const Vec& p : normalizer_in(builtin("gl", 3).algebra, hol).basis_vectors()) {
    ops.push_back(normalizer_operator(base, Mat::reshape(p, 3, 3)).flatten());
  }
  return build_rho_s(base, Subspace::span(16, ops));
}

// A twisted extension of one of the seeds plus a random subalgebra of iext.
struct Instance {
  SkeletonMorphism m;
  ExtendedSkeleton ext;
};

std::optional<Instance> random_instance(testing::Rng& rng, std::size_t round, std::size_t max_dim) {
  static const std::vector<SkeletonMorphism> seeds{
      identity_extension(examples::so3_klein()), examples::so3_into_hol(), identity_extension(euclidean_klein(2)),
      identity_extension(euclidean_klein(3))};
  const SkeletonMorphism& seed = seeds[round % seeds.size()];
  auto twist = testing::random_klein_extension(seed.source, rng);
  if (!twist) return std::nullopt;
  SkeletonMorphism m{seed.source, seed.target, seed.alpha * twist->alpha, seed.dj};
  if (!is_extension(m)) return std::nullopt;
  std::vector<Mat> picks;
  for (const Mat& w : iext_basis(m.target))
    if (rng.coin()) picks.push_back(w);
  Subspace s = testing::matrix_closure(picks, m.target.k_dim);
  if (m.target.k_dim + s.dim() > max_dim) s = zero_s(m.target);
  try {
    return Instance{m, build_rho_s(m.target, s)};
  } catch (const InvariantError&) {
    return std::nullopt;  // s not stable under the O(n) reflection
  }
}

bool split_independent(const AMap& a, testing::Rng& rng) {
  const auto& h = a.morphism.source.h;
  std::vector<Vec> shifted;
  for (const Vec& c : h.canonical_complement().basis_vectors()) {
    Vec v = c;
    for (const Vec& hv : h.basis_vectors()) v = v + Rational(rng.integer(-3, 3)) * hv;
    shifted.push_back(v);
  }
  AMap b = build_a_map(a.morphism, a.extended, Subspace::span(a.morphism.source.g.dim(), shifted));
  return b.operators == a.operators;
}

Criterion ac1() {
  Criterion c;
  auto start = std::chrono::steady_clock::now();
  Classification r = classify_checked(examples::so3_into_affine());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(r.hol == Subspace::span(9, {rotation_generator().flatten()}), "hol != span{E21-E12}");
  c.expect(r.normalizer.dim() == 3, "normalizer dim != 3");
  c.expect(r.family.z_exact == std::vector<Mat>{diag({1, 1, 0}), diag({0, 0, 1})}, "Z basis");
  c.expect(r.autos.dim() == 5, "autos dim != 5");
  // the displayed solution set: translations, the rotation and the E33 scaling
  std::vector<Vec> real;
  for (const Vec& v : r.autos.basis_vectors()) real.push_back(r.realization.alpha.apply(v));
  Subspace displayed = Subspace::span(12, {unit_vec(12, 0), unit_vec(12, 1), unit_vec(12, 2),
                                           concat(zero_vec(3), rotation_generator().flatten()),
                                           concat(zero_vec(3), elementary(3, 2, 2).flatten())});
  c.expect(Subspace::span(12, real) == displayed, "autos differ from the displayed set");
  for (std::size_t z = 0; z < 4; ++z) {
    for (std::size_t j = 0; j < r.quotient.skeleton.k_dim; ++j) {
      auto expected = testing::so2_displayed_a(unit_vec(4, z), r.realization.alpha.col(j));
      c.expect(expected && r.realization.alpha.apply(r.a_map.operators[z].col(j)) == *expected,
               "A operators differ from the displayed map");
    }
  }
  c.expect(r.orbits.orbit_dim == 1 && r.orbits.uniform, "orbit dim != 1");
  c.expect(r.orbits.representatives == std::vector<std::string>{"diag(e^{m1}, e^{m1}, 1)"}, "representatives");
  c.expect(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  if (c.ok) c.detail = "hol 1, n 3, Z 2, autos 5, orbit 1, " + std::to_string(secs).substr(0, 5) + " s";
  return c;
}

Criterion ac2() {
  Criterion c;
  struct Case {
    KleinModel k;
    std::size_t dim;
  };
  std::vector<Case> cases{{examples::so3_klein(), 4}, {euclidean_klein(2), 3}, {euclidean_klein(3), 6}};
  std::string dims;
  for (const auto& cs : cases) {
    auto id = identity_extension(cs.k);
    Subspace a = autos_checked(build_a_map(id, build_rho_s(id.target, zero_s(id.target))));
    c.expect(a.dim() == cs.dim, "flat autos dim " + std::to_string(a.dim()) + " != " + std::to_string(cs.dim));
    dims += (dims.empty() ? "" : "/") + std::to_string(a.dim());
  }
  if (c.ok) c.detail = "dims " + dims;
  return c;
}

Criterion ac3() {
  Criterion c;
  KleinModel k = examples::so3_klein();
  Skeleton base = k.skeleton();
  struct Case {
    Mat w;
    std::size_t kept;
  };
  for (const auto& cs : std::vector<Case>{{diag({0, 0, 0, 1}), 1}, {diag({1, 1, 0, 0}), 0}}) {
    auto ext = build_rho_s(base, Subspace::span(16, {cs.w.flatten()}));
    Subspace kept = flat_model_auto_filter(ext, k);
    Subspace autos = autos_checked(build_a_map(identity_extension(k), ext));
    Subspace in_s = intersect(autos, Subspace::coordinate(5, {4}));
    c.expect(kept.dim() == cs.kept, "filter dim");
    c.expect(in_s.dim() == kept.dim() && autos.dim() == k.g.dim() + kept.dim(), "filter disagrees with autos");
  }
  if (c.ok) c.detail = "derivation kept (1), non-derivation dropped (0)";
  return c;
}

Criterion ac4() {
  Criterion c;
  testing::Rng rng(101);
  std::size_t n = 0, curved = 0;
  for (std::size_t round = 0; round < 200 && n < 24; ++round) {
    auto inst = random_instance(rng, round, 8);
    if (!inst) continue;
    AMap a = build_a_map(inst->m, inst->ext);
    Subspace closure = holonomy_closure(a);
    c.expect(closure == testing::closure_by_enumeration(a.operators, curvature_operators(a)),
             "closure differs from enumeration on instance " + std::to_string(n));
    autos_checked(a);
    curved += closure.is_zero() ? 0 : 1;
    ++n;
  }
  c.expect(n >= 20, "only " + std::to_string(n) + " instances");
  if (c.ok) c.detail = std::to_string(n) + " instances, " + std::to_string(curved) + " with nonzero closure";
  return c;
}

Criterion ac5() {
  Criterion c;
  testing::Rng rng(202);
  AMap so2 = build_a_map(examples::so3_into_hol(), so2_extended());
  c.expect(check_a_map(so2).empty(), "SO(2) example violates an A-map identity");
  c.expect(split_independent(so2, rng), "SO(2) example depends on the complement");
  autos_checked(so2);
  std::size_t n = 0;
  for (std::size_t round = 0; round < 200 && n < 10; ++round) {
    auto inst = random_instance(rng, round, 12);
    if (!inst) continue;
    AMap a = build_a_map(inst->m, inst->ext);
    c.expect(check_a_map(a).empty(), "random extension violates an A-map identity");
    c.expect(split_independent(a, rng), "random extension depends on the complement");
    autos_checked(a);
    ++n;
  }
  c.expect(n == 10, "only " + std::to_string(n) + " random extensions");
  if (c.ok) c.detail = "SO(2) example + " + std::to_string(n) + " random extensions";
  return c;
}

Criterion ac6() {
  Criterion c;
  testing::Rng rng(303);
  std::vector<Skeleton> bases{euclidean_skeleton(2), euclidean_skeleton(3), examples::so3_klein().skeleton(),
                              examples::so3_into_hol().target, conformal_skeleton(2)};
  std::size_t n = 0, nonzero = 0;
  auto check = [&](const ExtendedSkeleton& ext) {
    Subspace k = kernel_ideal(ext.result);
    c.expect(k == antidiagonal_kernel(ext), "kernel differs from the antidiagonal");
    nonzero += k.is_zero() ? 0 : 1;
    ++n;
  };
  check(so2_extended());
  for (std::size_t round = 0; round < 40 && n < 15; ++round) {
    const Skeleton& base = bases[round % bases.size()];
    std::vector<Mat> picks;
    for (const Mat& w : iext_basis(base))
      if (rng.coin()) picks.push_back(w);
    try {
      check(build_rho_s(base, testing::matrix_closure(picks, base.k_dim)));
    } catch (const InvariantError&) {
    }
  }
  c.expect(n >= 10, "only " + std::to_string(n) + " instances");
  if (c.ok) c.detail = std::to_string(n) + " instances, " + std::to_string(nonzero) + " with nonzero kernel";
  return c;
}

Criterion ac7() {
  Criterion c;
  testing::Rng rng(404);
  double polar = 0, tau = 0, spd = 0;
  for (int i = 0; i < 100; ++i) {
    MatF m(5, 5);
    do {
      for (Eigen::Index r = 0; r < 5; ++r)
        for (Eigen::Index s = 0; s < 5; ++s) m(r, s) = rng.real(-1, 1);
    } while (std::abs(m.determinant()) < 1e-3);
    Polar p = polar_decompose(m);
    polar = std::max(polar, (p.p.matrix() * p.q - m).norm());
  }
  for (int i = 0; i < 100; ++i) {
    MatF b(5, 5);
    for (Eigen::Index r = 0; r < 5; ++r)
      for (Eigen::Index s = 0; s < 5; ++s) b(r, s) = rng.real(-1, 1);
    SymMatF a(b * b.transpose() + 0.1 * MatF::Identity(5, 5));
    spd = std::max(spd, (spd_exp(spd_log(a)).matrix() - a.matrix()).norm());
  }
  Subspace hol = Subspace::span(9, {rotation_generator().flatten()});
  Subspace nrm = normalizer_in(builtin("gl", 3).algebra, hol);
  MetricFamily fam = metric_space_z(hol, 3);
  for (int i = 0; i < 20; ++i) {
    auto element = [&] {
      MatF x = MatF::Zero(3, 3);
      for (const Vec& v : nrm.basis_vectors()) x += rng.real(-1, 1) * to_float(Mat::reshape(v, 3, 3));
      return expm(x);
    };
    VecF z(2);
    z << rng.real(-1, 1), rng.real(-1, 1);
    SymMatF y = fam.point(z);
    MatF p1 = element(), p2 = element();
    tau = std::max(tau, (tau_apply(p2, tau_apply(p1, y).y_p).y_p.matrix() - tau_apply(p1 * p2, y).y_p.matrix()).norm());
  }
  c.expect(polar < 1e-10, "polar residual");
  c.expect(tau < 1e-8, "tau law residual");
  c.expect(spd < 1e-10, "spd roundtrip residual");
  char buf[160];
  std::snprintf(buf, sizeof buf, "polar %.1e, tau law %.1e, spd roundtrip %.1e", polar, tau, spd);
  c.detail = c.ok ? buf : c.detail + " (" + buf + ")";
  return c;
}

Criterion ac8() {
  Criterion c;
  classify_checked(examples::so3_into_hol());
  for (std::size_t n = 1; n <= 3; ++n) {
    KleinModel k = KleinModel::make(LieAlgebra::abelian(n), Subspace(n));
    Skeleton aff = affine_skeleton(n, gl_basis(n), gl_labels(n));
    Mat alpha(aff.k_dim, n);
    for (std::size_t i = 0; i < n; ++i) alpha(i, i) = 1;
    classify_checked({k, aff, alpha, Mat(n * n, 0)});
  }
  c.expect(bounds_ok, "a dimension bound was violated");
  c.detail = std::to_string(bound_checks) + " runs checked";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Criterion()>>> criteria{
      {"AC1 SO(2) example end to end", ac1},
      {"AC2 flat model automorphisms", ac2},
      {"AC3 derivation filter vs automorphisms", ac3},
      {"AC4 holonomy closure vs enumeration", ac4},
      {"AC5 A-map identities and complement independence", ac5},
      {"AC6 kernel of extended skeletons", ac6},
      {"AC7 numeric kernels", ac7},
      {"AC8 dimension bounds", ac8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Criterion c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s: %s\n", c.ok ? "PASS" : "FAIL", name, c.detail.c_str());
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}

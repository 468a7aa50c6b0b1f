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

#include "cartan/riemann.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "cartan/errors.hpp"

namespace cartan {

std::vector<Mat> sym_basis(std::size_t n) {
  std::vector<Mat> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Mat m = elementary(n, i, j);
      if (i != j) m = m + elementary(n, j, i);
      out.push_back(m);
    }
  }
  return out;
}

std::vector<std::string> sym_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::string a = std::to_string(i + 1);
      std::string b = std::to_string(j + 1);
      out.push_back(i == j ? "E" + a + a : "E" + a + b + "+E" + b + a);
    }
  }
  return out;
}

namespace {

void require_affine(const Skeleton& s) {
  if (!s.translation_dim || s.linear_basis.size() != s.l.dim()) {
    throw InvariantError("affine target", "target is not an affine-type skeleton with a linear realization");
  }
}

Mat combine(const std::vector<Mat>& ms, const Vec& x, std::size_t n) {
  Mat out(n, n);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (sgn(x[i]) != 0) out = out + x[i] * ms[i];
  }
  return out;
}

// Smallest subspace of gl(n) containing gens and stable under [a, .].
Subspace bracket_saturation(std::size_t n, const std::vector<Mat>& gens, const std::vector<Mat>& ops) {
  Subspace cur(n * n);
  std::deque<Mat> work;
  auto add = [&](const Mat& m) {
    Vec f = m.flatten();
    if (cur.contains(f)) return;
    cur = Subspace::row_space(vstack({cur.basis(), Mat::from_rows({f}, f.size())}, f.size()));
    work.push_back(m);
  };
  for (const Mat& g : gens) add(g);
  while (!work.empty()) {
    Mat m = work.front();
    work.pop_front();
    for (const Mat& a : ops) add(commutator(a, m));
  }
  return cur;
}

std::vector<Mat> matrices(const Subspace& s, std::size_t n) {
  std::vector<Mat> out;
  for (std::size_t i = 0; i < s.dim(); ++i) out.push_back(Mat::reshape(s.basis_vector(i), n, n));
  return out;
}

// Term list "m1", "-2 m1 + 1/2 m2"; empty string for the zero form.
std::string linear_form(const std::vector<std::pair<Rational, std::string>>& terms) {
  std::string out;
  for (const auto& [c, name] : terms) {
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    std::string coef = a == 1 ? "" : to_string(a) + " ";
    if (out.empty()) {
      out = (sgn(c) < 0 ? "-" : "") + coef + name;
    } else {
      out += (sgn(c) < 0 ? " - " : " + ") + coef + name;
    }
  }
  return out;
}

}  // namespace

Mat linear_part(const Skeleton& s, const Vec& v) {
  require_affine(s);
  const std::size_t n = *s.translation_dim;
  Mat b(s.k_dim, s.k_dim);
  for (std::size_t i = 0; i < n; ++i) b(i, i) = 1;
  b.set_block(0, n, s.l_embed);
  auto inv = inverse(b);
  if (!inv) throw InvariantError("invariant complement", "R^n and l do not span k");
  Vec coords = inv->apply(v);
  return combine(s.linear_basis, slice(coords, n, s.l.dim()), n);
}

Subspace holonomy_of_extension(const SkeletonMorphism& m) {
  require_affine(m.target);
  const std::size_t n = *m.target.translation_dim;
  CurvatureTable t = curvature_homogeneous(m);
  std::vector<Mat> gens;
  for (const auto& row : t.values)
    for (const auto& v : row) gens.push_back(linear_part(m.target, v));
  std::vector<Mat> lambda;
  for (std::size_t j = 0; j < m.source.g.dim(); ++j) lambda.push_back(linear_part(m.target, m.alpha.col(j)));
  Subspace hol = bracket_saturation(n, gens, lambda);
  auto basis = matrices(hol, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!hol.contains(commutator(basis[i], basis[j]).flatten())) {
        throw InvariantError("holonomy closure", "holonomy span is not bracket-closed");
      }
    }
  }
  return hol;
}

bool metrizability_check(const Subspace& hol, std::size_t n) {
  for (const Mat& h : matrices(hol, n)) {
    if (!(h + h.transpose()).is_zero()) return false;
  }
  return true;
}

SymMatF MetricFamily::point(const VecF& z) const {
  MatF y = MatF::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < z_basis.size(); ++a) y += z(static_cast<Eigen::Index>(a)) * z_basis[a].matrix();
  return SymMatF(y);
}

VecF MetricFamily::coordinates(const SymMatF& y) const {
  const auto d = static_cast<Eigen::Index>(z_basis.size());
  MatF gram(d, d);
  VecF rhs(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    rhs(a) = z_basis[static_cast<std::size_t>(a)].matrix().cwiseProduct(y.matrix()).sum();
    for (Eigen::Index b = 0; b < d; ++b) {
      gram(a, b) = z_basis[static_cast<std::size_t>(a)]
                       .matrix()
                       .cwiseProduct(z_basis[static_cast<std::size_t>(b)].matrix())
                       .sum();
    }
  }
  return gram.ldlt().solve(rhs);
}

MetricFamily metric_space_z(const Subspace& hol, std::size_t n, const std::vector<Mat>& component_reps) {
  if (hol.ambient_dim() != n * n) throw DimensionError("metric_space_z: hol must live in gl(n)");
  MetricFamily fam;
  fam.n = n;
  fam.hol = hol;
  fam.component_constraints = !component_reps.empty();
  const auto sym = sym_basis(n);
  std::vector<Mat> constraints = matrices(hol, n);
  constraints.insert(constraints.end(), component_reps.begin(), component_reps.end());
  std::vector<Mat> blocks;
  for (const Mat& h : constraints) {
    std::vector<Vec> cols;
    for (const Mat& y : sym) cols.push_back(commutator(y, h).flatten());
    blocks.push_back(Mat::from_cols(cols, n * n));
  }
  Subspace sol = blocks.empty() ? Subspace::full(sym.size()) : kernel(vstack(blocks, sym.size()));
  for (std::size_t i = 0; i < sol.dim(); ++i) {
    Mat y = combine(sym, sol.basis_vector(i), n);
    fam.z_exact.push_back(y);
    fam.z_basis.push_back(SymMatF::from_exact(y));
  }
  return fam;
}

TauResult tau_apply(const MatF& p, const SymMatF& y) {
  if (p.rows() != p.cols() || static_cast<std::size_t>(p.rows()) != y.n()) {
    throw DimensionError("tau_apply: shape mismatch");
  }
  if (std::abs(p.determinant()) <= 1e-12) throw NumericError("tau_apply: p is singular");
  MatF m = p.inverse() * spd_exp(y).matrix();
  Polar pd = polar_decompose(m);
  return {spd_log(pd.p), pd.q.transpose()};
}

std::string render_representative(const MetricFamily& fam, const Subspace& directions) {
  const std::size_t n = fam.n;
  std::vector<Mat> ys;
  std::vector<std::string> names;
  bool diagonal = true;
  for (std::size_t b = 0; b < directions.dim(); ++b) {
    Mat y = combine(fam.z_exact, directions.basis_vector(b), n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && sgn(y(i, j)) != 0) diagonal = false;
    ys.push_back(y);
    names.push_back("m" + std::to_string(directions.pivots()[b] + 1));
  }
  std::ostringstream os;
  if (diagonal) {
    os << "diag(";
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<Rational, std::string>> terms;
      for (std::size_t b = 0; b < ys.size(); ++b) terms.emplace_back(ys[b](i, i), names[b]);
      std::string f = linear_form(terms);
      os << (i ? ", " : "") << (f.empty() ? "1" : "e^{" + f + "}");
    }
    os << ")";
    return os.str();
  }
  os << "exp(";
  for (std::size_t b = 0; b < ys.size(); ++b) os << (b ? " + " : "") << names[b] << " " << ys[b];
  os << ")";
  return os.str();
}

OrbitSpace orbit_space(const MetricFamily& fam, const std::vector<Mat>& generators, double step) {
  OrbitSpace out;
  const auto dz = static_cast<Eigen::Index>(fam.dim());
  if (dz == 0) {
    out.complement = Subspace(0);
    out.complement_numeric = MatF(0, 0);
    return out;
  }
  std::vector<VecF> bases{VecF::Zero(dz)};
  for (Eigen::Index a = 0; a < dz; ++a) bases.push_back(0.5 * VecF::Unit(dz, a));

  std::vector<MatF> gens;
  for (const Mat& g : generators) gens.push_back(to_float(g));
  MatF null_vectors;
  for (std::size_t bi = 0; bi < bases.size(); ++bi) {
    SymMatF y0 = fam.point(bases[bi]);
    MatF m = MatF::Zero(dz, static_cast<Eigen::Index>(gens.size()));
    for (std::size_t c = 0; c < gens.size(); ++c) {
      VecF plus = fam.coordinates(tau_apply(expm(step * gens[c]), y0).y_p);
      VecF minus = fam.coordinates(tau_apply(expm(-step * gens[c]), y0).y_p);
      m.col(static_cast<Eigen::Index>(c)) = (plus - minus) / (2 * step);
    }
    EigenDecomposition e = jacobi_eigen(SymMatF(m * m.transpose()));
    VecF sv = e.values.cwiseMax(0.0).cwiseSqrt();
    const double top = sv.size() ? sv.maxCoeff() : 0.0;
    std::size_t r = 0;
    std::vector<Eigen::Index> null_idx;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (top > 0 && sv(i) > 1e-6 * top) {
        ++r;
      } else {
        null_idx.push_back(i);
      }
    }
    out.ranks.push_back(r);
    if (bi == 0) {
      out.singular_values.assign(sv.data(), sv.data() + sv.size());
      null_vectors = MatF(dz, static_cast<Eigen::Index>(null_idx.size()));
      for (std::size_t i = 0; i < null_idx.size(); ++i) {
        null_vectors.col(static_cast<Eigen::Index>(i)) = e.vectors.col(null_idx[i]);
      }
    }
  }
  out.orbit_dim = out.ranks.front();
  for (std::size_t r : out.ranks) out.uniform = out.uniform && r == out.orbit_dim;
  out.complement_numeric = null_vectors;

  // numeric RREF of the null directions, then snap to small rationals
  MatF rows = null_vectors.transpose();
  Eigen::Index lead = 0;
  for (Eigen::Index r = 0; r < rows.rows() && lead < rows.cols(); ++lead) {
    Eigen::Index piv;
    double best = rows.col(lead).segment(r, rows.rows() - r).cwiseAbs().maxCoeff(&piv);
    if (best < 1e-8) continue;
    rows.row(r).swap(rows.row(r + piv));
    rows.row(r) /= rows(r, lead);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      if (i != r) rows.row(i) -= rows(i, lead) * rows.row(r);
    }
    ++r;
  }
  std::vector<Vec> snapped;
  bool ok = true;
  for (Eigen::Index i = 0; i < rows.rows() && ok; ++i) {
    Vec v;
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      auto q = rationalize(rows(i, j), 1000, 1e-6);
      if (!q) {
        ok = false;
        break;
      }
      v.push_back(*q);
    }
    snapped.push_back(v);
  }
  if (ok) {
    out.complement = Subspace::span(fam.dim(), snapped);
    if (out.complement->dim() != static_cast<std::size_t>(null_vectors.cols())) out.complement.reset();
  }
  if (out.complement) out.representatives.push_back(render_representative(fam, *out.complement));
  return out;
}

// ---------------------------------------------------------------------------

Mat normalizer_operator(const Skeleton& base, const Mat& p) {
  require_affine(base);
  const std::size_t n = *base.translation_dim;
  const std::size_t l = base.l.dim();
  Subspace hol = Subspace::span(n * n, [&] {
    std::vector<Vec> v;
    for (const Mat& m : base.linear_basis) v.push_back(m.flatten());
    return v;
  }());
  Mat hol_cols = Mat::from_cols([&] {
    std::vector<Vec> v;
    for (const Mat& m : base.linear_basis) v.push_back(m.flatten());
    return v;
  }(), n * n);
  Mat op(n + l, n + l);
  op.set_block(0, 0, p);
  for (std::size_t i = 0; i < l; ++i) {
    auto s = solve(hol_cols, commutator(p, base.linear_basis[i]).flatten());
    if (!s.consistent()) throw InvariantError("normalizer", "p does not normalize hol");
    for (std::size_t j = 0; j < l; ++j) op(n + j, n + i) = (*s.particular)[j];
  }
  (void)hol;
  return op;
}

Classification classify_metrics(const SkeletonMorphism& m, double step) {
  require_extension(m);
  require_affine(m.target);
  Classification c;
  const std::size_t n = *m.target.translation_dim;
  c.n = n;
  c.hol = holonomy_of_extension(m);
  if (!metrizability_check(c.hol, n)) {
    throw InvariantError("metrizability", "holonomy algebra is not contained in so(n)");
  }
  const auto hol_mats = matrices(c.hol, n);
  const std::size_t hd = hol_mats.size();

  // alpha in R^n + hol coordinates
  const auto& g = m.source.g;
  Mat alpha(n + hd, g.dim());
  Mat hol_cols = c.hol.basis().transpose();
  for (std::size_t j = 0; j < g.dim(); ++j) {
    Vec v = m.alpha.col(j);
    Mat lin = linear_part(m.target, v);
    if (!c.hol.contains(lin.flatten())) {
      throw InvariantError("holonomy reduction", "alpha(g) is not contained in R^n + hol");
    }
    Vec t = translation_projection(m.target).apply(v);
    Vec h = c.hol.coordinates(lin.flatten());
    for (std::size_t i = 0; i < n; ++i) alpha(i, j) = t[i];
    for (std::size_t i = 0; i < hd; ++i) alpha(n + i, j) = h[i];
  }
  std::vector<std::string> hol_labels;
  for (std::size_t i = 0; i < hd; ++i) hol_labels.push_back("hol" + std::to_string(i + 1));
  c.base = affine_skeleton(n, hol_mats, hol_labels);
  Mat dj(hd, m.source.h.dim());
  for (std::size_t i = 0; i < m.source.h.dim(); ++i) {
    Vec col = alpha.apply(m.source.h.basis_vector(i));
    for (std::size_t r = 0; r < hd; ++r) dj(r, i) = col[n + r];
  }
  c.reduced = {m.source, c.base, alpha, dj};
  require_extension(c.reduced);

  auto gl = builtin("gl", n).algebra;
  c.normalizer = normalizer_in(gl, c.hol);
  const auto n_mats = matrices(c.normalizer, n);
  std::vector<Vec> s_gens;
  for (const Mat& p : n_mats) s_gens.push_back(normalizer_operator(c.base, p).flatten());
  Subspace s = Subspace::span(c.base.k_dim * c.base.k_dim, s_gens);
  c.extended = build_rho_s(c.base, s);

  // the s basis is the RREF of the operators; carry the matching gl(n) matrices
  std::vector<Mat> s_mats;
  {
    Mat ops = Mat::from_cols(s_gens, c.base.k_dim * c.base.k_dim);
    for (std::size_t a = 0; a < c.extended.s_dim(); ++a) {
      Vec coef = *solve(ops, c.extended.s.basis_vector(a)).particular;
      s_mats.push_back(combine(n_mats, coef, n));
    }
  }
  c.quotient = effective_quotient(c.extended.result);
  SkeletonMap pi{c.extended.result, c.quotient.skeleton, c.quotient.k_projection,
                 c.quotient.l_projection};
  c.effective = compose(pi, compose(c.extended.inclusion(), c.reduced));
  require_extension(c.effective);

  // realization of the quotient inside affine(n)
  const std::size_t big = c.extended.total_dim();
  Mat k_real(n + n * n, big);
  for (std::size_t i = 0; i < n; ++i) k_real(i, i) = 1;
  Mat l_real(n * n, hd + c.extended.s_dim());
  for (std::size_t i = 0; i < hd + s_mats.size(); ++i) {
    Vec f = (i < hd ? hol_mats[i] : s_mats[i - hd]).flatten();
    for (std::size_t r = 0; r < n * n; ++r) {
      k_real(n + r, n + i) = f[r];
      l_real(r, i) = f[r];
    }
  }
  Skeleton affine = affine_skeleton(n, gl_basis(n), gl_labels(n));
  c.realization = {c.quotient.skeleton, affine, k_real * c.quotient.k_lift, l_real * c.quotient.l_lift};
  if (!validate_map(c.realization).empty()) {
    throw InvariantError("realization", "quotient does not embed in affine(n)");
  }
  {
    Mat expected(n + n * n, g.dim());
    for (std::size_t j = 0; j < g.dim(); ++j) {
      Vec t = translation_projection(m.target).apply(m.alpha.col(j));
      Vec lin = linear_part(m.target, m.alpha.col(j)).flatten();
      for (std::size_t i = 0; i < n; ++i) expected(i, j) = t[i];
      for (std::size_t r = 0; r < n * n; ++r) expected(n + r, j) = lin[r];
    }
    if (compose(c.realization, c.effective).alpha != expected) {
      throw InvariantError("factorization", "realization o quotient o reduction differs from alpha");
    }
  }

  ExtendedSkeleton plain = build_rho_s(c.quotient.skeleton, Subspace(c.quotient.skeleton.k_dim *
                                                                      c.quotient.skeleton.k_dim));
  c.a_map = build_a_map(c.effective, plain);
  auto violations = check_a_map(c.a_map);
  if (!violations.empty()) throw InvariantError(violations.front().equation, violations.front().detail);
  c.closure = holonomy_closure(c.a_map);
  c.autos = infinitesimal_autos(c.a_map, c.closure);
  if (c.autos.dim() > c.quotient.skeleton.k_dim) {
    throw InvariantError("dimension bound", "dim autos exceeds dim k + dim s");
  }
  if (c.autos.dim() > n + c.extended.s_dim()) {
    throw InvariantError("dimension bound", "dim autos exceeds n + dim s");
  }
  for (std::size_t i = 0; i < c.autos.dim(); ++i) {
    Vec lifted = c.realization.alpha.apply(c.autos.basis_vector(i));
    c.n_components.push_back(Mat::reshape(slice(lifted, n, n * n), n, n));
  }

  c.family = metric_space_z(c.hol, n);
  c.orbits = orbit_space(c.family, c.n_components, step);
  if (!c.orbits.uniform) c.notes.push_back("orbit structure non-uniform");
  c.caveats.push_back("automorphisms are infinitesimal; completeness is not decided");
  c.caveats.push_back("discrete identifications by N_O(n)(Hol) beyond the polar factor are not resolved");
  c.caveats.push_back("metrizability is checked on the holonomy algebra only");
  return c;
}

}  // namespace cartan

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

#include "cartan/skeleton.hpp"

#include <cmath>

#include "cartan/errors.hpp"
#include "cartan/numeric.hpp"

namespace cartan {

namespace {

std::string pair_str(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

Mat linear_combination(const std::vector<Mat>& ms, const Vec& x, std::size_t n) {
  Mat out(n, n);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (sgn(x[i]) != 0) out = out + x[i] * ms[i];
  }
  return out;
}

// Labels for a subalgebra basis: the ambient label when the basis vector is a
// coordinate vector, otherwise a generic name.
std::vector<std::string> sub_labels(const LieAlgebra& g, const Subspace& h, const char* prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    Vec b = h.basis_vector(i);
    std::size_t nonzero = 0;
    for (const auto& x : b) nonzero += sgn(x) != 0;
    out.push_back(nonzero == 1 ? g.label(h.pivots()[i]) : prefix + std::to_string(i + 1));
  }
  return out;
}

// Span of the drho operators as flattened k x k matrices.
Subspace drho_span(const Skeleton& s) {
  std::vector<Vec> gens;
  for (const Mat& d : s.drho) gens.push_back(d.flatten());
  return Subspace::span(s.k_dim * s.k_dim, gens);
}

}  // namespace

Mat Skeleton::drho_of(const Vec& x) const {
  if (x.size() != l.dim()) throw DimensionError("drho_of: wrong length");
  return linear_combination(drho, x, k_dim);
}

std::vector<Violation> validate(const Skeleton& s) {
  std::vector<Violation> out;
  const std::size_t k = s.k_dim;
  const std::size_t l = s.l.dim();
  if (s.l_embed.rows() != k || s.l_embed.cols() != l || s.drho.size() != l) {
    out.push_back({"shape", "l_embed must be k x l and drho must have one operator per l basis"});
    return out;
  }
  for (std::size_t i = 0; i < l; ++i) {
    if (s.drho[i].rows() != k || s.drho[i].cols() != k) {
      out.push_back({"shape", "drho(e" + std::to_string(i) + ") is not k x k"});
      return out;
    }
  }
  if (!s.k_labels.empty() && s.k_labels.size() != k) out.push_back({"shape", "k label count"});
  if (rank(s.l_embed) != l) out.push_back({"injectivity", "l_embed is not injective"});

  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i + 1; j < l; ++j) {
      if (s.drho_of(s.l.bracket_basis(i, j)) != commutator(s.drho[i], s.drho[j])) {
        out.push_back({"drho homomorphism", "drho([X,Y]) != [drho X, drho Y] at basis pair " +
                                                 pair_str(i, j)});
      }
    }
  }
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      if (s.drho[i].apply(s.l_embed.col(j)) != s.l_embed.apply(s.l.bracket_basis(i, j))) {
        out.push_back({"drho restricts to ad on l",
                       "drho(X) embed(Y) != embed([X,Y]) at basis pair " + pair_str(i, j)});
      }
    }
  }
  for (std::size_t c = 0; c < s.component_reps.size(); ++c) {
    const auto& rep = s.component_reps[c];
    const std::string where = "component rep " + std::to_string(c);
    if (rep.rho_op.rows() != k || rep.rho_op.cols() != k || rep.l_auto.rows() != l ||
        rep.l_auto.cols() != l) {
      out.push_back({"shape", where});
      continue;
    }
    auto inv = inverse(rep.rho_op);
    if (!inv) {
      out.push_back({"component invertible", where + " is singular"});
      continue;
    }
    if (rep.rho_op * s.l_embed != s.l_embed * rep.l_auto) {
      out.push_back({"component restricts", where + " does not restrict to its l automorphism"});
    }
    if (!is_lie_automorphism(s.l, rep.l_auto)) {
      out.push_back({"component automorphism", where + " l part is not an automorphism"});
    }
    for (std::size_t i = 0; i < l; ++i) {
      if (rep.rho_op * s.drho[i] * *inv != s.drho_of(rep.l_auto.col(i))) {
        out.push_back({"component conjugation",
                       where + ": rho(l0) drho(X) rho(l0)^-1 != drho(Ad(l0) X) at basis " +
                           std::to_string(i)});
      }
    }
  }
  if (s.k_bracket) {
    if (s.k_bracket->dim() != k) {
      out.push_back({"shape", "bracket on k has wrong dimension"});
    } else {
      for (std::size_t i = 0; i < l; ++i) {
        if (s.k_bracket->ad(s.l_embed.col(i)) != s.drho[i]) {
          out.push_back({"drho = ad_k on l", "at basis " + std::to_string(i)});
        }
      }
    }
  }
  if (s.translation_dim) {
    const std::size_t n = *s.translation_dim;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n && i < k; ++i) idx.push_back(i);
    Subspace t = Subspace::coordinate(k, idx);
    if (n > k || n + l != k || sum(t, s.l_image()).dim() != k) {
      out.push_back({"invariant complement", "first coordinates do not complement l"});
    } else {
      for (std::size_t i = 0; i < l; ++i) {
        if (!map_subspace(s.drho[i], t).is_subset_of(t)) {
          out.push_back({"invariant complement", "drho(e" + std::to_string(i) + ") moves R^n"});
        }
      }
      for (const auto& rep : s.component_reps) {
        if (rep.rho_op.rows() == k && !map_subspace(rep.rho_op, t).is_subset_of(t)) {
          out.push_back({"invariant complement", "a component rep moves R^n"});
        }
      }
    }
  }
  if (!s.linear_basis.empty()) {
    if (!s.translation_dim || s.linear_basis.size() != l) {
      out.push_back({"linear realization", "needs R^n and one matrix per l basis vector"});
    } else {
      const std::size_t n = *s.translation_dim;
      for (std::size_t i = 0; i < l; ++i) {
        if (s.linear_basis[i].rows() != n || s.linear_basis[i].cols() != n ||
            s.drho[i].block(0, 0, n, n) != s.linear_basis[i]) {
          out.push_back({"linear realization", "drho(e" + std::to_string(i) +
                                                   ") does not act on R^n by its matrix"});
        }
      }
    }
  }
  return out;
}

void require_valid(const Skeleton& s) {
  auto v = validate(s);
  if (!v.empty()) throw InvariantError(v.front().equation, v.front().detail);
}

// ---------------------------------------------------------------------------

Skeleton klein_skeleton(const LieAlgebra& g, const Subspace& h) {
  if (h.ambient_dim() != g.dim()) throw DimensionError("klein_skeleton: ambient mismatch");
  if (!is_bracket_closed(g, h)) throw InvariantError("closure", "h is not a subalgebra");
  Skeleton s;
  s.k_dim = g.dim();
  LieAlgebra l = LieAlgebra::restrict_to(g, h);
  s.l = LieAlgebra(l.dim(), [&] {
    std::vector<Vec> b;
    for (std::size_t i = 0; i < l.dim(); ++i)
      for (std::size_t j = 0; j < l.dim(); ++j) b.push_back(l.bracket_basis(i, j));
    return b;
  }(), sub_labels(g, h, "h"));
  s.l_embed = h.basis().transpose();
  for (std::size_t i = 0; i < h.dim(); ++i) s.drho.push_back(g.ad(h.basis_vector(i)));
  s.k_bracket = g;
  s.k_labels = g.labels();
  return s;
}

Skeleton affine_skeleton(std::size_t n, const std::vector<Mat>& linear_basis,
                         std::vector<std::string> linear_labels,
                         const std::vector<Mat>& components) {
  BuiltinAlgebra k = affine_subalgebra(n, linear_basis, linear_labels);
  const std::size_t m = linear_basis.size();
  Skeleton s;
  s.k_dim = n + m;
  std::vector<std::string> l_labels(k.algebra.labels().begin() + static_cast<std::ptrdiff_t>(n),
                                    k.algebra.labels().end());
  s.l = LieAlgebra::from_matrices(linear_basis, l_labels);
  s.l_embed = Mat(n + m, m);
  for (std::size_t i = 0; i < m; ++i) s.l_embed(n + i, i) = 1;
  for (std::size_t i = 0; i < m; ++i) s.drho.push_back(k.algebra.ad(unit_vec(n + m, n + i)));
  for (const Mat& g : components) {
    Mat p = Mat::block_diag(Mat::identity(1), g);
    Mat op = conjugation_operator(k.realization, p);
    s.component_reps.push_back({op, op.block(n, n, m, m)});
  }
  s.k_bracket = k.algebra;
  s.k_labels = k.algebra.labels();
  s.translation_dim = n;
  s.linear_basis = linear_basis;
  return s;
}

namespace {

Mat reflection(std::size_t n) {
  Mat r = Mat::identity(n);
  r(0, 0) = -1;
  return r;
}

}  // namespace

Skeleton euclidean_skeleton(std::size_t n) {
  return affine_skeleton(n, so_basis(n), so_labels(n), {reflection(n)});
}

Skeleton conformal_skeleton(std::size_t n) {
  auto basis = so_basis(n);
  auto labels = so_labels(n);
  basis.push_back(Mat::identity(n));
  labels.push_back("id");
  return affine_skeleton(n, basis, labels, {reflection(n)});
}

// ---------------------------------------------------------------------------

Subspace kernel_ideal(const Skeleton& s) {
  const std::size_t l = s.l.dim();
  const std::size_t k = s.k_dim;
  // M_j has columns drho(e_a) e_j, so drho(X) e_j = M_j X.
  std::vector<Mat> act;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Vec> cols;
    for (std::size_t a = 0; a < l; ++a) cols.push_back(s.drho[a].col(j));
    act.push_back(Mat::from_cols(cols, k));
  }
  Subspace cur = Subspace::full(l);
  while (!cur.is_zero()) {
    Mat ann = cur.annihilator();
    Mat ann_k = map_subspace(s.l_embed, cur).annihilator();
    std::vector<Mat> rows{ann};
    for (std::size_t i = 0; i < l; ++i) rows.push_back(ann * s.l.ad(unit_vec(l, i)));
    for (const Mat& m : act) rows.push_back(ann_k * m);
    for (const auto& rep : s.component_reps) rows.push_back(ann * rep.l_auto);
    Subspace next = kernel(vstack(rows, l));
    if (next.dim() == cur.dim()) break;
    cur = std::move(next);
  }
  return cur;
}

Quotient effective_quotient(const Skeleton& s) {
  Quotient q;
  q.kernel = kernel_ideal(s);
  q.kernel_in_k = map_subspace(s.l_embed, q.kernel);
  const auto kn = q.kernel_in_k.non_pivots();
  const auto ln = q.kernel.non_pivots();
  const std::size_t k2 = kn.size();
  const std::size_t l2 = ln.size();

  auto projector = [](const Subspace& sub, const std::vector<std::size_t>& keep) {
    Mat p(keep.size(), sub.ambient_dim());
    for (std::size_t j = 0; j < sub.ambient_dim(); ++j) {
      Vec r = sub.reduce(unit_vec(sub.ambient_dim(), j));
      for (std::size_t i = 0; i < keep.size(); ++i) p(i, j) = r[keep[i]];
    }
    return p;
  };
  auto lifter = [](std::size_t ambient, const std::vector<std::size_t>& keep) {
    Mat m(ambient, keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) m(keep[i], i) = 1;
    return m;
  };
  q.k_projection = projector(q.kernel_in_k, kn);
  q.l_projection = projector(q.kernel, ln);
  q.k_lift = lifter(s.k_dim, kn);
  q.l_lift = lifter(s.l.dim(), ln);
  const Mat& l_lift = q.l_lift;

  Skeleton& out = q.skeleton;
  out.k_dim = k2;
  std::vector<Vec> brackets;
  std::vector<std::string> l_labels;
  for (std::size_t i = 0; i < l2; ++i) {
    l_labels.push_back(s.l.label(ln[i]));
    for (std::size_t j = 0; j < l2; ++j) {
      brackets.push_back(q.l_projection.apply(s.l.bracket_basis(ln[i], ln[j])));
    }
  }
  out.l = LieAlgebra(l2, brackets, l_labels);
  out.l_embed = q.k_projection * s.l_embed * l_lift;
  for (std::size_t i = 0; i < l2; ++i) out.drho.push_back(q.k_projection * s.drho[ln[i]] * q.k_lift);
  for (const auto& rep : s.component_reps) {
    out.component_reps.push_back(
        {q.k_projection * rep.rho_op * q.k_lift, q.l_projection * rep.l_auto * l_lift});
  }
  for (std::size_t i : kn) {
    if (!s.k_labels.empty()) out.k_labels.push_back(s.k_labels[i]);
  }
  if (s.k_bracket) {
    bool ideal = true;
    for (std::size_t j = 0; j < s.k_dim && ideal; ++j) {
      ideal = map_subspace(s.k_bracket->ad(unit_vec(s.k_dim, j)), q.kernel_in_k)
                  .is_subset_of(q.kernel_in_k);
    }
    if (ideal) {
      std::vector<Vec> kb;
      for (std::size_t i = 0; i < k2; ++i)
        for (std::size_t j = 0; j < k2; ++j)
          kb.push_back(q.k_projection.apply(s.k_bracket->bracket_basis(kn[i], kn[j])));
      out.k_bracket = LieAlgebra(k2, kb, out.k_labels);
    }
  }
  if (s.translation_dim) {
    const auto& piv = q.kernel_in_k.pivots();
    if (piv.empty() || piv.front() >= *s.translation_dim) out.translation_dim = s.translation_dim;
  }
  if (q.kernel.is_zero()) out.linear_basis = s.linear_basis;
  if (!kernel_ideal(out).is_zero()) {
    throw InvariantError("effective quotient", "quotient skeleton still has a kernel");
  }
  return q;
}

// ---------------------------------------------------------------------------

Subspace iext_algebra(const Skeleton& s) {
  if (!kernel_ideal(s).is_zero()) {
    throw InvariantError("effective", "iext needs an effective skeleton (kernel is nonzero)");
  }
  const std::size_t k = s.k_dim;
  const std::size_t l = s.l.dim();
  const std::size_t na = k * k;
  const std::size_t vars = na + l * l;
  auto alpha_var = [&](std::size_t r, std::size_t c) { return r * k + c; };
  auto y_var = [&](std::size_t i, std::size_t b) { return na + i * l + b; };
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < l; ++i) {
    const Vec e = s.l_embed.col(i);
    // alpha embed(e_i) - embed(y_i) = 0
    for (std::size_t r = 0; r < k; ++r) {
      Vec row = zero_vec(vars);
      for (std::size_t j = 0; j < k; ++j) row[alpha_var(r, j)] += e[j];
      for (std::size_t b = 0; b < l; ++b) row[y_var(i, b)] -= s.l_embed(r, b);
      rows.push_back(std::move(row));
    }
    // alpha D_i - D_i alpha - sum_b y_i[b] D_b = 0
    const Mat& d = s.drho[i];
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        Vec row = zero_vec(vars);
        for (std::size_t j = 0; j < k; ++j) {
          row[alpha_var(r, j)] += d(j, c);
          row[alpha_var(j, c)] -= d(r, j);
        }
        for (std::size_t b = 0; b < l; ++b) row[y_var(i, b)] -= s.drho[b](r, c);
        rows.push_back(std::move(row));
      }
    }
  }
  if (rows.empty()) return Subspace::full(na);
  Subspace sol = kernel(Mat::from_rows(rows, vars));
  Mat proj(na, vars);
  for (std::size_t i = 0; i < na; ++i) proj(i, i) = 1;
  return map_subspace(proj, sol);
}

std::vector<Mat> iext_basis(const Skeleton& s) {
  std::vector<Mat> out;
  Subspace ie = iext_algebra(s);
  for (std::size_t i = 0; i < ie.dim(); ++i) out.push_back(Mat::reshape(ie.basis_vector(i), s.k_dim, s.k_dim));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Does m = exp(D) for some D in span(drho(l))? Exact normalization test, then
// a numerical principal logarithm snapped to rationals.
bool is_exp_of_drho(const Skeleton& s, const Subspace& span, const Mat& m) {
  auto minv = inverse(m);
  if (!minv) return false;
  for (const Mat& d : s.drho) {
    if (!span.contains((m * d * *minv).flatten())) return false;
  }
  MatF log;
  try {
    log = logm(to_float(m));
  } catch (const NumericError&) {
    return false;
  }
  Vec flat;
  for (Eigen::Index i = 0; i < log.rows(); ++i) {
    for (Eigen::Index j = 0; j < log.cols(); ++j) {
      auto r = rationalize(log(i, j));
      if (!r) return false;
      flat.push_back(*r);
    }
  }
  if (!span.contains(flat)) return false;
  MatF back = expm(to_float(Mat::reshape(flat, s.k_dim, s.k_dim)));
  return (back - to_float(m)).norm() <= 1e-9 * std::max(1.0, back.norm());
}

}  // namespace

ExtCheck verify_ext_candidate(const Skeleton& s, const ExtGroupElement& e) {
  ExtCheck out;
  const std::size_t k = s.k_dim;
  const std::size_t l = s.l.dim();
  if (e.alpha.rows() != k || e.alpha.cols() != k || e.induced_l_auto.rows() != l ||
      e.induced_l_auto.cols() != l) {
    out.violations.push_back({"shape", "alpha must be k x k and the l map l x l"});
    return out;
  }
  auto ainv = inverse(e.alpha);
  if (!ainv) {
    out.violations.push_back({"invertibility", "alpha is singular"});
    return out;
  }
  if (e.alpha * s.l_embed != s.l_embed * e.induced_l_auto) {
    out.violations.push_back({"normalizes l", "alpha embed(X) != embed(induced X)"});
  }
  if (!is_lie_automorphism(s.l, e.induced_l_auto)) {
    out.violations.push_back({"l automorphism", "induced map is not an automorphism of l"});
  }
  for (std::size_t i = 0; i < l; ++i) {
    if (s.drho_of(e.induced_l_auto.col(i)) != e.alpha * s.drho[i] * *ainv) {
      out.violations.push_back({"ext condition", "drho(a X) != alpha drho(X) alpha^-1 at basis " +
                                                     std::to_string(i)});
    }
  }
  if (!s.component_reps.empty()) {
    out.heuristic = true;
    Subspace span = drho_span(s);
    std::vector<Mat> candidates{Mat::identity(k)};
    for (const auto& rep : s.component_reps) candidates.push_back(rep.rho_op);
    for (std::size_t c = 0; c < s.component_reps.size(); ++c) {
      Mat conj = e.alpha * s.component_reps[c].rho_op * *ainv;
      bool found = false;
      for (const Mat& r : candidates) {
        auto rinv = inverse(r);
        if (rinv && is_exp_of_drho(s, span, conj * *rinv)) {
          found = true;
          break;
        }
      }
      if (!found) {
        out.violations.push_back({"component", "conjugate of component rep " + std::to_string(c) +
                                                   " matches no listed component"});
      }
    }
  }
  return out;
}

}  // namespace cartan

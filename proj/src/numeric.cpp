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

#include "cartan/numeric.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "cartan/errors.hpp"

namespace cartan {

SymMatF::SymMatF(const MatF& m) {
  if (m.rows() != m.cols()) throw DimensionError("SymMatF: non-square matrix");
  if (!m.allFinite()) throw NumericError("SymMatF: non-finite entry");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() >= 1e-12 * scale) {
    throw NumericError("SymMatF: matrix is not symmetric");
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatF SymMatF::from_exact(const Mat& m) { return SymMatF(to_float(m)); }

EigenDecomposition jacobi_eigen(const SymMatF& s) {
  MatF a = s.matrix();
  const Eigen::Index n = a.rows();
  MatF v = MatF::Identity(n, n);
  const double target = 1e-12 * std::max(1.0, a.norm());
  auto off = [&] {
    double sum = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
  };
  int sweeps = 0;
  while (off() >= target) {
    if (++sweeps > 100) throw NumericError("jacobi_eigen: no convergence");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1);
        double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) < a(y, y); });
  EigenDecomposition out{VecF(n), MatF(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

namespace {

template <class F>
SymMatF spectral(const SymMatF& s, F f) {
  EigenDecomposition e = jacobi_eigen(s);
  VecF fv = e.values.unaryExpr(f);
  return SymMatF(e.vectors * fv.asDiagonal() * e.vectors.transpose());
}

void require_pd(const SymMatF& a, const char* what) {
  EigenDecomposition e = jacobi_eigen(a);
  if (e.values.size() > 0 && e.values(0) <= 1e-12) {
    throw NumericError(std::string(what) + ": matrix is not positive definite");
  }
}

}  // namespace

SymMatF spd_exp(const SymMatF& y) {
  return spectral(y, [](double x) { return std::exp(x); });
}

SymMatF spd_log(const SymMatF& a) {
  require_pd(a, "spd_log");
  return spectral(a, [](double x) { return std::log(x); });
}

SymMatF spd_sqrt(const SymMatF& a) {
  require_pd(a, "spd_sqrt");
  return spectral(a, [](double x) { return std::sqrt(x); });
}

Polar polar_decompose(const MatF& m) {
  if (m.rows() != m.cols()) throw DimensionError("polar_decompose: non-square matrix");
  if (!m.allFinite()) throw NumericError("polar_decompose: non-finite entry");
  if (std::abs(m.determinant()) <= 1e-12) throw NumericError("polar_decompose: singular matrix");
  // scaled Newton iteration q <- (g q + q^-T / g) / 2 for the orthogonal factor;
  // working on m itself avoids squaring its condition number through m m^T
  MatF q = m;
  for (int it = 0; it < 100; ++it) {
    MatF inv_t = q.inverse().transpose();
    double g = it < 10 ? std::sqrt(inv_t.norm() / q.norm()) : 1.0;
    MatF next = 0.5 * (g * q + inv_t / g);
    double change = (next - q).norm();
    q = next;
    if (change < 1e-14 * std::sqrt(static_cast<double>(q.rows()))) break;
  }
  MatF p = m * q.transpose();
  return {SymMatF(0.5 * (p + p.transpose())), q};
}

MatF expm(const MatF& m) { return m.exp(); }

MatF logm(const MatF& m) {
  if (m.rows() != m.cols()) throw DimensionError("logm: non-square matrix");
  Eigen::EigenSolver<MatF> es(m, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    auto z = es.eigenvalues()(i);
    if (z.real() <= 1e-12 && std::abs(z.imag()) <= 1e-12) {
      throw NumericError("logm: eigenvalue on the closed negative real axis");
    }
  }
  return m.log();
}

MatF to_float(const Mat& m) {
  MatF out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  return out;
}

std::optional<Rational> rationalize(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // convergents h/k of the continued fraction of x
  double r = x;
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(r));
  mpz_class k_prev = 0, k = 1;
  double frac = r - std::floor(r);
  for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
    r = 1 / frac;
    long a = static_cast<long>(std::floor(r));
    frac = r - std::floor(r);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    if (std::abs(x - h.get_d() / k.get_d()) <= tol * 1e-3) break;
  }
  Rational q(h, k);
  q.canonicalize();
  if (std::abs(q.get_d() - x) > tol) return std::nullopt;
  return q;
}

}  // namespace cartan

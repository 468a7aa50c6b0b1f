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

#include "cartan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "cartan/errors.hpp"
#include "cartan/examples.hpp"

namespace cartan::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// parsing

std::string at(const std::string& loc, const std::string& key) { return loc + "." + key; }
std::string at(const std::string& loc, std::size_t i) { return loc + "[" + std::to_string(i) + "]"; }

const json& field(const json& obj, const std::string& loc, const std::string& key) {
  if (!obj.is_object()) throw ParseError(loc, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(loc, "missing field '" + key + "'");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string str(const json& j, const std::string& loc) {
  if (!j.is_string()) throw ParseError(loc, "expected a string");
  return j.get<std::string>();
}

std::size_t count(const json& j, const std::string& loc) {
  if (!j.is_number_unsigned()) throw ParseError(loc, "expected a non-negative integer");
  return j.get<std::size_t>();
}

const json& array(const json& j, const std::string& loc) {
  if (!j.is_array()) throw ParseError(loc, "expected an array");
  return j;
}

Rational rat(const json& j, const std::string& loc) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError(loc, "expected a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(loc, e.what());
  }
}

Vec vec(const json& j, const std::string& loc, std::optional<std::size_t> size = std::nullopt) {
  array(j, loc);
  if (size && j.size() != *size) {
    throw ParseError(loc, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  }
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rat(j[i], at(loc, i)));
  return v;
}

Mat mat(const json& j, const std::string& loc, std::size_t rows, std::size_t cols) {
  array(j, loc);
  if (j.size() != rows) {
    throw ParseError(loc, "expected " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix, got " +
                              std::to_string(j.size()) + " rows");
  }
  std::vector<Vec> r;
  for (std::size_t i = 0; i < rows; ++i) r.push_back(vec(j[i], at(loc, i), cols));
  return Mat::from_rows(r, cols);
}

Mat square(const json& j, const std::string& loc) {
  array(j, loc);
  return mat(j, loc, j.size(), j.size());
}

std::vector<std::string> labels(const json* j, const std::string& loc, std::size_t n) {
  if (!j) return {};
  array(*j, loc);
  if (j->size() != n) throw ParseError(loc, "expected " + std::to_string(n) + " labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(str((*j)[i], at(loc, i)));
  return out;
}

template <class T>
const T& lookup(const std::map<std::string, T>& m, const json& ref, const std::string& loc, const char* what) {
  std::string name = str(ref, loc);
  auto it = m.find(name);
  if (it == m.end()) throw ParseError(loc, std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}

// Library errors raised while building an entity keep their kind; dimension
// problems become parse errors at the entity.
template <class F>
auto build(const std::string& loc, F&& f) {
  try {
    return f();
  } catch (const DimensionError& e) {
    throw ParseError(loc, e.what());
  } catch (const InvariantError& e) {
    std::string what = e.what();
    throw InvariantError(e.equation(), what.substr(std::min(what.size(), e.equation().size() + 2)) + " (at " + loc + ")");
  }
}

LieAlgebra parse_algebra(const json& j, const std::string& loc) {
  if (const json* b = optional_field(j, "builtin")) {
    std::string name = str(*b, at(loc, "builtin"));
    std::size_t n = count(field(j, loc, "n"), at(loc, "n"));
    return build(loc, [&] { return builtin(name, n).algebra; });
  }
  if (const json* ms = optional_field(j, "matrices")) {
    array(*ms, at(loc, "matrices"));
    std::vector<Mat> basis;
    for (std::size_t i = 0; i < ms->size(); ++i) basis.push_back(square((*ms)[i], at(at(loc, "matrices"), i)));
    auto lab = labels(optional_field(j, "labels"), at(loc, "labels"), basis.size());
    return build(loc, [&] { return LieAlgebra::from_matrices(basis, lab); });
  }
  std::size_t d = count(field(j, loc, "dim"), at(loc, "dim"));
  auto lab = labels(optional_field(j, "labels"), at(loc, "labels"), d);
  std::vector<std::string> names = lab;
  if (names.empty()) {
    for (std::size_t i = 0; i < d; ++i) names.push_back("e" + std::to_string(i + 1));
  }
  std::vector<Vec> table(d * d, zero_vec(d));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  const std::string bloc = at(loc, "brackets");
  const json& br = array(field(j, loc, "brackets"), bloc);
  for (std::size_t e = 0; e < br.size(); ++e) {
    const std::string eloc = at(bloc, e);
    if (!br[e].is_array() || br[e].size() != 3) throw ParseError(eloc, "expected [label, label, vector]");
    auto index = [&](const json& x, const std::string& l) {
      std::string s = str(x, l);
      auto it = std::find(names.begin(), names.end(), s);
      if (it == names.end()) throw ParseError(l, "unknown basis label '" + s + "'");
      return static_cast<std::size_t>(it - names.begin());
    };
    std::size_t a = index(br[e][0], at(eloc, 0));
    std::size_t b = index(br[e][1], at(eloc, 1));
    Vec v = vec(br[e][2], at(eloc, 2), d);
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) throw ParseError(eloc, "bracket given twice");
    table[a * d + b] = v;
    table[b * d + a] = -v;
  }
  return build(loc, [&] { return LieAlgebra(d, table, lab); });
}

KleinModel parse_klein(const Problem& p, const json& j, const std::string& loc) {
  const LieAlgebra& g = lookup(p.algebras, field(j, loc, "algebra"), at(loc, "algebra"), "lie algebra");
  Subspace h(g.dim());
  if (const json* c = optional_field(j, "h_coordinates")) {
    array(*c, at(loc, "h_coordinates"));
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < c->size(); ++i) {
      std::size_t k = count((*c)[i], at(at(loc, "h_coordinates"), i));
      if (k >= g.dim()) throw ParseError(at(at(loc, "h_coordinates"), i), "coordinate out of range");
      idx.push_back(k);
    }
    h = Subspace::coordinate(g.dim(), idx);
  } else {
    const json& gens = array(field(j, loc, "h"), at(loc, "h"));
    std::vector<Vec> v;
    for (std::size_t i = 0; i < gens.size(); ++i) v.push_back(vec(gens[i], at(at(loc, "h"), i), g.dim()));
    h = Subspace::span(g.dim(), v);
  }
  return build(loc, [&] { return KleinModel::make(g, h); });
}

Skeleton parse_skeleton(const Problem& p, const json& j, const std::string& loc) {
  if (const json* b = optional_field(j, "builtin")) {
    std::string name = str(*b, at(loc, "builtin"));
    std::size_t n = count(field(j, loc, "n"), at(loc, "n"));
    if (name == "euclidean") return build(loc, [&] { return euclidean_skeleton(n); });
    if (name == "conformal") return build(loc, [&] { return conformal_skeleton(n); });
    if (name == "affine") return build(loc, [&] { return affine_skeleton(n, gl_basis(n), gl_labels(n)); });
    throw ParseError(at(loc, "builtin"), "unknown builtin skeleton '" + name + "'");
  }
  if (const json* k = optional_field(j, "klein")) {
    return lookup(p.kleins, *k, at(loc, "klein"), "klein model").skeleton();
  }
  if (const json* a = optional_field(j, "affine")) {
    const std::string aloc = at(loc, "affine");
    std::size_t n = count(field(*a, aloc, "n"), at(aloc, "n"));
    const json& lb = array(field(*a, aloc, "linear_basis"), at(aloc, "linear_basis"));
    std::vector<Mat> basis;
    for (std::size_t i = 0; i < lb.size(); ++i) basis.push_back(mat(lb[i], at(at(aloc, "linear_basis"), i), n, n));
    auto lab = labels(optional_field(*a, "labels"), at(aloc, "labels"), basis.size());
    std::vector<Mat> comps;
    if (const json* c = optional_field(*a, "components")) {
      array(*c, at(aloc, "components"));
      for (std::size_t i = 0; i < c->size(); ++i) comps.push_back(mat((*c)[i], at(at(aloc, "components"), i), n, n));
    }
    return build(loc, [&] { return affine_skeleton(n, basis, lab, comps); });
  }
  if (optional_field(j, "extended")) throw ParseError(loc, "extended skeletons are resolved after s_subspaces");

  Skeleton s;
  s.k_dim = count(field(j, loc, "k_dim"), at(loc, "k_dim"));
  s.l = lookup(p.algebras, field(j, loc, "l"), at(loc, "l"), "lie algebra");
  const std::size_t l = s.l.dim();
  s.l_embed = mat(field(j, loc, "l_embed"), at(loc, "l_embed"), s.k_dim, l);
  const json& dr = array(field(j, loc, "drho"), at(loc, "drho"));
  if (dr.size() != l) throw ParseError(at(loc, "drho"), "expected one operator per basis vector of l");
  for (std::size_t i = 0; i < l; ++i) s.drho.push_back(mat(dr[i], at(at(loc, "drho"), i), s.k_dim, s.k_dim));
  if (const json* c = optional_field(j, "component_reps")) {
    array(*c, at(loc, "component_reps"));
    for (std::size_t i = 0; i < c->size(); ++i) {
      const std::string cloc = at(at(loc, "component_reps"), i);
      s.component_reps.push_back({mat(field((*c)[i], cloc, "rho"), at(cloc, "rho"), s.k_dim, s.k_dim),
                                  mat(field((*c)[i], cloc, "l_auto"), at(cloc, "l_auto"), l, l)});
    }
  }
  if (const json* b = optional_field(j, "bracket")) {
    s.k_bracket = lookup(p.algebras, *b, at(loc, "bracket"), "lie algebra");
    if (s.k_bracket->dim() != s.k_dim) throw ParseError(at(loc, "bracket"), "bracket algebra must have dim k");
  }
  if (const json* t = optional_field(j, "translation_dim")) s.translation_dim = count(*t, at(loc, "translation_dim"));
  s.k_labels = labels(optional_field(j, "k_labels"), at(loc, "k_labels"), s.k_dim);
  if (s.k_labels.empty()) {
    for (std::size_t i = 0; i < s.k_dim; ++i) s.k_labels.push_back("k" + std::to_string(i + 1));
  }
  return s;
}

SSubspace parse_s(const Problem& p, const json& j, const std::string& loc) {
  SSubspace out;
  out.skeleton = str(field(j, loc, "skeleton"), at(loc, "skeleton"));
  const Skeleton& base = lookup(p.skeletons, field(j, loc, "skeleton"), at(loc, "skeleton"), "skeleton");
  const std::size_t k = base.k_dim;
  std::vector<Vec> gens;
  if (const json* g = optional_field(j, "generators")) {
    array(*g, at(loc, "generators"));
    for (std::size_t i = 0; i < g->size(); ++i) gens.push_back(mat((*g)[i], at(at(loc, "generators"), i), k, k).flatten());
  }
  if (const json* l = optional_field(j, "linear")) {
    array(*l, at(loc, "linear"));
    if (!base.translation_dim) throw ParseError(at(loc, "linear"), "skeleton is not affine-type");
    const std::size_t n = *base.translation_dim;
    for (std::size_t i = 0; i < l->size(); ++i) {
      Mat pm = mat((*l)[i], at(at(loc, "linear"), i), n, n);
      gens.push_back(build(at(at(loc, "linear"), i), [&] { return normalizer_operator(base, pm); }).flatten());
    }
  }
  out.s = Subspace::span(k * k, gens);
  return out;
}

SkeletonMorphism parse_morphism(const Problem& p, const json& j, const std::string& loc) {
  SkeletonMorphism m;
  m.source = lookup(p.kleins, field(j, loc, "source"), at(loc, "source"), "klein model");
  m.target = lookup(p.skeletons, field(j, loc, "target"), at(loc, "target"), "skeleton");
  m.alpha = mat(field(j, loc, "alpha"), at(loc, "alpha"), m.target.k_dim, m.source.g.dim());
  const std::size_t hd = m.source.h.dim();
  if (const json* dj = optional_field(j, "dj")) {
    m.dj = mat(*dj, at(loc, "dj"), m.target.l.dim(), hd);
  } else if (hd == 0) {
    m.dj = Mat(m.target.l.dim(), 0);
  } else {
    throw ParseError(loc, "missing field 'dj'");
  }
  return m;
}

const std::map<std::string, std::vector<std::string>>& task_arguments() {
  static const std::map<std::string, std::vector<std::string>> args{
      {"validate", {"skeleton"}},
      {"kernel", {"skeleton"}},
      {"effective-quotient", {"skeleton"}},
      {"iext", {"skeleton"}},
      {"curvature", {"morphism"}},
      {"torsion", {"morphism"}},
      {"autos", {"morphism"}},
      {"flat-autos", {"klein"}},
      {"riemann-classify", {"morphism"}},
      {"example-so3", {}},
  };
  return args;
}

Task parse_task(const Problem& p, const json& j, const std::string& loc) {
  Task t;
  t.kind = str(field(j, loc, "kind"), at(loc, "kind"));
  auto spec = task_arguments().find(t.kind);
  if (spec == task_arguments().end()) throw ParseError(at(loc, "kind"), "unknown task kind '" + t.kind + "'");
  t.name = optional_field(j, "name") ? str(j["name"], at(loc, "name")) : t.kind;
  for (const std::string& a : spec->second) t.args[a] = str(field(j, loc, a), at(loc, a));
  if (const json* s = optional_field(j, "s")) t.args["s"] = str(*s, at(loc, "s"));
  if (const json* st = optional_field(j, "step")) {
    if (!st->is_number() || st->get<double>() <= 0) throw ParseError(at(loc, "step"), "expected a positive number");
    t.step = st->get<double>();
  }
  auto check = [&](const std::string& key, auto& table, const char* what) {
    auto it = t.args.find(key);
    if (it != t.args.end() && !table.count(it->second)) {
      throw ParseError(at(loc, key), std::string("unknown ") + what + " '" + it->second + "'");
    }
  };
  check("skeleton", p.skeletons, "skeleton");
  check("morphism", p.morphisms, "morphism");
  check("klein", p.kleins, "klein model");
  check("s", p.s_subspaces, "s subspace");
  return t;
}

// ---------------------------------------------------------------------------
// rendering

std::string term_label(const std::string& l) {
  bool compound = l.front() != '[' && l.find_first_of("+-", 1) != std::string::npos;
  return compound ? "(" + l + ")" : l;
}

std::string render_vec(const Vec& v, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    Rational a = abs(v[i]);
    std::string t = (a == 1 ? "" : to_string(a) + "*") + term_label(labels.at(i));
    if (out.empty()) {
      out = (sgn(v[i]) < 0 ? "-" : "") + t;
    } else {
      out += (sgn(v[i]) < 0 ? " - " : " + ") + t;
    }
  }
  return out.empty() ? "0" : out;
}

// Operator on a labeled space: [row|col] stands for the elementary map col -> row.
std::vector<std::string> operator_labels(const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& r : labels)
    for (const auto& c : labels) out.push_back("[" + r + "|" + c + "]");
  return out;
}

std::vector<std::string> k_labels(const Skeleton& s) {
  if (s.k_labels.size() == s.k_dim) return s.k_labels;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.k_dim; ++i) out.push_back("k" + std::to_string(i + 1));
  return out;
}

void add_basis(Report& r, const std::string& key, const Subspace& s, const std::vector<std::string>& labels) {
  r.dims[key] = s.dim();
  r.bases[key] = s.basis_vectors();
  std::vector<std::string> text;
  for (const Vec& v : s.basis_vectors()) text.push_back(render_vec(v, labels));
  r.basis_text[key] = text;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// ---------------------------------------------------------------------------
// tasks

Report validate_task(const Skeleton& s) {
  Report r;
  r.dims["k"] = s.k_dim;
  r.dims["l"] = s.l.dim();
  auto v = validate(s);
  for (const auto& x : v) r.summary.push_back("violation " + x.equation + ": " + x.detail);
  if (!v.empty()) {
    r.summary.insert(r.summary.begin(), "valid: no");
    return r;
  }
  Subspace ker = kernel_ideal(s);
  add_basis(r, "kernel", ker, s.l.labels());
  r.summary.push_back("valid: yes");
  r.summary.push_back(std::string("effective: ") + (ker.is_zero() ? "yes" : "no") + ", kernel dim " +
                      std::to_string(ker.dim()));
  return r;
}

Report kernel_task(const Skeleton& s) {
  require_valid(s);
  Report r;
  Subspace ker = kernel_ideal(s);
  add_basis(r, "kernel", ker, s.l.labels());
  add_basis(r, "kernel in k", map_subspace(s.l_embed, ker), k_labels(s));
  r.summary.push_back("kernel dim " + std::to_string(ker.dim()));
  return r;
}

Report quotient_task(const Skeleton& s) {
  require_valid(s);
  Report r;
  Quotient q = effective_quotient(s);
  add_basis(r, "kernel", q.kernel, s.l.labels());
  r.dims["quotient k"] = q.skeleton.k_dim;
  r.dims["quotient l"] = q.skeleton.l.dim();
  std::string ks;
  for (const auto& l : k_labels(q.skeleton)) ks += (ks.empty() ? "" : " ") + l;
  std::string ls;
  for (const auto& l : q.skeleton.l.labels()) ls += (ls.empty() ? "" : " ") + l;
  r.summary.push_back("quotient k coordinates: " + ks);
  r.summary.push_back("quotient l coordinates: " + ls);
  r.summary.push_back(std::string("bracket on k kept: ") + (q.skeleton.k_bracket ? "yes" : "no"));
  add_basis(r, "quotient kernel", kernel_ideal(q.skeleton), q.skeleton.l.labels());
  return r;
}

Report iext_task(const Skeleton& s) {
  require_valid(s);
  Report r;
  add_basis(r, "iext", iext_algebra(s), operator_labels(k_labels(s)));
  r.summary.push_back("iext dim " + std::to_string(r.dims["iext"]));
  r.notes.push_back("basis elements are operators on k; [a|b] maps b to a");
  return r;
}

std::vector<std::string> nonzero_pairs(const CurvatureTable& t, const std::vector<std::vector<Vec>>& values,
                                       const LieAlgebra& g, const std::vector<std::string>& labels,
                                       const char* symbol) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < t.reps.size(); ++i) {
    for (std::size_t j = i + 1; j < t.reps.size(); ++j) {
      if (is_zero(values[i][j])) continue;
      out.push_back(std::string(symbol) + "(" + render_vec(t.reps[i], g.labels()) + ", " +
                    render_vec(t.reps[j], g.labels()) + ") = " + render_vec(values[i][j], labels));
    }
  }
  return out;
}

Report curvature_task(const SkeletonMorphism& m) {
  require_extension(m);
  Report r;
  CurvatureTable t = curvature_homogeneous(m);
  add_basis(r, "complement", t.complement, m.source.g.labels());
  add_basis(r, "curvature span", t.span(m.target.k_dim), k_labels(m.target));
  r.summary = nonzero_pairs(t, t.values, m.source.g, k_labels(m.target), "kappa");
  r.summary.insert(r.summary.begin(), std::string("flat: ") + (r.dims["curvature span"] ? "no" : "yes"));
  return r;
}

Report torsion_task(const SkeletonMorphism& m) {
  require_extension(m);
  Report r;
  CurvatureTable t = curvature_homogeneous(m);
  auto tor = torsion_component(m);
  const std::size_t n = *m.target.translation_dim;
  auto labels = k_labels(m.target);
  labels.resize(n);
  std::vector<Vec> all;
  for (const auto& row : tor)
    for (const auto& v : row) all.push_back(v);
  add_basis(r, "torsion span", Subspace::span(n, all), labels);
  r.summary = nonzero_pairs(t, tor, m.source.g, labels, "T");
  r.summary.insert(r.summary.begin(), std::string("torsion-free: ") + (r.dims["torsion span"] ? "no" : "yes"));
  return r;
}

void autos_report(Report& r, const AMap& a, const Subspace& closure, const Subspace& autos) {
  const ExtendedSkeleton& ext = a.extended;
  r.dims["k"] = ext.base.k_dim;
  r.dims["s"] = ext.s_dim();
  r.dims["closure"] = closure.dim();
  add_basis(r, "autos", autos, k_labels(ext.result));
  if (autos.dim() > ext.total_dim()) throw InvariantError("dimension bound", "dim autos exceeds dim k + dim s");
  r.summary.push_back("autos dim " + std::to_string(autos.dim()) + " (bound dim k + dim s = " +
                      std::to_string(ext.total_dim()) + ")");
  r.caveats.push_back("automorphisms are infinitesimal; completeness is not decided");
}

AMap checked_a_map(const SkeletonMorphism& m, const ExtendedSkeleton& ext) {
  AMap a = build_a_map(m, ext);
  auto v = check_a_map(a);
  if (!v.empty()) throw InvariantError(v.front().equation, v.front().detail);
  return a;
}

Report autos_task(const SkeletonMorphism& m, const Subspace* s) {
  require_extension(m);
  Report r;
  Subspace zero(m.target.k_dim * m.target.k_dim);
  ExtendedSkeleton ext = build_rho_s(m.target, s ? *s : zero);
  AMap a = checked_a_map(m, ext);
  Subspace closure = holonomy_closure(a);
  autos_report(r, a, closure, infinitesimal_autos(a, closure));
  return r;
}

Report flat_autos_task(const KleinModel& k, const Subspace* s) {
  Report r;
  Skeleton base = k.skeleton();
  Subspace zero(base.k_dim * base.k_dim);
  ExtendedSkeleton ext = build_rho_s(base, s ? *s : zero);
  AMap a = checked_a_map(identity_extension(k), ext);
  Subspace closure = holonomy_closure(a);
  Subspace autos = infinitesimal_autos(a, closure);
  autos_report(r, a, closure, autos);
  Subspace kept = flat_model_auto_filter(ext, k);
  std::vector<std::string> s_labels;
  for (std::size_t i = 0; i < ext.s_dim(); ++i) s_labels.push_back("s" + std::to_string(i + 1));
  add_basis(r, "derivation filter", kept, s_labels);
  std::vector<std::size_t> s_coords;
  for (std::size_t i = 0; i < ext.s_dim(); ++i) s_coords.push_back(base.k_dim + i);
  Subspace in_s = intersect(autos, Subspace::coordinate(ext.total_dim(), s_coords));
  if (autos.dim() != k.g.dim() + kept.dim() || in_s.dim() != kept.dim()) {
    throw InvariantError("flat model", "derivation filter disagrees with the automorphism algebra");
  }
  r.summary.push_back("derivation filter dim " + std::to_string(kept.dim()) + ", agrees with autos");
  r.caveats.push_back("the derivation filter is infinitesimal; integration to Aut(G) is not decided");
  return r;
}

json tolerance_json(const Classification& c, double step) {
  json t;
  t["rank threshold"] = "1e-6 relative to the largest singular value";
  t["step"] = step;
  t["singular values"] = c.orbits.singular_values;
  t["ranks per base point"] = c.orbits.ranks;
  json sweep = json::object();
  for (double w : {1e-5, 1e-4, 1e-3}) sweep[fmt(w)] = orbit_space(c.family, c.n_components, w).orbit_dim;
  t["orbit dim by step"] = sweep;
  double comm = 0;
  for (const Vec& h : c.hol.basis_vectors()) {
    MatF hf = to_float(Mat::reshape(h, c.n, c.n));
    for (const SymMatF& z : c.family.z_basis) comm = std::max(comm, (z.matrix() * hf - hf * z.matrix()).norm());
  }
  t["z commutation residual"] = comm;
  double recon = 0;
  VecF z = VecF::Constant(static_cast<Eigen::Index>(c.family.dim()), 0.5);
  SymMatF y = c.family.point(z);
  for (const Vec& p : c.normalizer.basis_vectors()) {
    MatF g = expm(0.5 * to_float(Mat::reshape(p, c.n, c.n)));
    TauResult tr = tau_apply(g, y);
    recon = std::max(recon, (spd_exp(tr.y_p).matrix() * tr.k.transpose() - g.inverse() * spd_exp(y).matrix()).norm());
  }
  t["tau reconstruction residual"] = recon;
  return t;
}

Report classify_task(const SkeletonMorphism& m, double step, bool tolerances) {
  Report r;
  Classification c = classify_metrics(m, step);
  auto gl = gl_labels(c.n);
  add_basis(r, "hol", c.hol, gl);
  add_basis(r, "normalizer", c.normalizer, gl);
  r.dims["s"] = c.extended.s_dim();
  add_basis(r, "kernel", c.quotient.kernel, c.extended.result.l.labels());
  r.dims["quotient k"] = c.quotient.skeleton.k_dim;
  r.dims["closure"] = c.closure.dim();
  add_basis(r, "autos", c.autos, k_labels(c.quotient.skeleton));
  std::vector<Vec> z;
  for (const Mat& y : c.family.z_exact) z.push_back(y.flatten());
  add_basis(r, "Z", Subspace::span(c.n * c.n, z), gl);
  r.bases["Z"] = z;  // keep the m1, m2, ... parameter order
  r.basis_text["Z"].clear();
  for (const Vec& v : z) r.basis_text["Z"].push_back(render_vec(v, gl));
  r.dims["orbit"] = c.orbits.orbit_dim;
  r.summary.push_back("metrizable: yes");
  r.summary.push_back("hol dim " + std::to_string(c.hol.dim()));
  r.summary.push_back("Z dim " + std::to_string(c.family.dim()));
  r.summary.push_back("autos dim " + std::to_string(c.autos.dim()) + " (bound n + dim s = " +
                      std::to_string(c.n + c.extended.s_dim()) + ")");
  r.summary.push_back("orbit dim " + std::to_string(c.orbits.orbit_dim));
  if (c.orbits.uniform) {
    std::string reps;
    for (const auto& s : c.orbits.representatives) reps += (reps.empty() ? "" : "; ") + s;
    r.summary.push_back("representatives " + (reps.empty() ? std::string("(not rational)") : reps));
  }
  r.notes = c.notes;
  r.caveats = c.caveats;
  if (tolerances) r.tolerances = tolerance_json(c, step);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

Problem parse_problem(const json& doc) {
  const std::string root = "$";
  if (!doc.is_object()) throw ParseError(root, "expected an object");
  Problem p;
  p.format_version = str(field(doc, root, "format_version"), "$.format_version");
  if (p.format_version != "1") throw ParseError("$.format_version", "unsupported version '" + p.format_version + "'");
  auto section = [&](const char* key) -> const json& {
    static const json empty = json::object();
    const json* s = optional_field(doc, key);
    if (!s) return empty;
    if (!s->is_object()) throw ParseError(at(root, key), "expected an object");
    return *s;
  };
  for (const auto& [name, j] : section("lie_algebras").items())
    p.algebras[name] = parse_algebra(j, at("$.lie_algebras", name));
  for (const auto& [name, j] : section("klein_models").items())
    p.kleins[name] = parse_klein(p, j, at("$.klein_models", name));
  for (const auto& [name, j] : section("skeletons").items())
    if (!optional_field(j, "extended")) p.skeletons[name] = parse_skeleton(p, j, at("$.skeletons", name));
  for (const auto& [name, j] : section("s_subspaces").items())
    p.s_subspaces[name] = parse_s(p, j, at("$.s_subspaces", name));
  for (const auto& [name, j] : section("skeletons").items()) {
    const json* e = optional_field(j, "extended");
    if (!e) continue;
    const std::string loc = at(at("$.skeletons", name), "extended");
    const Skeleton& base = lookup(p.skeletons, field(*e, loc, "base"), at(loc, "base"), "skeleton");
    const SSubspace& s = lookup(p.s_subspaces, field(*e, loc, "s"), at(loc, "s"), "s subspace");
    if (&p.skeletons.at(s.skeleton) != &base) throw ParseError(at(loc, "s"), "s belongs to another skeleton");
    p.skeletons[name] = build(loc, [&] { return build_rho_s(base, s.s).result; });
  }
  for (const auto& [name, j] : section("morphisms").items())
    p.morphisms[name] = parse_morphism(p, j, at("$.morphisms", name));
  if (const json* t = optional_field(doc, "tasks")) {
    array(*t, "$.tasks");
    for (std::size_t i = 0; i < t->size(); ++i) p.tasks.push_back(parse_task(p, (*t)[i], at("$.tasks", i)));
  }
  return p;
}

Problem parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
  }
  return parse_problem(doc);
}

Problem example_so3_problem() {
  Problem p;
  p.format_version = "1";
  p.tasks.push_back({"example-so3", "example-so3", {}, std::nullopt});
  return p;
}

std::vector<Report> run_problem(const Problem& p, const RunOptions& opt, std::vector<Report>* done) {
  std::vector<Report> out;
  bool matched = false;
  try {
    for (const Task& t : p.tasks) {
      if (!opt.only_task.empty() && t.name != opt.only_task && t.kind != opt.only_task) continue;
      matched = true;
      Report r;
      const double step = t.step.value_or(1e-4);
      auto arg = [&](const char* k) { return t.args.at(k); };
      const Subspace* s = t.args.count("s") ? &p.s_subspaces.at(arg("s")).s : nullptr;
      if (t.kind == "validate") {
        r = validate_task(p.skeletons.at(arg("skeleton")));
      } else if (t.kind == "kernel") {
        r = kernel_task(p.skeletons.at(arg("skeleton")));
      } else if (t.kind == "effective-quotient") {
        r = quotient_task(p.skeletons.at(arg("skeleton")));
      } else if (t.kind == "iext") {
        r = iext_task(p.skeletons.at(arg("skeleton")));
      } else if (t.kind == "curvature") {
        r = curvature_task(p.morphisms.at(arg("morphism")));
      } else if (t.kind == "torsion") {
        r = torsion_task(p.morphisms.at(arg("morphism")));
      } else if (t.kind == "autos") {
        r = autos_task(p.morphisms.at(arg("morphism")), s);
      } else if (t.kind == "flat-autos") {
        r = flat_autos_task(p.kleins.at(arg("klein")), s);
      } else if (t.kind == "riemann-classify") {
        r = classify_task(p.morphisms.at(arg("morphism")), step, opt.tolerance_report);
      } else if (t.kind == "example-so3") {
        r = classify_task(examples::so3_into_affine(), step, opt.tolerance_report);
      }
      r.task = t.kind;
      r.name = t.name;
      for (const auto& [k, v] : t.args) r.inputs[k] = v;
      if (t.step) r.inputs["step"] = *t.step;
      if (opt.tolerance_report && r.tolerances.is_null()) r.tolerances = {{"exact", true}};
      out.push_back(std::move(r));
      if (t.kind == "validate" && out.back().summary.front() == "valid: no") {
        const auto v = validate(p.skeletons.at(arg("skeleton")));
        throw InvariantError(v.front().equation, v.front().detail);
      }
    }
  } catch (...) {
    if (done) *done = out;
    throw;
  }
  if (!opt.only_task.empty() && !matched) {
    if (done) *done = out;
    throw ParseError("--task", "no task named '" + opt.only_task + "'");
  }
  return out;
}

json to_json(const std::vector<Report>& reports) {
  json out = json::array();
  for (const Report& r : reports) {
    json bases = json::object();
    for (const auto& [k, vs] : r.bases) {
      json list = json::array();
      for (const Vec& v : vs) {
        json row = json::array();
        for (const Rational& x : v) row.push_back(to_string(x));
        list.push_back(row);
      }
      bases[k] = list;
    }
    json results = {{"dims", r.dims},       {"bases", bases},  {"basis_text", r.basis_text},
                    {"summary", r.summary}, {"notes", r.notes}, {"caveats", r.caveats}};
    if (!r.tolerances.is_null()) results["tolerances"] = r.tolerances;
    out.push_back({{"task", r.task}, {"name", r.name}, {"inputs", r.inputs}, {"results", results}});
  }
  return out;
}

std::string render_text(const std::vector<Report>& reports) {
  std::ostringstream os;
  for (const Report& r : reports) {
    os << "== " << r.name;
    if (r.name != r.task) os << " (" << r.task << ")";
    os << "\n";
    for (const auto& s : r.summary) os << s << "\n";
    if (!r.dims.empty()) os << "dimensions:\n";
    for (const auto& [k, d] : r.dims) os << "  " << k << ": " << d << "\n";
    for (const auto& [k, text] : r.basis_text) {
      if (text.empty()) continue;
      os << k << " basis:\n";
      for (const auto& b : text) os << "  " << b << "\n";
    }
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    for (const auto& c : r.caveats) os << "caveat: " << c << "\n";
    if (!r.tolerances.is_null()) {
      for (const auto& [k, v] : r.tolerances.items()) os << "tolerance " << k << ": " << v.dump() << "\n";
    }
  }
  return os.str();
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cartan geometry skeletons: extensions, automorphisms and compatible metrics", "cartan-skel"};
  app.require_subcommand(1);
  std::string input;
  RunOptions opt;
  bool as_json = false;
  auto* run = app.add_subcommand("run", "Run the tasks of a problem file, or the built-in example-so3");
  run->add_option("input", input, "Problem file (JSON) or example-so3")->required();
  run->add_flag("--json", as_json, "Emit a JSON report");
  run->add_option("--task", opt.only_task, "Only run tasks with this name or kind");
  run->add_flag("--tolerance-report", opt.tolerance_report, "Report numerical tolerances and residuals");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  std::vector<Report> done;
  auto emit = [&](const std::vector<Report>& rs) {
    if (as_json) {
      out << to_json(rs).dump(2) << "\n";
    } else {
      out << render_text(rs);
    }
  };
  try {
    Problem p;
    std::ifstream in(input);
    if (in) {
      std::stringstream buf;
      buf << in.rdbuf();
      p = parse_problem_text(buf.str());
    } else if (input == "example-so3") {
      p = example_so3_problem();
    } else {
      throw ParseError(input, "cannot open file");
    }
    emit(run_problem(p, opt, &done));
    return 0;
  } catch (const ParseError& e) {
    emit(done);
    err << "parse error at " << e.location() << ": " << e.what() + e.location().size() + 2 << "\n";
    return 2;
  } catch (const InvariantError& e) {
    emit(done);
    err << "invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const DimensionError& e) {
    emit(done);
    err << "invariant violated: shape: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    emit(done);
    err << "numeric failure: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace cartan::cli

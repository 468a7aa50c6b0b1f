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

// Problem files, task dispatch and reports for the cartan-skel tool.
//
// A problem file is JSON with "p/q" rational strings:
//
//   {
//     "format_version": "1",
//     "lie_algebras":  {name: {"builtin": "so3_plus_R", "n": 3}
//                            | {"dim": d, "labels", "brackets": [[a, b, v], ...]}
//                            | {"matrices": [M, ...], "labels"}},
//     "klein_models":  {name: {"algebra": name, "h": [v, ...] | "h_coordinates": [i, ...]}},
//     "skeletons":     {name: {"builtin": "euclidean" | "conformal" | "affine", "n": n}
//                            | {"klein": name}
//                            | {"affine": {"n", "linear_basis", "labels", "components"}}
//                            | {"extended": {"base": name, "s": name}}
//                            | {"k_dim", "l", "l_embed", "drho", "component_reps", "k_labels"}},
//     "morphisms":     {name: {"source": klein, "target": skeleton, "alpha": M, "dj": M}},
//     "s_subspaces":   {name: {"skeleton": name, "generators": [M, ...] | "linear": [P, ...]}},
//     "tasks":         [{"kind": ..., "name": ..., argument names}, ...]
//   }
//
// Matrices are lists of rows. Task arguments: validate, kernel,
// effective-quotient and iext take "skeleton"; curvature, torsion and
// riemann-classify take "morphism"; autos takes "morphism" and an optional
// "s"; flat-autos takes "klein" and an optional "s"; example-so3 takes none.

#ifndef CARTAN_CLI_HPP
#define CARTAN_CLI_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartan/riemann.hpp"

namespace cartan::cli {

struct SSubspace {
  std::string skeleton;
  Subspace s;  // in gl(k)
};

struct Task {
  std::string kind;
  std::string name;  // defaults to the kind
  std::map<std::string, std::string> args;
  std::optional<double> step;
};

struct Problem {
  std::string format_version;
  std::map<std::string, LieAlgebra> algebras;
  std::map<std::string, KleinModel> kleins;
  std::map<std::string, Skeleton> skeletons;
  std::map<std::string, SkeletonMorphism> morphisms;
  std::map<std::string, SSubspace> s_subspaces;
  std::vector<Task> tasks;
};

/// Throws ParseError with a "$.skeletons.E3.drho[0]" style location.
Problem parse_problem(const nlohmann::json& doc);
Problem parse_problem_text(const std::string& text);

struct Report {
  std::string task;  // kind
  std::string name;
  nlohmann::json inputs = nlohmann::json::object();
  std::map<std::string, std::size_t> dims;
  std::map<std::string, std::vector<Vec>> bases;
  std::map<std::string, std::vector<std::string>> basis_text;  // labeled rendering of bases
  std::vector<std::string> summary;
  std::vector<std::string> notes;
  std::vector<std::string> caveats;
  nlohmann::json tolerances;  // null unless requested
};

struct RunOptions {
  std::string only_task;  // matches a task name or kind
  bool tolerance_report = false;
};

/// Runs the tasks in file order. Throws on the first failing task; `done`
/// receives the reports finished before it.
std::vector<Report> run_problem(const Problem& p, const RunOptions& opt, std::vector<Report>* done = nullptr);

/// The built-in SO(2) example as a problem with a single example-so3 task.
Problem example_so3_problem();

nlohmann::json to_json(const std::vector<Report>& reports);
std::string render_text(const std::vector<Report>& reports);

/// Entry point behind `cartan-skel`; returns the exit code (0 ok, 2 parse,
/// 3 invariant, 4 numeric).
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cartan::cli

#endif  // CARTAN_CLI_HPP

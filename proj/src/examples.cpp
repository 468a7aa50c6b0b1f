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

#include "cartan/examples.hpp"

namespace cartan::examples {

Mat rotation_generator() { return elementary(3, 1, 0) - elementary(3, 0, 1); }

KleinModel so3_klein() {
  return KleinModel::make(builtin("so3_plus_R", 3).algebra, Subspace::coordinate(4, {2}));
}

SkeletonMorphism so3_into_affine() {
  Skeleton target = affine_skeleton(3, gl_basis(3), gl_labels(3));
  Vec j = concat(zero_vec(3), rotation_generator().flatten());
  Mat alpha = Mat::from_cols({unit_vec(12, 0), unit_vec(12, 1), j, unit_vec(12, 2)}, 12);
  Mat dj = Mat::from_cols({rotation_generator().flatten()}, 9);
  return {so3_klein(), target, alpha, dj};
}

SkeletonMorphism so3_into_hol() {
  Skeleton target = affine_skeleton(3, {rotation_generator()}, {"E21-E12"});
  Mat alpha = Mat::from_cols({unit_vec(4, 0), unit_vec(4, 1), unit_vec(4, 3), unit_vec(4, 2)}, 4);
  return {so3_klein(), target, alpha, Mat::identity(1)};
}

}  // namespace cartan::examples

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

// The so(3) + R model over the Euclidean plane with holonomy SO(2): a Klein
// model (so(3) + R, so(2)) extended into affine(3).

#ifndef CARTAN_EXAMPLES_HPP
#define CARTAN_EXAMPLES_HPP

#include "cartan/extension.hpp"

namespace cartan::examples {

/// E21 - E12 in gl(3).
Mat rotation_generator();

/// (so3_plus_R, span{X3}).
KleinModel so3_klein();

/// X1 -> t1, X2 -> t2, X3 -> E21 - E12, x -> t3 into affine(3).
SkeletonMorphism so3_into_affine();

/// The same map into (R^3 + so(2), SO(2)).
SkeletonMorphism so3_into_hol();

}  // namespace cartan::examples

#endif  // CARTAN_EXAMPLES_HPP

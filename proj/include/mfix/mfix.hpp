//  Copyright 2026 The mfix Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.


#pragma once

#include "mfix/axioms.hpp"
#include "mfix/contraction.hpp"
#include "mfix/distance_space.hpp"
#include "mfix/error.hpp"
#include "mfix/fixpoint.hpp"
#include "mfix/fredholm.hpp"
#include "mfix/instances/entourage.hpp"
#include "mfix/instances/example_spaces.hpp"
#include "mfix/instances/grid_function.hpp"
#include "mfix/instances/power.hpp"
#include "mfix/instances/reals.hpp"
#include "mfix/ordered_monoid.hpp"
#include "mfix/report.hpp"
#include "mfix/spectral.hpp"

//  Copyright 2026 The fintop Authors
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

#ifndef FINTOP_FINTOP_HPP
#define FINTOP_FINTOP_HPP

#include "fintop/action.hpp"
#include "fintop/completion.hpp"
#include "fintop/dot.hpp"
#include "fintop/enumeration.hpp"
#include "fintop/error.hpp"
#include "fintop/json_io.hpp"
#include "fintop/ktheory.hpp"
#include "fintop/lattice.hpp"
#include "fintop/point_set.hpp"
#include "fintop/space.hpp"
#include "fintop/spaces.hpp"
#include "fintop/topology.hpp"

#endif  // FINTOP_FINTOP_HPP

// Copyright 2026 The GGQ Authors
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


#pragma once

#include "ggq/error.hpp"
#include "ggq/value.hpp"
#include "ggq/graph.hpp"
#include "ggq/type_regex.hpp"
#include "ggq/predicate.hpp"
#include "ggq/query.hpp"
#include "ggq/io.hpp"
#include "ggq/matcher.hpp"
#include "ggq/refinement.hpp"
#include "ggq/dot.hpp"
#include "ggq/fixtures.hpp"

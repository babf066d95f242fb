/*
 * Copyright 2026 The submine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef SUBMINE_SUBMINE_HPP
#define SUBMINE_SUBMINE_HPP

#include "submine/apps/gmatch.hpp"
#include "submine/apps/max_clique.hpp"
#include "submine/apps/maximal_cliques.hpp"
#include "submine/apps/quasi_clique.hpp"
#include "submine/apps/triangle.hpp"
#include "submine/engine.hpp"
#include "submine/generators.hpp"
#include "submine/local_table.hpp"
#include "submine/run_config.hpp"

#endif  // SUBMINE_SUBMINE_HPP

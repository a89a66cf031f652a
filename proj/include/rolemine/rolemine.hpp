// Copyright 2026 The rolemine Authors
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

#include "rolemine/core.hpp"
#include "rolemine/datasets.hpp"
#include "rolemine/lattice.hpp"
#include "rolemine/metrics.hpp"
#include "rolemine/miner_constrained.hpp"
#include "rolemine/miner_crm.hpp"
#include "rolemine/oracle.hpp"
#include "rolemine/perm_set.hpp"
#include "rolemine/pipeline.hpp"
#include "rolemine/random.hpp"

// Copyright 2026 The shiftsched Authors
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

#include "shiftsched/core.hpp"
#include "shiftsched/count_search.hpp"
#include "shiftsched/erlang.hpp"
#include "shiftsched/exact_model.hpp"
#include "shiftsched/generators.hpp"
#include "shiftsched/io.hpp"
#include "shiftsched/joint_search.hpp"
#include "shiftsched/metrics.hpp"
#include "shiftsched/model.hpp"
#include "shiftsched/multi_phase.hpp"
#include "shiftsched/penalty_tuner.hpp"
#include "shiftsched/phases.hpp"

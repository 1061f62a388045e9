// Copyright 2026 The fkpressure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "fkp/analysis.hpp"
#include "fkp/bowen.hpp"
#include "fkp/dynamics.hpp"
#include "fkp/errors.hpp"
#include "fkp/fk_metric.hpp"
#include "fkp/fk_pseudo_orbit.hpp"
#include "fkp/independent_set.hpp"
#include "fkp/log_space.hpp"
#include "fkp/pseudo_orbit.hpp"
#include "fkp/report.hpp"
#include "fkp/version.hpp"

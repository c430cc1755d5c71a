// Copyright 2026 The fareystat Authors
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

#include "fareystat/equidist.hpp"
#include "fareystat/exact.hpp"
#include "fareystat/farey.hpp"
#include "fareystat/geometry.hpp"
#include "fareystat/limits1d.hpp"
#include "fareystat/numtheory.hpp"
#include "fareystat/parallel.hpp"
#include "fareystat/quadrature.hpp"
#include "fareystat/report.hpp"
#include "fareystat/statistics.hpp"
#include "fareystat/test_set.hpp"
#include "fareystat/version.hpp"

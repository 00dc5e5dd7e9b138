// Copyright 2026 The wva Authors
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

#include "wva/angle.hpp"
#include "wva/control.hpp"
#include "wva/core.hpp"
#include "wva/correlations.hpp"
#include "wva/io.hpp"
#include "wva/meter.hpp"
#include "wva/multiqubit.hpp"
#include "wva/oracle.hpp"
#include "wva/parallel.hpp"
#include "wva/pauli.hpp"
#include "wva/states.hpp"
#include "wva/sweep.hpp"
#include "wva/table.hpp"
#include "wva/weakvalue.hpp"

// Copyright 2026 The QRAC Authors
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

// Everything in one include.

#pragma once

#include "qrac/analysis.hpp"
#include "qrac/bits.hpp"
#include "qrac/circuit.hpp"
#include "qrac/circuit_io.hpp"
#include "qrac/codebook.hpp"
#include "qrac/decoder.hpp"
#include "qrac/dense.hpp"
#include "qrac/json_io.hpp"
#include "qrac/pauli.hpp"
#include "qrac/rng.hpp"
#include "qrac/tolerances.hpp"
#include "qrac/verify.hpp"

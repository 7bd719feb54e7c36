// Copyright 2026 The oraclopt Authors. All Rights Reserved.
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

#ifndef ORACLOPT_ORACLOPT_HPP
#define ORACLOPT_ORACLOPT_HPP

#include "oraclopt/adversary.hpp"
#include "oraclopt/benchmarks.hpp"
#include "oraclopt/certificates.hpp"
#include "oraclopt/core.hpp"
#include "oraclopt/errors.hpp"
#include "oraclopt/harness.hpp"
#include "oraclopt/optimizer.hpp"
#include "oraclopt/oracle.hpp"

#endif  // ORACLOPT_ORACLOPT_HPP

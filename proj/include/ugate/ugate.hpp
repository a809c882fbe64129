// Copyright 2026 The ugate Authors
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

// Umbrella header for the whole library, including the command line.

#include "ugate/errors.hpp"
#include "ugate/random.hpp"
#include "ugate/exact_algebra.hpp"
#include "ugate/exact_json.hpp"
#include "ugate/su4_generation.hpp"
#include "ugate/numeric_lie.hpp"
#include "ugate/sk_compiler.hpp"
#include "ugate/numeric_json.hpp"
#include "ugate/number_field.hpp"
#include "ugate/number_field_json.hpp"
#include "ugate/cli.hpp"

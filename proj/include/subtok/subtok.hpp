// Copyright 2026 The subtok Authors
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

// Convenience header pulling in the whole library.

#pragma once

#include "subtok/align.hpp"
#include "subtok/boundary.hpp"
#include "subtok/common.hpp"
#include "subtok/encode.hpp"
#include "subtok/gold.hpp"
#include "subtok/mixture.hpp"
#include "subtok/model.hpp"
#include "subtok/model_store.hpp"
#include "subtok/normalize.hpp"
#include "subtok/replace.hpp"
#include "subtok/rng.hpp"
#include "subtok/sampling.hpp"
#include "subtok/train.hpp"
#include "subtok/unicode.hpp"

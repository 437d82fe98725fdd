// Copyright 2026 The nlv Authors
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

// Umbrella header.

#ifndef NLV_NLV_HPP_
#define NLV_NLV_HPP_

#include "nlv/classical.hpp"
#include "nlv/entangled.hpp"
#include "nlv/error.hpp"
#include "nlv/game.hpp"
#include "nlv/linalg.hpp"
#include "nlv/measurement.hpp"
#include "nlv/moments.hpp"
#include "nlv/parallel.hpp"
#include "nlv/protocols.hpp"
#include "nlv/pvm_search.hpp"
#include "nlv/quantum.hpp"
#include "nlv/rng.hpp"
#include "nlv/serialize.hpp"
#include "nlv/synchronous.hpp"
#include "nlv/tm.hpp"

namespace nlv {
inline constexpr const char* kVersion = "0.1.0";
}  // namespace nlv

#endif  // NLV_NLV_HPP_

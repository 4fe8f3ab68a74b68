// Copyright 2026 The pidkit Authors
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

#ifndef PIDKIT_PIDKIT_HPP_
#define PIDKIT_PIDKIT_HPP_

#include "pidkit/builders.hpp"
#include "pidkit/capacity.hpp"
#include "pidkit/converse.hpp"
#include "pidkit/error.hpp"
#include "pidkit/field.hpp"
#include "pidkit/lp.hpp"
#include "pidkit/matrix.hpp"
#include "pidkit/rational.hpp"
#include "pidkit/scheme.hpp"
#include "pidkit/serialize.hpp"
#include "pidkit/simulator.hpp"
#include "pidkit/storage.hpp"
#include "pidkit/verifier.hpp"

#endif  // PIDKIT_PIDKIT_HPP_

// Copyright 2026 The IIM Hardening Authors.
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

#ifndef IIM_IIM_HPP
#define IIM_IIM_HPP

#include "iim/cascade.hpp"
#include "iim/entity.hpp"
#include "iim/error.hpp"
#include "iim/experiment.hpp"
#include "iim/hardening.hpp"
#include "iim/idr_format.hpp"
#include "iim/ilp.hpp"
#include "iim/netgen.hpp"
#include "iim/network.hpp"
#include "iim/vulnerability.hpp"

#endif  // IIM_IIM_HPP

//
// Copyright (c) 2026 The nutq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef NUTQ_NUTQ_HPP
#define NUTQ_NUTQ_HPP

#include "nutq/bounds.hpp"
#include "nutq/closed_form.hpp"
#include "nutq/eval.hpp"
#include "nutq/quadrature.hpp"
#include "nutq/selfcheck.hpp"
#include "nutq/series.hpp"
#include "nutq/special.hpp"
#include "nutq/sweep.hpp"
#include "nutq/types.hpp"

#endif  // NUTQ_NUTQ_HPP

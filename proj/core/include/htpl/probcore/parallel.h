// Copyright 2026 The HTPL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HTPL_PROBCORE_PARALLEL_H_
#define HTPL_PROBCORE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace htpl {

// Worker count: HTPL_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int WorkerCount();

// Calls body(i) for i in [0, count) across WorkerCount() threads. Indices are
// handed out in contiguous blocks; body must only write to state owned by i.
void ParallelFor(size_t count, const std::function<void(size_t)>& body);

}  // namespace htpl

#endif  // HTPL_PROBCORE_PARALLEL_H_

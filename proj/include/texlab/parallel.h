// Copyright 2026 The texlab Authors
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

#ifndef TEXLAB_PARALLEL_H_
#define TEXLAB_PARALLEL_H_

#include <functional>

namespace texlab {

// Worker count: TEXLAB_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int worker_count();

// Runs body(i) for i in [0, n). Iterations must be independent; results are
// identical for any worker count.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace texlab

#endif  // TEXLAB_PARALLEL_H_

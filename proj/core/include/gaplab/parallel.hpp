/*
 *            Copyright 2026 The gaplab Developers
 *
 *      Licensed under the Apache License, Version 2.0 (the "License")
 *
 * You may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *              http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */


#pragma once
#ifndef GAPLAB_PARALLEL_HPP
#define GAPLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace gaplab {

// Worker count from GAPLAB_THREADS, else the hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, n) on a pool of workers pulling indices from a
// shared counter.  Results must be written to per-index slots; the first
// exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

}  // namespace gaplab

#endif

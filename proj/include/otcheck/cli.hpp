/*
 * Copyright (c) 2026, The otcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OTCHECK_CLI_HPP_
#define OTCHECK_CLI_HPP_

#include <iosfwd>

namespace otcheck {

/// Exit codes are the machine contract for verdicts.
inline constexpr int kExitConverged = 0;  // converged, property holds, replay agrees
inline constexpr int kExitDiverged = 1;   // counterexample or property violation
inline constexpr int kExitUsage = 2;      // bad flags, config or input file
inline constexpr int kExitAborted = 3;    // state budget exhausted

/// Runs the checker on the given arguments (argv[0] is the program name).
/// Human output goes to `out`, diagnostics to `err`; --out writes JSON.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace otcheck

#endif  // OTCHECK_CLI_HPP_

// include/vcleak/cli.hpp

// Copyright 2026  The vcleak Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VCLEAK_CLI_HPP_
#define VCLEAK_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "vcleak/error.hpp"

namespace vcleak::cli {

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // validation or evaluation failure
inline constexpr int kExitIo = 2;      // I/O or usage error

/// I/O-class codes map to kExitIo, everything else to kExitDomain.
int exit_status_for(ErrorCode code);

/// Runs `vcleak <subcommand> ...`. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

}  // namespace vcleak::cli

#endif  // VCLEAK_CLI_HPP_

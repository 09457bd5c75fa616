// include/vcleak/error.hpp

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

#ifndef VCLEAK_ERROR_HPP_
#define VCLEAK_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace vcleak {

// Stable, machine-readable failure categories. The string form returned by
// error_code_name() is part of the CLI contract (printed on stderr).
enum class ErrorCode {
  kFileNotFound,
  kIoError,
  kMalformedManifest,
  kUnresolvableReference,
  kDimensionMismatch,
  kCountMismatch,
  kNonFiniteComponent,
  kZeroNorm,
  kInvalidCorpus,
  kUnknownSpeaker,
  kUnknownAttribute,
  kEmptySubset,
  kDegenerateCentroid,
  kSameEntity,
  kEmptySample,
  kOutOfRange,
  kEdgesMismatch,
  kInfeasible,
  kConversionMismatch,
  kMissingConversion,
  kDegenerateMean,
  kInvalidArgument,
  kOutputExists,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace vcleak

#endif  // VCLEAK_ERROR_HPP_

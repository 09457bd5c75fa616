// src/error.cpp

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

#include "vcleak/error.hpp"

namespace vcleak {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound: return "file-not-found";
    case ErrorCode::kIoError: return "io-error";
    case ErrorCode::kMalformedManifest: return "malformed-manifest";
    case ErrorCode::kUnresolvableReference: return "unresolvable-reference";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kCountMismatch: return "count-mismatch";
    case ErrorCode::kNonFiniteComponent: return "non-finite-component";
    case ErrorCode::kZeroNorm: return "zero-norm";
    case ErrorCode::kInvalidCorpus: return "invalid-corpus";
    case ErrorCode::kUnknownSpeaker: return "unknown-speaker";
    case ErrorCode::kUnknownAttribute: return "unknown-attribute";
    case ErrorCode::kEmptySubset: return "empty-subset";
    case ErrorCode::kDegenerateCentroid: return "degenerate-centroid";
    case ErrorCode::kSameEntity: return "same-entity";
    case ErrorCode::kEmptySample: return "empty-sample";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kEdgesMismatch: return "edges-mismatch";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kConversionMismatch: return "conversion-mismatch";
    case ErrorCode::kMissingConversion: return "missing-conversion";
    case ErrorCode::kDegenerateMean: return "degenerate-mean";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kOutputExists: return "output-exists";
  }
  return "unknown";
}

}  // namespace vcleak

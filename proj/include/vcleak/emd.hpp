// include/vcleak/emd.hpp

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

#ifndef VCLEAK_EMD_HPP_
#define VCLEAK_EMD_HPP_

#include <cstddef>
#include <vector>

#include "vcleak/histogram.hpp"

namespace vcleak {

/// Ground-distance unit. kSimilarity measures |center_i - center_j| in
/// cosine-similarity units; kBinIndex measures |i - j|.
enum class EmdUnits { kSimilarity, kBinIndex };

/// 1-Wasserstein distance between two unit-mass histograms on the same
/// edges, via the cumulative-distribution closed form:
///
///   EMD = width * sum_{i < nbins-1} |CDF_a(i) - CDF_b(i)|
///
/// Throws kEdgesMismatch when the histograms do not share BinEdges.
double emd_1d(const Histogram &a, const Histogram &b,
              EmdUnits units = EmdUnits::kSimilarity);

struct Flow {
  std::size_t from_bin;
  std::size_t to_bin;
  double mass;
};

struct TransportPlan {
  std::vector<Flow> flows;
  double cost = 0.0;
};

/// Exact balanced transport between the same two histograms, solved by
/// monotone (north-west corner) matching, which is optimal for convex 1-D
/// ground costs. Shares no code with emd_1d. Throws kEdgesMismatch, or
/// kInfeasible when either mass vector does not sum to 1 within 1e-9.
TransportPlan emd_transport(const Histogram &a, const Histogram &b,
                            EmdUnits units = EmdUnits::kSimilarity);

}  // namespace vcleak

#endif  // VCLEAK_EMD_HPP_

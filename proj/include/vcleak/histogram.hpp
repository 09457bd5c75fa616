// include/vcleak/histogram.hpp

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

#ifndef VCLEAK_HISTOGRAM_HPP_
#define VCLEAK_HISTOGRAM_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "vcleak/metric.hpp"

namespace vcleak {

inline constexpr std::size_t kDefaultBins = 50;

/// nbins equal-width bins over [lo, hi]; the last bin is right-closed.
class BinEdges {
 public:
  /// Throws kInvalidArgument unless hi > lo (both finite) and nbins >= 1.
  BinEdges(double lo, double hi, std::size_t nbins = kDefaultBins);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t nbins() const { return nbins_; }
  double width() const { return width_; }
  double edge(std::size_t i) const;    // i in [0, nbins]; edge(nbins) == hi
  double center(std::size_t i) const;  // i in [0, nbins)

  /// Bin holding v; kOutOfRange when v lies outside [lo, hi].
  std::size_t bin_of(double v) const;

  bool operator==(const BinEdges &) const = default;

 private:
  double lo_;
  double hi_;
  std::size_t nbins_;
  double width_;
};

struct Histogram {
  BinEdges edges;
  std::vector<double> mass;  // (count in bin i) / total_count
  std::size_t total_count = 0;
};

/// Edges spanning the union of all sample values. A zero-width range is
/// widened to [v - 5e-7, v + 5e-7].
BinEdges shared_edges(std::span<const SimilaritySample> samples,
                      std::size_t nbins = kDefaultBins);

Histogram build_histogram(const SimilaritySample &sample, const BinEdges &edges);

}  // namespace vcleak

#endif  // VCLEAK_HISTOGRAM_HPP_

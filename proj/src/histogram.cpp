// src/histogram.cpp

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

#include "vcleak/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vcleak/error.hpp"

namespace vcleak {

namespace {
constexpr double kDegenerateRange = 1e-6;
}

BinEdges::BinEdges(double lo, double hi, std::size_t nbins)
    : lo_(lo), hi_(hi), nbins_(nbins), width_(0.0) {
  if (nbins == 0)
    throw Error(ErrorCode::kInvalidArgument, "histogram needs at least one bin");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo))
    throw Error(ErrorCode::kInvalidArgument,
                "bin range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                    "] is empty or non-finite");
  width_ = (hi - lo) / static_cast<double>(nbins);
  if (!(width_ > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "bin width underflows to zero");
}

double BinEdges::edge(std::size_t i) const {
  if (i >= nbins_) return hi_;
  return lo_ + static_cast<double>(i) * width_;
}

double BinEdges::center(std::size_t i) const {
  return lo_ + (static_cast<double>(i) + 0.5) * width_;
}

std::size_t BinEdges::bin_of(double v) const {
  if (!(v >= lo_ && v <= hi_))
    throw Error(ErrorCode::kOutOfRange,
                "value " + std::to_string(v) + " outside bin range [" +
                    std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  // Rounding in (v - lo) / width can push values just below hi into index
  // nbins; the last bin is closed on the right anyway.
  const auto index = static_cast<std::size_t>(std::floor((v - lo_) / width_));
  return std::min(index, nbins_ - 1);
}

BinEdges shared_edges(std::span<const SimilaritySample> samples,
                      std::size_t nbins) {
  if (nbins < 2)
    throw Error(ErrorCode::kInvalidArgument,
                "shared edges need nbins >= 2, got " + std::to_string(nbins));
  if (samples.empty())
    throw Error(ErrorCode::kEmptySample, "no samples to bin");
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const auto &s : samples) {
    if (s.values.empty())
      throw Error(ErrorCode::kEmptySample,
                  "sample " + std::string(sample_label_name(s.label)) + " (" +
                      s.left_id + ", " + s.right_id + ") is empty");
    const auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
    if (first) {
      lo = *mn;
      hi = *mx;
      first = false;
    } else {
      lo = std::min(lo, *mn);
      hi = std::max(hi, *mx);
    }
  }
  if (hi == lo) {
    const double v = lo;
    lo = v - 0.5 * kDegenerateRange;
    hi = v + 0.5 * kDegenerateRange;
  }
  return BinEdges(lo, hi, nbins);
}

Histogram build_histogram(const SimilaritySample &sample, const BinEdges &edges) {
  if (sample.values.empty())
    throw Error(ErrorCode::kEmptySample, "cannot histogram an empty sample");
  std::vector<std::size_t> counts(edges.nbins(), 0);
  for (double v : sample.values) ++counts[edges.bin_of(v)];
  Histogram h{edges, std::vector<double>(edges.nbins(), 0.0), sample.count()};
  const double total = static_cast<double>(sample.count());
  for (std::size_t i = 0; i < counts.size(); ++i)
    h.mass[i] = static_cast<double>(counts[i]) / total;
  return h;
}

}  // namespace vcleak

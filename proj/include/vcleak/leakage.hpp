// include/vcleak/leakage.hpp

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

#ifndef VCLEAK_LEAKAGE_HPP_
#define VCLEAK_LEAKAGE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcleak/corpus.hpp"
#include "vcleak/emd.hpp"
#include "vcleak/error.hpp"
#include "vcleak/histogram.hpp"
#include "vcleak/metric.hpp"

namespace vcleak {

inline constexpr double kDefaultTau = 0.33;

struct EmdTriple {
  double br = 0.0;  // EMD(B, R)
  double rg = 0.0;  // EMD(R, G)
  double bg = 0.0;  // EMD(B, G)
  bool operator==(const EmdTriple &) const = default;
};

enum class Scenario { kIndeterminate, kNoLeakage, kLeakage, kDegenerate };

std::string_view scenario_name(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);

struct ScenarioResult {
  Scenario label = Scenario::kIndeterminate;
  std::string rationale;
};

/// B = cos(P, D), R = cos(P', D), G = cos(P', P).
struct SimilarityTriple {
  SimilaritySample b;
  SimilaritySample r;
  SimilaritySample g;
};

/// Builds B, R and G for target P, source D and conversion P'. Throws
/// kMissingConversion for an unknown conversion id and kConversionMismatch
/// when the conversion's endpoints are not (source, target).
SimilarityTriple assemble_triple(const Corpus &corpus, std::string_view target,
                                 std::string_view source,
                                 std::string_view conversion);

/// EMD(B,G) / EMD(R,G); +infinity when EMD(R,G) < 1e-12.
double leakage_ratio(const EmdTriple &triple);

/// Reads R against the prior B and the ground truth G:
///   degenerate   EMD(B,G) < 1e-9, or both conditions below hold
///   no-leakage   EMD(B,R) <= tau * EMD(B,G)   (R sits on B)
///   leakage      EMD(R,G) <= tau * EMD(B,G)   (R sits on G)
///   indeterminate otherwise
ScenarioResult classify(const EmdTriple &triple, double tau = kDefaultTau);

enum class RangePolicy { kShared, kFixed };  // kFixed = [-1, 1]

struct EvalConfig {
  std::size_t nbins = kDefaultBins;
  double tau = kDefaultTau;
  RangePolicy range = RangePolicy::kShared;
  EmdUnits units = EmdUnits::kSimilarity;
};

/// Throws kInvalidArgument unless nbins >= 2 and tau in (0, 1).
void check_config(const EvalConfig &config);

struct Measurement {
  BinEdges edges;
  Histogram b;
  Histogram r;
  Histogram g;
  EmdTriple triple;
  double L = 0.0;
  ScenarioResult scenario;
};

/// Histograms over common edges, the three EMDs, L and the scenario.
Measurement measure(const SimilarityTriple &samples, const EvalConfig &config = {});

struct LeakageReport {
  std::string target;
  std::string source;
  std::string conversion;
  std::size_t n = 1;  // size of the subset the source was drawn from
  EmdTriple triple;
  double L = 0.0;
  Scenario scenario = Scenario::kIndeterminate;
  double tau = kDefaultTau;
  std::size_t nbins = kDefaultBins;
  BinEdges edges{0.0, 1.0, kDefaultBins};
  std::vector<double> hist_b;
  std::vector<double> hist_r;
  std::vector<double> hist_g;

  bool operator==(const LeakageReport &) const = default;
};

LeakageReport evaluate(const Corpus &corpus, std::string_view target,
                       std::string_view source, std::string_view conversion,
                       const EvalConfig &config = {});

struct Mismatch {
  std::string attribute;
  std::string value;
  std::string label;  // defaults to "attribute=value"
};

struct ExperimentRow {
  std::string label;
  std::string target;
  std::string source;  // empty when selection failed before D was known
  std::size_t n = 0;   // source subset size
  std::optional<LeakageReport> report;
  std::optional<Error> error;
};

inline constexpr std::string_view kMatchedLabel = "matched";

/// Selects the proximal target P of `target_filter`, then for every mismatch
/// (target_filter with one attribute replaced) the proximal source D, and
/// evaluates the corpus conversion D -> P. A matched-control row follows,
/// drawing D from the target subset without P. Row failures are captured
/// per row; a failing target selection throws.
std::vector<ExperimentRow> run_experiment(const Corpus &corpus,
                                          const AttributePredicate &target_filter,
                                          const std::vector<Mismatch> &mismatches,
                                          const EvalConfig &config = {});

}  // namespace vcleak

#endif  // VCLEAK_LEAKAGE_HPP_

// src/leakage.cpp

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

#include "vcleak/leakage.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace vcleak {

namespace {

constexpr double kInfiniteRatioBelow = 1e-12;
constexpr double kDegenerateSpread = 1e-9;

std::string fmt4(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << v;
  return os.str();
}

const Speaker &speaker_or_throw(const Corpus &corpus, std::string_view id) {
  const Speaker *s = corpus.find_speaker(id);
  if (!s) throw Error(ErrorCode::kUnknownSpeaker,
                      "unknown speaker '" + std::string(id) + "'");
  return *s;
}

LeakageReport report_from(const Measurement &m, std::string_view target,
                          std::string_view source, std::string_view conversion,
                          std::size_t n, const EvalConfig &config) {
  LeakageReport r;
  r.target = std::string(target);
  r.source = std::string(source);
  r.conversion = std::string(conversion);
  r.n = n;
  r.triple = m.triple;
  r.L = m.L;
  r.scenario = m.scenario.label;
  r.tau = config.tau;
  r.nbins = config.nbins;
  r.edges = m.edges;
  r.hist_b = m.b.mass;
  r.hist_r = m.r.mass;
  r.hist_g = m.g.mass;
  return r;
}

ExperimentRow evaluate_row(const Corpus &corpus, std::string label,
                           const std::string &target, const SpeakerSubset &pool,
                           const EvalConfig &config) {
  ExperimentRow row;
  row.label = std::move(label);
  row.target = target;
  row.n = pool.n();
  try {
    row.source = select_proximal(pool, corpus);
    const ConversionSet *conv = corpus.find_conversion_between(row.source, target);
    if (!conv)
      throw Error(ErrorCode::kMissingConversion,
                  "corpus has no conversion for (D=" + row.source +
                      ", P=" + target + ")");
    row.report = evaluate(corpus, target, row.source, conv->id, config);
    row.report->n = pool.n();
  } catch (const Error &e) {
    row.error = e;
  }
  return row;
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kIndeterminate: return "indeterminate";
    case Scenario::kNoLeakage: return "no-leakage";
    case Scenario::kLeakage: return "leakage";
    case Scenario::kDegenerate: return "degenerate";
  }
  return "indeterminate";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::kIndeterminate, Scenario::kNoLeakage,
                     Scenario::kLeakage, Scenario::kDegenerate})
    if (scenario_name(s) == name) return s;
  return std::nullopt;
}

SimilarityTriple assemble_triple(const Corpus &corpus, std::string_view target,
                                 std::string_view source,
                                 std::string_view conversion) {
  const ConversionSet *conv = corpus.find_conversion(conversion);
  if (!conv)
    throw Error(ErrorCode::kMissingConversion,
                "unknown conversion '" + std::string(conversion) + "'");
  if (conv->source_id != source || conv->target_id != target)
    throw Error(ErrorCode::kConversionMismatch,
                "conversion '" + conv->id + "' maps " + conv->source_id +
                    " -> " + conv->target_id + ", requested " +
                    std::string(source) + " -> " + std::string(target));
  const Speaker &p = speaker_or_throw(corpus, target);
  const Speaker &d = speaker_or_throw(corpus, source);
  return {pair_similarities(view_of(p), view_of(d), SampleLabel::kB),
          pair_similarities(view_of(*conv), view_of(d), SampleLabel::kR),
          pair_similarities(view_of(*conv), view_of(p), SampleLabel::kG)};
}

double leakage_ratio(const EmdTriple &triple) {
  if (triple.rg < kInfiniteRatioBelow)
    return std::numeric_limits<double>::infinity();
  return triple.bg / triple.rg;
}

ScenarioResult classify(const EmdTriple &t, double tau) {
  const double threshold = tau * t.bg;
  const bool near_prior = t.br <= threshold;
  const bool near_truth = t.rg <= threshold;
  if (t.bg < kDegenerateSpread)
    return {Scenario::kDegenerate,
            "EMD(B,G) = " + fmt4(t.bg) + " leaves no room between prior and truth"};
  if (near_prior && near_truth)
    return {Scenario::kDegenerate,
            "R within tau of both B and G; inconsistent triple"};
  if (near_prior)
    return {Scenario::kNoLeakage, "EMD(B,R) = " + fmt4(t.br) + " <= tau * " +
                                      fmt4(t.bg) + "; R resembles B"};
  if (near_truth)
    return {Scenario::kLeakage, "EMD(R,G) = " + fmt4(t.rg) + " <= tau * " +
                                    fmt4(t.bg) + "; R resembles G"};
  return {Scenario::kIndeterminate,
          "R is more than tau * EMD(B,G) from both B and G; more data needed"};
}

void check_config(const EvalConfig &config) {
  if (config.nbins < 2)
    throw Error(ErrorCode::kInvalidArgument,
                "nbins must be >= 2, got " + std::to_string(config.nbins));
  if (!(config.tau > 0.0 && config.tau < 1.0))
    throw Error(ErrorCode::kInvalidArgument,
                "tau must lie in (0, 1), got " + std::to_string(config.tau));
}

Measurement measure(const SimilarityTriple &samples, const EvalConfig &config) {
  check_config(config);
  const SimilaritySample all[] = {samples.b, samples.r, samples.g};
  const BinEdges edges = config.range == RangePolicy::kFixed
                             ? BinEdges(-1.0, 1.0, config.nbins)
                             : shared_edges(all, config.nbins);
  Measurement m{edges,
                build_histogram(samples.b, edges),
                build_histogram(samples.r, edges),
                build_histogram(samples.g, edges),
                {},
                0.0,
                {}};
  m.triple.br = emd_1d(m.b, m.r, config.units);
  m.triple.rg = emd_1d(m.r, m.g, config.units);
  m.triple.bg = emd_1d(m.b, m.g, config.units);
  m.L = leakage_ratio(m.triple);
  m.scenario = classify(m.triple, config.tau);
  return m;
}

LeakageReport evaluate(const Corpus &corpus, std::string_view target,
                       std::string_view source, std::string_view conversion,
                       const EvalConfig &config) {
  check_config(config);
  const SimilarityTriple samples =
      assemble_triple(corpus, target, source, conversion);
  return report_from(measure(samples, config), target, source, conversion, 1,
                     config);
}

std::vector<ExperimentRow> run_experiment(const Corpus &corpus,
                                          const AttributePredicate &target_filter,
                                          const std::vector<Mismatch> &mismatches,
                                          const EvalConfig &config) {
  check_config(config);
  const SpeakerSubset targets = filter_speakers(corpus, target_filter);
  const std::string target = select_proximal(targets, corpus);

  std::vector<ExperimentRow> rows;
  rows.reserve(mismatches.size() + 1);
  for (const auto &mm : mismatches) {
    std::string label =
        mm.label.empty() ? mm.attribute + "=" + mm.value : mm.label;
    AttributePredicate source_filter = target_filter;
    source_filter[mm.attribute] = mm.value;
    try {
      const SpeakerSubset pool = filter_speakers(corpus, source_filter);
      rows.push_back(evaluate_row(corpus, std::move(label), target, pool, config));
    } catch (const Error &e) {
      ExperimentRow row;
      row.label = std::move(label);
      row.target = target;
      row.error = e;
      rows.push_back(std::move(row));
    }
  }

  SpeakerSubset matched{targets.filter + " without " + target, {}};
  for (const auto &id : targets.members)
    if (id != target) matched.members.push_back(id);
  if (matched.members.empty()) {
    ExperimentRow row;
    row.label = std::string(kMatchedLabel);
    row.target = target;
    row.error = Error(ErrorCode::kEmptySubset,
                      "target subset " + targets.filter +
                          " has no member besides the proximal target");
    rows.push_back(std::move(row));
  } else {
    rows.push_back(evaluate_row(corpus, std::string(kMatchedLabel), target,
                                matched, config));
  }
  return rows;
}

}  // namespace vcleak

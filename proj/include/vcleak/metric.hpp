// include/vcleak/metric.hpp

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

#ifndef VCLEAK_METRIC_HPP_
#define VCLEAK_METRIC_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vcleak/corpus.hpp"

namespace vcleak {

/// Which distribution a sample feeds: B = cos(P, D), R = cos(P', D),
/// G = cos(P', P).
enum class SampleLabel { kB, kR, kG, kOther };

std::string_view sample_label_name(SampleLabel label);

struct SimilaritySample {
  SampleLabel label = SampleLabel::kOther;
  std::string left_id;
  std::string right_id;
  std::vector<double> values;  // each in [-1, 1]

  std::size_t count() const { return values.size(); }
};

/// Non-owning view over anything that carries utterances (a Speaker or a
/// ConversionSet).
struct UtteranceSetView {
  std::string_view id;
  std::span<const Utterance> utterances;
};

inline UtteranceSetView view_of(const Speaker &s) { return {s.id, s.utterances}; }
inline UtteranceSetView view_of(const ConversionSet &c) {
  return {c.id, c.utterances};
}

/// <a,b> / (|a| |b|), clamped to [-1, 1]. Exactly symmetric in its
/// arguments. Throws kDimensionMismatch or kZeroNorm.
double cosine_similarity(const EmbeddingVector &a, const EmbeddingVector &b);

inline double cosine_distance(const EmbeddingVector &a, const EmbeddingVector &b) {
  return 1.0 - cosine_similarity(a, b);
}

/// Renormalized mean of the L2-normalized utterance embeddings. Throws
/// kDegenerateCentroid when the mean has norm < 1e-9.
EmbeddingVector speaker_centroid(const Speaker &speaker);

/// Sum over every other subset member m of (1 - cos(centroid(candidate),
/// centroid(m))), accumulated in subset order.
double summed_cosine_distance(std::string_view candidate,
                              const SpeakerSubset &subset, const Corpus &corpus);

struct ProximalScore {
  std::string id;
  double summed_distance = 0.0;
};

/// Summed cosine distance of every member, in subset order. Centroids are
/// computed once; values equal summed_cosine_distance() bit for bit.
std::vector<ProximalScore> proximal_scores(const SpeakerSubset &subset,
                                           const Corpus &corpus);

/// The member with the lowest summed cosine distance; the first one in
/// manifest order wins ties.
std::string select_proximal(const SpeakerSubset &subset, const Corpus &corpus);

/// Cosine similarity of every (left utterance, right utterance) pair, in
/// left-major order. Throws kSameEntity when both sides share an id.
SimilaritySample pair_similarities(UtteranceSetView left, UtteranceSetView right,
                                   SampleLabel label = SampleLabel::kOther);

}  // namespace vcleak

#endif  // VCLEAK_METRIC_HPP_

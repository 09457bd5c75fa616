// src/metric.cpp

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

#include "vcleak/metric.hpp"

#include <algorithm>
#include <cmath>

#include "vcleak/error.hpp"

namespace vcleak {

namespace {

constexpr double kDegenerateCentroidNorm = 1e-9;

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

// Cosine from precomputed norms; the caller guarantees matching dims and
// nonzero norms. Product order is irrelevant for symmetry since IEEE
// multiplication commutes.
double cosine_with_norms(std::span<const double> a, double norm_a,
                         std::span<const double> b, double norm_b) {
  const double c = dot(a, b) / (norm_a * norm_b);
  return std::clamp(c, -1.0, 1.0);
}

const Speaker &speaker_or_throw(const Corpus &corpus, std::string_view id) {
  const Speaker *s = corpus.find_speaker(id);
  if (!s) throw Error(ErrorCode::kUnknownSpeaker,
                      "unknown speaker '" + std::string(id) + "'");
  return *s;
}

std::vector<EmbeddingVector> subset_centroids(const SpeakerSubset &subset,
                                              const Corpus &corpus) {
  std::vector<EmbeddingVector> out;
  out.reserve(subset.n());
  for (const auto &id : subset.members)
    out.push_back(speaker_centroid(speaker_or_throw(corpus, id)));
  return out;
}

double summed_distance_at(std::size_t candidate,
                          const std::vector<EmbeddingVector> &centroids) {
  double sum = 0.0;
  for (std::size_t m = 0; m < centroids.size(); ++m) {
    if (m == candidate) continue;
    sum += 1.0 - cosine_similarity(centroids[candidate], centroids[m]);
  }
  return sum;
}

}  // namespace

std::string_view sample_label_name(SampleLabel label) {
  switch (label) {
    case SampleLabel::kB: return "B";
    case SampleLabel::kR: return "R";
    case SampleLabel::kG: return "G";
    case SampleLabel::kOther: return "other";
  }
  return "other";
}

double cosine_similarity(const EmbeddingVector &a, const EmbeddingVector &b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::kDimensionMismatch,
                "cosine of vectors with dims " + std::to_string(a.dim()) +
                    " and " + std::to_string(b.dim()));
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0))
    throw Error(ErrorCode::kZeroNorm, "cosine of a zero-norm vector");
  return cosine_with_norms(a.values(), na, b.values(), nb);
}

EmbeddingVector speaker_centroid(const Speaker &speaker) {
  if (speaker.utterances.empty())
    throw Error(ErrorCode::kDegenerateCentroid,
                "speaker '" + speaker.id + "' has no utterances");
  const std::size_t dim = speaker.utterances.front().embedding.dim();
  std::vector<double> mean(dim, 0.0);
  for (const auto &u : speaker.utterances) {
    if (u.embedding.dim() != dim)
      throw Error(ErrorCode::kDimensionMismatch,
                  "speaker '" + speaker.id + "' mixes embedding dims");
    const double n = u.embedding.norm();
    if (!(n > 0.0))
      throw Error(ErrorCode::kZeroNorm, "speaker '" + speaker.id +
                                            "' utterance '" + u.id +
                                            "' has zero norm");
    for (std::size_t i = 0; i < dim; ++i) mean[i] += u.embedding[i] / n;
  }
  const double count = static_cast<double>(speaker.utterances.size());
  double norm2 = 0.0;
  for (double &v : mean) {
    v /= count;
    norm2 += v * v;
  }
  const double norm = std::sqrt(norm2);
  if (norm < kDegenerateCentroidNorm)
    throw Error(ErrorCode::kDegenerateCentroid,
                "speaker '" + speaker.id +
                    "' utterance directions cancel; centroid norm " +
                    std::to_string(norm));
  for (double &v : mean) v /= norm;
  return EmbeddingVector(std::move(mean));
}

double summed_cosine_distance(std::string_view candidate,
                              const SpeakerSubset &subset, const Corpus &corpus) {
  const auto it =
      std::find(subset.members.begin(), subset.members.end(), candidate);
  if (it == subset.members.end())
    throw Error(ErrorCode::kInvalidArgument,
                "speaker '" + std::string(candidate) + "' is not in subset " +
                    subset.filter);
  const auto centroids = subset_centroids(subset, corpus);
  return summed_distance_at(
      static_cast<std::size_t>(it - subset.members.begin()), centroids);
}

std::vector<ProximalScore> proximal_scores(const SpeakerSubset &subset,
                                           const Corpus &corpus) {
  const auto centroids = subset_centroids(subset, corpus);
  std::vector<ProximalScore> out;
  out.reserve(subset.n());
  for (std::size_t i = 0; i < subset.n(); ++i)
    out.push_back({subset.members[i], summed_distance_at(i, centroids)});
  return out;
}

std::string select_proximal(const SpeakerSubset &subset, const Corpus &corpus) {
  if (subset.members.empty())
    throw Error(ErrorCode::kEmptySubset, "proximal speaker of an empty subset");
  const auto scores = proximal_scores(subset, corpus);
  // min_element keeps the first of equal elements.
  const auto best = std::min_element(
      scores.begin(), scores.end(), [](const auto &a, const auto &b) {
        return a.summed_distance < b.summed_distance;
      });
  return best->id;
}

SimilaritySample pair_similarities(UtteranceSetView left, UtteranceSetView right,
                                   SampleLabel label) {
  if (left.id == right.id)
    throw Error(ErrorCode::kSameEntity,
                "pair similarities of '" + std::string(left.id) +
                    "' with itself");
  if (left.utterances.empty() || right.utterances.empty())
    throw Error(ErrorCode::kEmptySample,
                "'" + std::string(left.utterances.empty() ? left.id : right.id) +
                    "' has no utterances");

  auto norms_of = [](std::span<const Utterance> utts) {
    std::vector<double> norms;
    norms.reserve(utts.size());
    for (const auto &u : utts) {
      const double n = u.embedding.norm();
      if (!(n > 0.0))
        throw Error(ErrorCode::kZeroNorm,
                    "utterance '" + u.id + "' has zero norm");
      norms.push_back(n);
    }
    return norms;
  };
  const auto left_norms = norms_of(left.utterances);
  const auto right_norms = norms_of(right.utterances);

  SimilaritySample sample;
  sample.label = label;
  sample.left_id = std::string(left.id);
  sample.right_id = std::string(right.id);
  sample.values.reserve(left.utterances.size() * right.utterances.size());
  for (std::size_t i = 0; i < left.utterances.size(); ++i) {
    const auto &a = left.utterances[i].embedding;
    for (std::size_t j = 0; j < right.utterances.size(); ++j) {
      const auto &b = right.utterances[j].embedding;
      if (a.dim() != b.dim())
        throw Error(ErrorCode::kDimensionMismatch,
                    "utterances '" + left.utterances[i].id + "' and '" +
                        right.utterances[j].id + "' differ in dim");
      sample.values.push_back(
          cosine_with_norms(a.values(), left_norms[i], b.values(), right_norms[j]));
    }
  }
  return sample;
}

}  // namespace vcleak

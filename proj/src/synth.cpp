// src/synth.cpp

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

#include "vcleak/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vcleak/error.hpp"
#include "vcleak/metric.hpp"

namespace vcleak {

namespace {

constexpr double kDegenerateMean = 1e-9;

std::vector<double> gaussian_vector(Rng &rng, std::size_t dim) {
  std::vector<double> v(dim);
  for (double &x : v) x = rng.normal();
  return v;
}

double norm_of(const std::vector<double> &v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

// Unit vector rounded to binary32, the on-disk precision.
EmbeddingVector to_stored_unit(std::vector<double> v) {
  const double n = norm_of(v);
  for (double &x : v) x = static_cast<float>(x / n);
  return EmbeddingVector(std::move(v));
}

std::vector<double> unit_direction(Rng &rng, std::size_t dim) {
  // A zero draw has probability zero but is cheap to rule out.
  for (;;) {
    auto v = gaussian_vector(rng, dim);
    const double n = norm_of(v);
    if (n > 0.0) {
      for (double &x : v) x /= n;
      return v;
    }
  }
}

std::vector<Utterance> noisy_utterances(Rng &rng, const std::vector<double> &mean,
                                        std::size_t count, double sigma,
                                        std::string_view prefix) {
  std::vector<Utterance> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto noise = gaussian_vector(rng, mean.size());
    std::vector<double> v(mean.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mean[i] + sigma * noise[i];
    std::string id = std::to_string(k);
    if (id.size() < 3) id.insert(0, 3 - id.size(), '0');
    out.push_back({std::string(prefix) + id, to_stored_unit(std::move(v))});
  }
  return out;
}

}  // namespace

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Corpus generate_corpus(const SynthConfig &config) {
  if (config.dim < 2)
    throw Error(ErrorCode::kInvalidArgument, "synthetic dim must be >= 2");
  if (config.n_speakers == 0 || config.n_utterances == 0)
    throw Error(ErrorCode::kInvalidArgument,
                "synthetic corpus needs speakers and utterances");
  if (!(config.sigma >= 0.0) || !std::isfinite(config.sigma))
    throw Error(ErrorCode::kInvalidArgument, "sigma must be finite and >= 0");

  Corpus corpus;
  corpus.embedding_dim = config.dim;
  for (const auto &[key, values] : config.attribute_plan) {
    if (values.empty())
      throw Error(ErrorCode::kInvalidArgument,
                  "attribute '" + key + "' has no values");
    if (std::find(corpus.attribute_schema.begin(), corpus.attribute_schema.end(),
                  key) == corpus.attribute_schema.end())
      corpus.attribute_schema.push_back(key);
  }

  Rng rng(config.seed);
  for (std::size_t s = 0; s < config.n_speakers; ++s) {
    Speaker speaker;
    speaker.id = "spk" + std::to_string(s);
    for (const auto &[key, values] : config.attribute_plan)
      speaker.attributes[key] = values[s % values.size()];
    const auto mean = unit_direction(rng, config.dim);
    speaker.utterances =
        noisy_utterances(rng, mean, config.n_utterances, config.sigma, "u");
    corpus.speakers.push_back(std::move(speaker));
  }
  corpus.provenance = provenance_json(config, {});
  return corpus;
}

ConversionSet simulate_conversion(const Corpus &corpus,
                                  const ConversionSimConfig &config) {
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1]");
  if (!(config.sigma >= 0.0) || !std::isfinite(config.sigma))
    throw Error(ErrorCode::kInvalidArgument, "sigma must be finite and >= 0");
  if (config.n_utterances == 0)
    throw Error(ErrorCode::kInvalidArgument, "conversion needs utterances");
  if (config.source_id == config.target_id)
    throw Error(ErrorCode::kInvalidArgument,
                "conversion source and target must differ");
  const Speaker *source = corpus.find_speaker(config.source_id);
  const Speaker *target = corpus.find_speaker(config.target_id);
  if (!source || !target)
    throw Error(ErrorCode::kUnknownSpeaker,
                "conversion endpoints " + config.source_id + " -> " +
                    config.target_id + " are not both speakers");

  const EmbeddingVector cs = speaker_centroid(*source);
  const EmbeddingVector ct = speaker_centroid(*target);
  std::vector<double> mean(ct.dim());
  for (std::size_t i = 0; i < mean.size(); ++i)
    mean[i] = (1.0 - config.alpha) * ct[i] + config.alpha * cs[i];
  const double n = norm_of(mean);
  if (n < kDegenerateMean)
    throw Error(ErrorCode::kDegenerateMean,
                "interpolated mean of " + config.source_id + " and " +
                    config.target_id + " vanishes");
  for (double &x : mean) x /= n;

  ConversionSet set;
  set.id = config.id.empty()
               ? "conv_" + config.source_id + "_" + config.target_id
               : config.id;
  set.source_id = config.source_id;
  set.target_id = config.target_id;
  Rng rng(config.seed);
  set.utterances =
      noisy_utterances(rng, mean, config.n_utterances, config.sigma, "c");
  return set;
}

const ConversionSet &add_conversion(Corpus &corpus,
                                    const ConversionSimConfig &config) {
  ConversionSet set = simulate_conversion(corpus, config);
  if (corpus.find_conversion(set.id))
    throw Error(ErrorCode::kInvalidArgument,
                "conversion id '" + set.id + "' already exists");
  corpus.conversions.push_back(std::move(set));
  return corpus.conversions.back();
}

nlohmann::json provenance_json(const SynthConfig &config,
                               std::span<const ConversionSimConfig> conversions) {
  nlohmann::ordered_json plan = nlohmann::ordered_json::object();
  for (const auto &[key, values] : config.attribute_plan) plan[key] = values;
  nlohmann::ordered_json convs = nlohmann::ordered_json::array();
  for (const auto &c : conversions) {
    convs.push_back({{"id", c.id},
                     {"source", c.source_id},
                     {"target", c.target_id},
                     {"alpha", c.alpha},
                     {"n_utterances", c.n_utterances},
                     {"sigma", c.sigma},
                     {"seed", c.seed}});
  }
  nlohmann::ordered_json doc = {{"generator", "vcleak-synth"},
                                {"rng", "mt19937_64+box-muller"},
                                {"n_speakers", config.n_speakers},
                                {"n_utterances", config.n_utterances},
                                {"dim", config.dim},
                                {"sigma", config.sigma},
                                {"seed", config.seed},
                                {"attribute_plan", plan},
                                {"conversions", convs}};
  return nlohmann::json::parse(doc.dump());
}

}  // namespace vcleak

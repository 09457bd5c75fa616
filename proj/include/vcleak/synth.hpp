// include/vcleak/synth.hpp

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

#ifndef VCLEAK_SYNTH_HPP_
#define VCLEAK_SYNTH_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vcleak/corpus.hpp"

namespace vcleak {

/// Portable seeded generator: std::mt19937_64 (whose output sequence is fixed
/// by the C++ standard) with uniform and normal transforms implemented here,
/// since the standard library distributions are implementation-defined.
///
///   uniform()  = (x >> 11) * 2^-53            in [0, 1)
///   normal()   = Box-Muller on (1 - u1, u2), both outputs used in turn
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer; derives independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// One attribute and the values assigned to speakers 0, 1, 2, ... cyclically.
using AttributeAssignment = std::pair<std::string, std::vector<std::string>>;

struct SynthConfig {
  std::size_t n_speakers = 4;
  std::size_t n_utterances = 50;
  std::size_t dim = 192;
  double sigma = 0.05;
  std::uint64_t seed = 0;
  std::vector<AttributeAssignment> attribute_plan;
};

struct ConversionSimConfig {
  std::string id;  // defaults to "conv_<source>_<target>"
  std::string source_id;
  std::string target_id;
  double alpha = 0.0;  // 0 ignores the source, 1 reproduces its centroid
  std::size_t n_utterances = 50;
  double sigma = 0.05;
  std::uint64_t seed = 0;
};

/// Speakers "spk0".."spk{n-1}", each with a mean direction uniform on the
/// unit sphere and utterances normalize(mean + sigma * N(0, I)). Components
/// are rounded to binary32 so the corpus survives a disk round trip exactly.
/// Throws kInvalidArgument for dim < 2, n_speakers == 0, n_utterances == 0,
/// or negative sigma.
Corpus generate_corpus(const SynthConfig &config);

/// Converted speech pulled toward the source by alpha:
///   mu = normalize((1 - alpha) * centroid(target) + alpha * centroid(source))
///   utterance k = normalize(mu + sigma * N(0, I))
/// Throws kDegenerateMean when the interpolated mean has norm < 1e-9.
ConversionSet simulate_conversion(const Corpus &corpus,
                                  const ConversionSimConfig &config);

/// simulate_conversion() appended to the corpus.
const ConversionSet &add_conversion(Corpus &corpus,
                                    const ConversionSimConfig &config);

nlohmann::json provenance_json(const SynthConfig &config,
                               std::span<const ConversionSimConfig> conversions);

}  // namespace vcleak

#endif  // VCLEAK_SYNTH_HPP_

// include/vcleak/corpus.hpp

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

#ifndef VCLEAK_CORPUS_HPP_
#define VCLEAK_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vcleak {

/// One utterance in speaker-encoder space. Components originate as IEEE-754
/// binary32 on disk and are held widened to double; writing narrows them back
/// without loss for any vector that was read from disk.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values)
      : values_(std::move(values)) {}

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double norm() const;
  bool all_finite() const;

  bool operator==(const EmbeddingVector &other) const = default;

 private:
  std::vector<double> values_;
};

/// Categorical speaker metadata. Values are opaque labels compared by exact
/// string equality.
using AttributeSet = std::map<std::string, std::string>;

/// Equality constraints over attributes; an empty predicate matches everyone.
using AttributePredicate = std::map<std::string, std::string>;

const std::vector<std::string> &default_attribute_schema();

struct Utterance {
  std::string id;
  EmbeddingVector embedding;
  bool operator==(const Utterance &) const = default;
};

struct Speaker {
  std::string id;
  AttributeSet attributes;
  std::vector<Utterance> utterances;
  bool operator==(const Speaker &) const = default;
};

/// Converted-speech embeddings for one (source D -> target P) conversion.
struct ConversionSet {
  std::string id;
  std::string source_id;
  std::string target_id;
  std::vector<Utterance> utterances;
  bool operator==(const ConversionSet &) const = default;
};

struct Corpus {
  int version = 1;
  std::size_t embedding_dim = 192;
  std::vector<std::string> attribute_schema = default_attribute_schema();
  std::vector<Speaker> speakers;
  std::vector<ConversionSet> conversions;
  // Free-form generator metadata; carried through, never interpreted.
  nlohmann::json provenance;

  const Speaker *find_speaker(std::string_view id) const;
  const ConversionSet *find_conversion(std::string_view id) const;
  // First conversion (manifest order) from `source_id` to `target_id`.
  const ConversionSet *find_conversion_between(std::string_view source_id,
                                               std::string_view target_id) const;

  bool operator==(const Corpus &) const = default;
};

struct Violation {
  std::string code;      // e.g. "duplicate-speaker-id"
  std::string location;  // e.g. "speaker=spk3 utterance=u001"
  std::string detail;
  bool operator==(const Violation &) const = default;
};

/// Checks every corpus invariant. Violations are returned as data, in a
/// deterministic order (manifest order, speakers before conversions).
std::vector<Violation> validate(const Corpus &corpus);

/// Parses a manifest and reads every referenced embedding file. Only
/// structural problems throw (missing files, malformed JSON, dimension or
/// count mismatches, non-finite components); semantic invariants are left to
/// validate().
Corpus read_manifest(const std::filesystem::path &manifest_path);

/// read_manifest() followed by validate(); throws kInvalidCorpus carrying the
/// first violation if any invariant fails.
Corpus load_manifest(const std::filesystem::path &manifest_path);

enum class EmbeddingFormat { kBinary, kCsv };

/// Writes `manifest.json` plus one embedding file per speaker and per
/// conversion set under `dir` (created if needed). Returns the manifest path.
std::filesystem::path write_corpus(const Corpus &corpus,
                                   const std::filesystem::path &dir,
                                   EmbeddingFormat format = EmbeddingFormat::kBinary);

/// EMB1 binary or `.csv` text, chosen by file extension.
std::vector<EmbeddingVector> read_embedding_file(const std::filesystem::path &path);
void write_embedding_file(const std::filesystem::path &path,
                          std::span<const Utterance> rows, std::size_t dim);

struct SpeakerSubset {
  std::string filter;                // human-readable predicate
  std::vector<std::string> members;  // manifest order
  std::size_t n() const { return members.size(); }
};

std::string describe_predicate(const AttributePredicate &predicate);

/// Every speaker matching all constraints, in manifest order. Throws
/// kUnknownAttribute for keys outside the schema and kEmptySubset when
/// nothing matches.
SpeakerSubset filter_speakers(const Corpus &corpus,
                              const AttributePredicate &predicate);

}  // namespace vcleak

#endif  // VCLEAK_CORPUS_HPP_

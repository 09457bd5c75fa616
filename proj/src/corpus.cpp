// src/corpus.cpp

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

#include "vcleak/corpus.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "vcleak/error.hpp"

namespace vcleak {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};

static_assert(std::endian::native == std::endian::little,
              "EMB1 I/O assumes a little-endian host");

bool is_csv(const fs::path &path) { return path.extension() == ".csv"; }

std::uint32_t read_u32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void append_u32(std::string &out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8)
    out.push_back(static_cast<char>((v >> shift) & 0xFFu));
}

std::vector<EmbeddingVector> read_binary(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnresolvableReference,
                       "cannot open embedding file " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw Error(ErrorCode::kMalformedManifest,
                "embedding file " + path.string() + " lacks EMB1 header");
  const auto *raw = reinterpret_cast<const unsigned char *>(bytes.data());
  const std::uint32_t dim = read_u32(raw + 4);
  const std::uint32_t count = read_u32(raw + 8);
  const std::uint64_t expected =
      12 + static_cast<std::uint64_t>(dim) * count * sizeof(float);
  if (bytes.size() != expected)
    throw Error(ErrorCode::kMalformedManifest,
                "embedding file " + path.string() + " has " +
                    std::to_string(bytes.size()) + " bytes, header implies " +
                    std::to_string(expected));
  std::vector<EmbeddingVector> rows;
  rows.reserve(count);
  const unsigned char *p = raw + 12;
  for (std::uint32_t r = 0; r < count; ++r) {
    std::vector<double> values(dim);
    for (std::uint32_t c = 0; c < dim; ++c, p += 4)
      values[c] = std::bit_cast<float>(read_u32(p));
    rows.emplace_back(std::move(values));
  }
  return rows;
}

std::vector<EmbeddingVector> read_csv(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kUnresolvableReference,
                       "cannot open embedding file " + path.string());
  std::vector<EmbeddingVector> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto first = cell.find_first_not_of(" \t");
      const auto last = cell.find_last_not_of(" \t");
      if (first == std::string::npos)
        throw Error(ErrorCode::kMalformedManifest,
                    path.string() + ":" + std::to_string(line_no) + ": empty field");
      const char *b = cell.data() + first;
      const char *e = cell.data() + last + 1;
      if (*b == '+') ++b;
      float v = 0.0f;
      auto [ptr, ec] = std::from_chars(b, e, v);
      if (ec == std::errc::result_out_of_range) {
        v = std::numeric_limits<float>::infinity();
      } else if (ec != std::errc() || ptr != e) {
        throw Error(ErrorCode::kMalformedManifest,
                    path.string() + ":" + std::to_string(line_no) +
                        ": not a number: '" + cell + "'");
      }
      values.push_back(v);
    }
    rows.emplace_back(std::move(values));
  }
  return rows;
}

// Field extraction with malformed-manifest errors naming the offending key.
const json &require(const json &obj, const char *key, const std::string &where) {
  if (!obj.is_object() || !obj.contains(key))
    throw Error(ErrorCode::kMalformedManifest,
                where + ": missing key '" + key + "'");
  return obj.at(key);
}

std::string require_string(const json &obj, const char *key,
                           const std::string &where) {
  const json &v = require(obj, key, where);
  if (!v.is_string())
    throw Error(ErrorCode::kMalformedManifest,
                where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> require_string_array(const json &obj, const char *key,
                                              const std::string &where) {
  const json &v = require(obj, key, where);
  if (!v.is_array())
    throw Error(ErrorCode::kMalformedManifest,
                where + ": '" + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto &item : v) {
    if (!item.is_string())
      throw Error(ErrorCode::kMalformedManifest,
                  where + ": '" + key + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<Utterance> load_utterances(const fs::path &base, const json &entry,
                                       std::size_t dim, const std::string &where) {
  const auto ids = require_string_array(entry, "utterance_ids", where);
  const fs::path file = base / require_string(entry, "embedding_file", where);
  if (!fs::exists(file))
    throw Error(ErrorCode::kUnresolvableReference,
                where + ": embedding file " + file.string() + " not found");
  auto rows = read_embedding_file(file);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].dim() != dim)
      throw Error(ErrorCode::kDimensionMismatch,
                  where + ": embedding file " + file.string() + " row " +
                      std::to_string(k) + " has dim " +
                      std::to_string(rows[k].dim()) + ", corpus declares " +
                      std::to_string(dim));
  }
  if (rows.size() != ids.size())
    throw Error(ErrorCode::kCountMismatch,
                where + ": embedding file " + file.string() + " has " +
                    std::to_string(rows.size()) + " rows for " +
                    std::to_string(ids.size()) + " utterance ids");
  std::vector<Utterance> utts;
  utts.reserve(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!rows[k].all_finite())
      throw Error(ErrorCode::kNonFiniteComponent,
                  where + " utterance=" + ids[k] +
                      ": non-finite embedding component in " + file.string());
    utts.push_back({ids[k], std::move(rows[k])});
  }
  return utts;
}

std::string sanitize(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out.substr(0, 48);
}

std::string numbered(std::string_view prefix, std::size_t index) {
  std::string digits = std::to_string(index);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return std::string(prefix) + digits;
}

json utterance_ids_json(const std::vector<Utterance> &utts) {
  json ids = json::array();
  for (const auto &u : utts) ids.push_back(u.id);
  return ids;
}

void check_utterances(const std::vector<Utterance> &utts, std::size_t dim,
                      const std::string &where, const char *empty_code,
                      std::vector<Violation> &out) {
  if (utts.empty()) out.push_back({empty_code, where, "no utterances"});
  std::set<std::string> seen;
  for (const auto &u : utts) {
    const std::string loc = where + " utterance=" + u.id;
    if (!seen.insert(u.id).second)
      out.push_back({"duplicate-utterance-id", loc, "utterance id repeated"});
    if (u.embedding.dim() != dim) {
      out.push_back({"dimension-mismatch", loc,
                     "dim " + std::to_string(u.embedding.dim()) + " != " +
                         std::to_string(dim)});
      continue;
    }
    if (!u.embedding.all_finite()) {
      out.push_back({"non-finite-component", loc, "NaN or Inf component"});
      continue;
    }
    if (!(u.embedding.norm() > 0.0))
      out.push_back({"zero-norm-embedding", loc, "embedding has zero norm"});
  }
}

}  // namespace

double EmbeddingVector::norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

bool EmbeddingVector::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

const std::vector<std::string> &default_attribute_schema() {
  static const std::vector<std::string> schema = {"gender", "age_bracket",
                                                  "accent", "environment"};
  return schema;
}

const Speaker *Corpus::find_speaker(std::string_view id) const {
  for (const auto &s : speakers)
    if (s.id == id) return &s;
  return nullptr;
}

const ConversionSet *Corpus::find_conversion(std::string_view id) const {
  for (const auto &c : conversions)
    if (c.id == id) return &c;
  return nullptr;
}

const ConversionSet *Corpus::find_conversion_between(
    std::string_view source_id, std::string_view target_id) const {
  for (const auto &c : conversions)
    if (c.source_id == source_id && c.target_id == target_id) return &c;
  return nullptr;
}

std::vector<Violation> validate(const Corpus &corpus) {
  std::vector<Violation> out;
  if (corpus.version != 1)
    out.push_back({"unsupported-version", "manifest",
                   "version " + std::to_string(corpus.version) + " != 1"});
  if (corpus.embedding_dim == 0)
    out.push_back({"invalid-embedding-dim", "manifest", "embedding_dim is 0"});

  const std::set<std::string> schema(corpus.attribute_schema.begin(),
                                     corpus.attribute_schema.end());
  std::set<std::string> speaker_ids;
  for (const auto &s : corpus.speakers) {
    const std::string where = "speaker=" + s.id;
    if (!speaker_ids.insert(s.id).second)
      out.push_back({"duplicate-speaker-id", where, "speaker id repeated"});
    for (const auto &[key, value] : s.attributes)
      if (!schema.count(key))
        out.push_back({"unknown-attribute-key", where,
                       "attribute '" + key + "' not in schema"});
    check_utterances(s.utterances, corpus.embedding_dim, where, "empty-speaker",
                     out);
  }

  std::set<std::string> conversion_ids;
  for (const auto &c : corpus.conversions) {
    const std::string where = "conversion=" + c.id;
    if (!conversion_ids.insert(c.id).second)
      out.push_back({"duplicate-conversion-id", where, "conversion id repeated"});
    if (!speaker_ids.count(c.source_id))
      out.push_back({"dangling-conversion-source", where,
                     "source '" + c.source_id + "' is not a speaker"});
    if (!speaker_ids.count(c.target_id))
      out.push_back({"dangling-conversion-target", where,
                     "target '" + c.target_id + "' is not a speaker"});
    if (c.source_id == c.target_id)
      out.push_back({"conversion-self-pair", where,
                     "source and target are both '" + c.source_id + "'"});
    check_utterances(c.utterances, corpus.embedding_dim, where,
                     "empty-conversion", out);
  }
  return out;
}

std::vector<EmbeddingVector> read_embedding_file(const fs::path &path) {
  return is_csv(path) ? read_csv(path) : read_binary(path);
}

void write_embedding_file(const fs::path &path, std::span<const Utterance> rows,
                          std::size_t dim) {
  std::string bytes;
  if (is_csv(path)) {
    char buf[64];
    for (const auto &u : rows) {
      for (std::size_t c = 0; c < u.embedding.dim(); ++c) {
        if (c) bytes.push_back(',');
        auto res = std::to_chars(buf, buf + sizeof(buf),
                                 static_cast<float>(u.embedding[c]));
        bytes.append(buf, res.ptr);
      }
      bytes.push_back('\n');
    }
  } else {
    bytes.append(kMagic, 4);
    append_u32(bytes, static_cast<std::uint32_t>(dim));
    append_u32(bytes, static_cast<std::uint32_t>(rows.size()));
    for (const auto &u : rows) {
      if (u.embedding.dim() != dim)
        throw Error(ErrorCode::kDimensionMismatch,
                    "utterance " + u.id + " has dim " +
                        std::to_string(u.embedding.dim()) + ", expected " +
                        std::to_string(dim));
      for (double v : u.embedding.values())
        append_u32(bytes, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path.string());
}

Corpus read_manifest(const fs::path &manifest_path) {
  if (!fs::exists(manifest_path))
    throw Error(ErrorCode::kFileNotFound,
                "manifest " + manifest_path.string() + " not found");
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorCode::kIoError,
                       "cannot read manifest " + manifest_path.string());
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object())
    throw Error(ErrorCode::kMalformedManifest,
                manifest_path.string() + " is not a JSON object");

  const std::string where = manifest_path.string();
  Corpus corpus;
  const json &version = require(doc, "version", where);
  const json &dim = require(doc, "embedding_dim", where);
  if (!version.is_number_integer() || !dim.is_number_integer() ||
      dim.get<long long>() <= 0)
    throw Error(ErrorCode::kMalformedManifest,
                where + ": 'version' and 'embedding_dim' must be integers, "
                        "embedding_dim positive");
  corpus.version = version.get<int>();
  corpus.embedding_dim = dim.get<std::size_t>();
  if (doc.contains("attribute_schema"))
    corpus.attribute_schema = require_string_array(doc, "attribute_schema", where);
  if (doc.contains("provenance")) corpus.provenance = doc.at("provenance");

  const fs::path base = manifest_path.parent_path();
  const json &speakers = require(doc, "speakers", where);
  if (!speakers.is_array())
    throw Error(ErrorCode::kMalformedManifest, where + ": 'speakers' must be an array");
  for (const auto &entry : speakers) {
    Speaker s;
    s.id = require_string(entry, "id", where + " speakers[]");
    const std::string swhere = "speaker=" + s.id;
    if (entry.contains("attributes")) {
      const json &attrs = entry.at("attributes");
      if (!attrs.is_object())
        throw Error(ErrorCode::kMalformedManifest,
                    swhere + ": 'attributes' must be an object");
      for (const auto &[key, value] : attrs.items()) {
        if (!value.is_string())
          throw Error(ErrorCode::kMalformedManifest,
                      swhere + ": attribute '" + key + "' must be a string");
        s.attributes[key] = value.get<std::string>();
      }
    }
    s.utterances = load_utterances(base, entry, corpus.embedding_dim, swhere);
    corpus.speakers.push_back(std::move(s));
  }

  const json conversions = doc.value("conversions", json::array());
  if (!conversions.is_array())
    throw Error(ErrorCode::kMalformedManifest,
                where + ": 'conversions' must be an array");
  for (const auto &entry : conversions) {
    ConversionSet c;
    c.id = require_string(entry, "id", where + " conversions[]");
    const std::string cwhere = "conversion=" + c.id;
    c.source_id = require_string(entry, "source", cwhere);
    c.target_id = require_string(entry, "target", cwhere);
    c.utterances = load_utterances(base, entry, corpus.embedding_dim, cwhere);
    corpus.conversions.push_back(std::move(c));
  }
  return corpus;
}

Corpus load_manifest(const fs::path &manifest_path) {
  Corpus corpus = read_manifest(manifest_path);
  const auto violations = validate(corpus);
  if (!violations.empty()) {
    const auto &v = violations.front();
    throw Error(ErrorCode::kInvalidCorpus,
                v.code + " at " + v.location + ": " + v.detail +
                    (violations.size() > 1
                         ? " (+" + std::to_string(violations.size() - 1) + " more)"
                         : ""));
  }
  return corpus;
}

fs::path write_corpus(const Corpus &corpus, const fs::path &dir,
                      EmbeddingFormat format) {
  std::error_code ec;
  fs::create_directories(dir / "embeddings", ec);
  if (ec) throw Error(ErrorCode::kIoError,
                      "cannot create " + dir.string() + ": " + ec.message());
  const std::string ext = format == EmbeddingFormat::kCsv ? ".csv" : ".emb";

  nlohmann::ordered_json doc;
  doc["version"] = corpus.version;
  doc["embedding_dim"] = corpus.embedding_dim;
  if (corpus.attribute_schema != default_attribute_schema())
    doc["attribute_schema"] = corpus.attribute_schema;

  doc["speakers"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < corpus.speakers.size(); ++i) {
    const Speaker &s = corpus.speakers[i];
    const std::string rel =
        "embeddings/" + numbered("spk", i) + "_" + sanitize(s.id) + ext;
    write_embedding_file(dir / rel, s.utterances, corpus.embedding_dim);
    nlohmann::ordered_json entry;
    entry["id"] = s.id;
    entry["attributes"] = s.attributes;
    entry["utterance_ids"] = utterance_ids_json(s.utterances);
    entry["embedding_file"] = rel;
    doc["speakers"].push_back(std::move(entry));
  }

  doc["conversions"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < corpus.conversions.size(); ++i) {
    const ConversionSet &c = corpus.conversions[i];
    const std::string rel =
        "embeddings/" + numbered("conv", i) + "_" + sanitize(c.id) + ext;
    write_embedding_file(dir / rel, c.utterances, corpus.embedding_dim);
    nlohmann::ordered_json entry;
    entry["id"] = c.id;
    entry["source"] = c.source_id;
    entry["target"] = c.target_id;
    entry["utterance_ids"] = utterance_ids_json(c.utterances);
    entry["embedding_file"] = rel;
    doc["conversions"].push_back(std::move(entry));
  }
  if (!corpus.provenance.is_null()) doc["provenance"] = corpus.provenance;

  const fs::path manifest = dir / "manifest.json";
  std::ofstream out(manifest, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + manifest.string());
  out << doc.dump(2) << '\n';
  return manifest;
}

std::string describe_predicate(const AttributePredicate &predicate) {
  if (predicate.empty()) return "{}";
  std::string out = "{";
  bool first = true;
  for (const auto &[key, value] : predicate) {
    if (!first) out += ", ";
    out += key + "=" + value;
    first = false;
  }
  return out + "}";
}

SpeakerSubset filter_speakers(const Corpus &corpus,
                              const AttributePredicate &predicate) {
  for (const auto &[key, value] : predicate) {
    if (std::find(corpus.attribute_schema.begin(), corpus.attribute_schema.end(),
                  key) == corpus.attribute_schema.end())
      throw Error(ErrorCode::kUnknownAttribute,
                  "attribute '" + key + "' is not in the corpus schema");
  }
  SpeakerSubset subset;
  subset.filter = describe_predicate(predicate);
  for (const auto &s : corpus.speakers) {
    const bool match = std::all_of(
        predicate.begin(), predicate.end(), [&](const auto &constraint) {
          auto it = s.attributes.find(constraint.first);
          return it != s.attributes.end() && it->second == constraint.second;
        });
    if (match) subset.members.push_back(s.id);
  }
  if (subset.members.empty())
    throw Error(ErrorCode::kEmptySubset,
                "no speaker matches " + subset.filter);
  return subset;
}

}  // namespace vcleak

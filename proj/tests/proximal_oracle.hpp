// tests/proximal_oracle.hpp

// Brute-force proximal-speaker oracle. Recomputes centroids and cosine
// distances from raw components with its own arithmetic; shares nothing with
// the metric module beyond the data types.

#ifndef VCLEAK_TESTS_PROXIMAL_ORACLE_HPP_
#define VCLEAK_TESTS_PROXIMAL_ORACLE_HPP_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "vcleak/corpus.hpp"

namespace vcleak::testing {

inline std::vector<double> oracle_centroid(const Speaker &s) {
  std::vector<double> acc(s.utterances.front().embedding.dim(), 0.0);
  for (const auto &u : s.utterances) {
    double n2 = 0.0;
    for (double x : u.embedding.values()) n2 += x * x;
    const double n = std::sqrt(n2);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += u.embedding[i] / n;
  }
  double n2 = 0.0;
  for (double x : acc) n2 += x * x;
  for (double &x : acc) x /= std::sqrt(n2);
  return acc;
}

/// Exhaustive argmin of the summed cosine distance; first index wins ties
/// within 1e-12 (the library and oracle may differ by rounding).
inline std::string brute_force_proximal(const Corpus &corpus,
                                        const std::vector<std::string> &members) {
  std::vector<std::vector<double>> cents;
  for (const auto &id : members) cents.push_back(oracle_centroid(*corpus.find_speaker(id)));
  std::size_t best = 0;
  double best_sum = 0.0;
  for (std::size_t i = 0; i < cents.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cents.size(); ++j) {
      if (i == j) continue;
      double d = 0.0;
      for (std::size_t k = 0; k < cents[i].size(); ++k) d += cents[i][k] * cents[j][k];
      sum += 1.0 - d;  // centroids are unit vectors
    }
    if (i == 0 || sum < best_sum - 1e-12) {
      best = i;
      best_sum = sum;
    }
  }
  return members[best];
}

/// Random corpus of 1..max_speakers speakers with 1..max_utts utterances of
/// the given dim, clustered around per-speaker directions.
inline Corpus random_proximal_corpus(std::mt19937_64 &rng, std::size_t dim,
                                     std::size_t max_speakers, std::size_t max_utts) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Corpus c;
  c.embedding_dim = dim;
  const std::size_t n = 1 + rng() % max_speakers;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<double> mean(dim);
    for (double &x : mean) x = nd(rng);
    Speaker sp{"s" + std::to_string(s), {}, {}};
    const std::size_t m = 1 + rng() % max_utts;
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<double> v(dim);
      for (std::size_t i = 0; i < dim; ++i) v[i] = static_cast<float>(mean[i] + 0.7 * nd(rng));
      sp.utterances.push_back({"u" + std::to_string(k), EmbeddingVector(v)});
    }
    c.speakers.push_back(std::move(sp));
  }
  return c;
}

}  // namespace vcleak::testing

#endif  // VCLEAK_TESTS_PROXIMAL_ORACLE_HPP_

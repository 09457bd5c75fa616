// tests/metric_test.cpp

#include "vcleak/metric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "proximal_oracle.hpp"
#include "test_util.hpp"
#include "vcleak/error.hpp"

namespace vcleak {
namespace {

using namespace vcleak::testing;

const double kHalfSqrt2 = std::sqrt(0.5);

// Three speakers whose centroids are (1,0), (sqrt(1/2), sqrt(1/2)), (0,1).
Corpus fan_corpus() {
  Corpus c;
  c.embedding_dim = 2;
  c.speakers.push_back(speaker("east", {vec({2, 0})}));
  c.speakers.push_back(speaker("diag", {vec({1, 0}), vec({0, 1})}));
  c.speakers.push_back(speaker("north", {vec({0, 3})}));
  return c;
}

SpeakerSubset all_of(const Corpus &c) {
  SpeakerSubset s{"{}", {}};
  for (const auto &sp : c.speakers) s.members.push_back(sp.id);
  return s;
}

TEST(Cosine, Examples) {
  const auto v = vec({0.3, -1.7, 2.2});
  EXPECT_DOUBLE_EQ(cosine_similarity(v, v), 1.0);
  EXPECT_EQ(cosine_similarity(vec({1, 0}), vec({0, 1})), 0.0);
  EXPECT_EQ(cosine_similarity(vec({1, 0}), vec({-1, 0})), -1.0);
  EXPECT_DOUBLE_EQ(cosine_distance(vec({1, 0}), vec({-1, 0})), 2.0);
}

TEST(Cosine, Errors) {
  try {
    cosine_similarity(vec({0, 0}), vec({1, 0}));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroNorm);
  }
  try {
    cosine_similarity(vec({1, 0, 0}), vec({1, 0}));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Cosine, SymmetricScaleInvariantAndBounded) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int i = 0; i < 500; ++i) {
    const std::size_t dim = 1 + rng() % 64;
    const auto a = random_vec(rng, dim);
    const auto b = random_vec(rng, dim);
    const double c = cosine_similarity(a, b);
    EXPECT_EQ(c, cosine_similarity(b, a));
    EXPECT_GE(c, -1.0);
    EXPECT_LE(c, 1.0);
    std::vector<double> scaled(a.values().begin(), a.values().end());
    const double s = scale(rng);
    for (double &x : scaled) x *= s;
    EXPECT_NEAR(cosine_similarity(EmbeddingVector(scaled), b), c, 1e-12);
  }
}

TEST(Centroid, Examples) {
  const auto single = speaker_centroid(speaker("s", {vec({3, 4})}));
  EXPECT_NEAR(single[0], 0.6, 1e-15);
  EXPECT_NEAR(single[1], 0.8, 1e-15);

  const auto diag = speaker_centroid(speaker("s", {vec({1, 0}), vec({0, 1})}));
  EXPECT_NEAR(diag[0], kHalfSqrt2, 1e-15);
  EXPECT_NEAR(diag[1], kHalfSqrt2, 1e-15);

  try {
    speaker_centroid(speaker("s", {vec({1, 0}), vec({-1, 0})}));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateCentroid);
  }
}

TEST(Centroid, UnitNormAndIgnoresUtteranceScale) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    std::vector<EmbeddingVector> rows;
    for (int k = 0; k < 7; ++k) rows.push_back(random_vec(rng, 16));
    const auto c = speaker_centroid(speaker("s", rows));
    EXPECT_NEAR(c.norm(), 1.0, 1e-12);
    std::vector<EmbeddingVector> scaled;
    for (const auto &r : rows) {
      std::vector<double> v(r.values().begin(), r.values().end());
      for (double &x : v) x *= 4.0;
      scaled.emplace_back(v);
    }
    const auto c2 = speaker_centroid(speaker("s", scaled));
    for (std::size_t d = 0; d < 16; ++d) EXPECT_NEAR(c[d], c2[d], 1e-12);
  }
}

TEST(SummedDistance, Examples) {
  const Corpus c = fan_corpus();
  const auto subset = all_of(c);
  // Oracle values, summed by hand over the two other centroids.
  EXPECT_NEAR(summed_cosine_distance("diag", subset, c), 2.0 * (1.0 - kHalfSqrt2), 1e-12);
  EXPECT_NEAR(summed_cosine_distance("east", subset, c), (1.0 - kHalfSqrt2) + 1.0, 1e-12);
  EXPECT_NEAR(summed_cosine_distance("diag", subset, c), 0.58579, 5e-6);
  EXPECT_NEAR(summed_cosine_distance("east", subset, c), 1.29289, 5e-6);

  const SpeakerSubset single{"{}", {"north"}};
  EXPECT_EQ(summed_cosine_distance("north", single, c), 0.0);
}

TEST(SelectProximal, Examples) {
  const Corpus c = fan_corpus();
  EXPECT_EQ(select_proximal(all_of(c), c), "diag");
  EXPECT_EQ(select_proximal(SpeakerSubset{"{}", {"north"}}, c), "north");

  const auto scores = proximal_scores(all_of(c), c);
  for (const auto &s : scores)
    EXPECT_EQ(s.summed_distance, summed_cosine_distance(s.id, all_of(c), c));
}

TEST(SelectProximal, TiesGoToManifestOrder) {
  Corpus c;
  c.embedding_dim = 2;
  c.speakers.push_back(speaker("a", {vec({1, 0})}));
  c.speakers.push_back(speaker("b", {vec({0, 1})}));
  EXPECT_EQ(select_proximal(all_of(c), c), "a");
  std::swap(c.speakers[0], c.speakers[1]);
  EXPECT_EQ(select_proximal(all_of(c), c), "b");
}

TEST(SelectProximal, MatchesBruteForceAndIgnoresRescaling) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    Corpus c = random_proximal_corpus(rng, 16, 30, 20);
    const auto subset = all_of(c);
    const std::string got = select_proximal(subset, c);
    EXPECT_EQ(got, brute_force_proximal(c, subset.members)) << "trial " << trial;

    std::uniform_real_distribution<double> scale(0.1, 10.0);
    for (auto &s : c.speakers)
      for (auto &u : s.utterances) {
        std::vector<double> v(u.embedding.values().begin(), u.embedding.values().end());
        const double k = scale(rng);
        for (double &x : v) x *= k;
        u.embedding = EmbeddingVector(v);
      }
    EXPECT_EQ(select_proximal(subset, c), got) << "rescaled trial " << trial;
  }
}

TEST(PairSimilarities, Examples) {
  std::mt19937_64 rng(3);
  std::vector<EmbeddingVector> three, five;
  for (int i = 0; i < 3; ++i) three.push_back(random_vec(rng, 8));
  for (int i = 0; i < 5; ++i) five.push_back(random_vec(rng, 8));
  const auto a = speaker("a", three);
  const auto b = speaker("b", five);
  const auto s = pair_similarities(view_of(a), view_of(b), SampleLabel::kB);
  EXPECT_EQ(s.count(), 15u);
  EXPECT_EQ(s.label, SampleLabel::kB);
  EXPECT_EQ(s.values[1 * 5 + 2], cosine_similarity(three[1], five[2]));

  // Identical content under two ids.
  const auto dup_a = speaker("x", {vec({0.3, 0.4}), vec({0.3, 0.4})});
  const auto dup_b = speaker("y", {vec({0.3, 0.4})});
  for (double v : pair_similarities(view_of(dup_a), view_of(dup_b)).values)
    EXPECT_DOUBLE_EQ(v, 1.0);

  const auto left = speaker("l", {vec({1, 0}), vec({0, 1})});
  const auto right = speaker("r", {vec({1, 0})});
  EXPECT_EQ(pair_similarities(view_of(left), view_of(right)).values,
            (std::vector<double>{1.0, 0.0}));

  try {
    pair_similarities(view_of(a), view_of(a));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kSameEntity);
  }
}

TEST(PairSimilarities, ReversedIsAPermutation) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<EmbeddingVector> l, r;
    for (std::size_t i = 0, n = 1 + rng() % 9; i < n; ++i) l.push_back(random_vec(rng, 12));
    for (std::size_t i = 0, n = 1 + rng() % 9; i < n; ++i) r.push_back(random_vec(rng, 12));
    const auto sl = speaker("l", l);
    const auto conv = conversion("r", "l", "x", r);
    auto fwd = pair_similarities(view_of(sl), view_of(conv)).values;
    auto rev = pair_similarities(view_of(conv), view_of(sl)).values;
    std::sort(fwd.begin(), fwd.end());
    std::sort(rev.begin(), rev.end());
    EXPECT_EQ(fwd, rev);
  }
}

}  // namespace
}  // namespace vcleak

// tests/experiment_fixture.hpp

// Sixteen synthetic speakers with three attributes, laid out so the target
// filter {gender=f, accent=x, environment=quiet} selects {spk0, spk8} and each
// single-attribute mismatch selects two speakers. synth_args() returns the
// `vcleak synth` flags that write this corpus plus every conversion an
// experiment over the three mismatches needs.

#ifndef VCLEAK_TESTS_EXPERIMENT_FIXTURE_HPP_
#define VCLEAK_TESTS_EXPERIMENT_FIXTURE_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "vcleak/corpus.hpp"
#include "vcleak/leakage.hpp"
#include "vcleak/metric.hpp"
#include "vcleak/synth.hpp"

namespace vcleak::testing {

inline SynthConfig experiment_synth_config() {
  SynthConfig config;
  config.n_speakers = 16;
  config.n_utterances = 40;
  config.dim = 32;
  config.sigma = 0.05;
  config.seed = 7;
  config.attribute_plan = {
      {"gender", {"f", "m"}},
      {"accent", {"x", "x", "y", "y"}},
      {"environment", {"quiet", "quiet", "quiet", "quiet", "noisy", "noisy", "noisy", "noisy"}}};
  return config;
}

inline AttributePredicate experiment_target_filter() {
  return {{"gender", "f"}, {"accent", "x"}, {"environment", "quiet"}};
}

inline std::vector<Mismatch> experiment_mismatches() {
  return {{"gender", "m", "Gender"}, {"accent", "y", "Accent"},
          {"environment", "noisy", "Environment"}};
}

inline std::vector<std::string> synth_args(const std::string &out_dir) {
  const SynthConfig config = experiment_synth_config();
  const Corpus corpus = generate_corpus(config);
  const auto targets = filter_speakers(corpus, experiment_target_filter());
  const std::string p = select_proximal(targets, corpus);
  std::vector<std::string> sources;
  for (const auto &mm : experiment_mismatches()) {
    AttributePredicate f = experiment_target_filter();
    f[mm.attribute] = mm.value;
    sources.push_back(select_proximal(filter_speakers(corpus, f), corpus));
  }
  for (const auto &id : targets.members)
    if (id != p) sources.push_back(id);

  std::vector<std::string> args = {"synth", "-o", out_dir,
                                   "--speakers", "16", "--utterances", "40",
                                   "--dim", "32", "--sigma", "0.05", "--seed", "7",
                                   "--attr", "gender=f,m",
                                   "--attr", "accent=x,x,y,y",
                                   "--attr", "environment=quiet,quiet,quiet,quiet,noisy,noisy,noisy,noisy"};
  double alpha = 0.0;
  for (const auto &d : sources) {
    args.push_back("--convert");
    args.push_back("src=" + d + ",tgt=" + p + ",alpha=" + std::to_string(alpha) + ",n=40");
    alpha += 0.15;
  }
  return args;
}

inline nlohmann::json experiment_config_json(const std::string &manifest, double tau = 0.33) {
  nlohmann::json doc;
  doc["manifest"] = manifest;
  doc["target_filter"] = experiment_target_filter();
  doc["mismatches"] = nlohmann::json::array();
  for (const auto &mm : experiment_mismatches())
    doc["mismatches"].push_back({{"attribute", mm.attribute}, {"value", mm.value}, {"label", mm.label}});
  doc["tau"] = tau;
  doc["format"] = "md";
  return doc;
}

}  // namespace vcleak::testing

#endif  // VCLEAK_TESTS_EXPERIMENT_FIXTURE_HPP_

// src/cli.cpp

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

#include "vcleak/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vcleak/corpus.hpp"
#include "vcleak/leakage.hpp"
#include "vcleak/metric.hpp"
#include "vcleak/report.hpp"
#include "vcleak/synth.hpp"

namespace vcleak::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

int fail(std::ostream &err, const Error &e) {
  err << "error: " << e.code_name() << ": " << e.what() << '\n';
  return exit_status_for(e.code());
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::pair<std::string, std::string> split_key_value(std::string_view s) {
  const auto eq = s.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw Error(ErrorCode::kInvalidArgument,
                "expected key=value, got '" + std::string(s) + "'");
  return {std::string(s.substr(0, eq)), std::string(s.substr(eq + 1))};
}

AttributePredicate parse_filter(const std::vector<std::string> &items) {
  AttributePredicate pred;
  for (const auto &item : items) {
    auto [key, value] = split_key_value(item);
    pred[key] = value;
  }
  return pred;
}

std::size_t parse_count(const std::string &s, const std::string &what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception &) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s[0] == '-')
    throw Error(ErrorCode::kInvalidArgument,
                what + ": expected a non-negative integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string &s, const std::string &what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception &) {
    pos = 0;
  }
  if (pos != s.size() || s.empty())
    throw Error(ErrorCode::kInvalidArgument,
                what + ": expected a number, got '" + s + "'");
  return v;
}

RangePolicy parse_range(const std::string &s) {
  if (s == "shared") return RangePolicy::kShared;
  if (s == "fixed") return RangePolicy::kFixed;
  throw Error(ErrorCode::kInvalidArgument,
              "range must be 'shared' or 'fixed', got '" + s + "'");
}

ReportFormat parse_format(const std::string &s) {
  const auto f = parse_report_format(s);
  if (!f)
    throw Error(ErrorCode::kInvalidArgument,
                "format must be json, csv or md, got '" + s + "'");
  return *f;
}

void write_output(const std::string &text, const std::string &path,
                  std::ostream &out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + path);
  file << text;
  if (!file) throw Error(ErrorCode::kIoError, "short write to " + path);
}

// --attr gender=male,female        cyclic over speakers
// --attr gender=male:3,female:2    consecutive blocks, counts sum to n
AttributeAssignment parse_attr(const std::string &spec, std::size_t n_speakers) {
  auto [key, rhs] = split_key_value(spec);
  const auto tokens = split(rhs, ',');
  const bool blocks = std::any_of(tokens.begin(), tokens.end(), [](const auto &t) {
    return t.find(':') != std::string::npos;
  });
  std::vector<std::string> values;
  if (!blocks) {
    values = tokens;
  } else {
    for (const auto &t : tokens) {
      const auto colon = t.rfind(':');
      if (colon == std::string::npos)
        throw Error(ErrorCode::kInvalidArgument,
                    "--attr " + key + ": mix of counted and uncounted values");
      const std::size_t count =
          parse_count(t.substr(colon + 1), "--attr " + key + " count");
      values.insert(values.end(), count, t.substr(0, colon));
    }
    if (values.size() != n_speakers)
      throw Error(ErrorCode::kInvalidArgument,
                  "--attr " + key + ": counts sum to " +
                      std::to_string(values.size()) + ", corpus has " +
                      std::to_string(n_speakers) + " speakers");
  }
  for (const auto &v : values)
    if (v.empty())
      throw Error(ErrorCode::kInvalidArgument, "--attr " + key + ": empty value");
  return {key, values};
}

// --convert src=spk1,tgt=spk0,alpha=0.5[,n=50][,sigma=..][,seed=..][,id=..]
ConversionSimConfig parse_convert(const std::string &spec, const SynthConfig &corpus,
                                  std::size_t index) {
  ConversionSimConfig c;
  c.n_utterances = corpus.n_utterances;
  c.sigma = corpus.sigma;
  c.seed = mix_seed(corpus.seed, index);
  bool have_alpha = false;
  for (const auto &item : split(spec, ',')) {
    auto [key, value] = split_key_value(item);
    if (key == "src") c.source_id = value;
    else if (key == "tgt") c.target_id = value;
    else if (key == "alpha") { c.alpha = parse_real(value, "--convert alpha"); have_alpha = true; }
    else if (key == "n") c.n_utterances = parse_count(value, "--convert n");
    else if (key == "sigma") c.sigma = parse_real(value, "--convert sigma");
    else if (key == "seed") c.seed = parse_count(value, "--convert seed");
    else if (key == "id") c.id = value;
    else
      throw Error(ErrorCode::kInvalidArgument,
                  "--convert: unknown key '" + key + "'");
  }
  if (c.source_id.empty() || c.target_id.empty() || !have_alpha)
    throw Error(ErrorCode::kInvalidArgument,
                "--convert needs src=, tgt= and alpha=");
  return c;
}

struct PairOptions {
  std::string manifest;
  std::string target;
  std::string source;
  std::string conversion;
  std::size_t nbins = kDefaultBins;
  double tau = kDefaultTau;
  std::string range = "shared";
};

void add_pair_options(CLI::App *cmd, PairOptions &o) {
  cmd->add_option("manifest", o.manifest, "Corpus manifest (JSON)")->required();
  cmd->add_option("--conversion,-c", o.conversion, "Conversion set id (P')")
      ->required();
  cmd->add_option("--target,-p", o.target,
                  "Target speaker P (default: the conversion's target)");
  cmd->add_option("--source,-d", o.source,
                  "Source speaker D (default: the conversion's source)");
  cmd->add_option("--nbins", o.nbins, "Histogram bins")->capture_default_str();
  cmd->add_option("--range", o.range, "Bin range: shared (min/max) or fixed [-1,1]")
      ->capture_default_str();
}

LeakageReport evaluate_pair(const PairOptions &o) {
  const Corpus corpus = load_manifest(o.manifest);
  const ConversionSet *conv = corpus.find_conversion(o.conversion);
  if (!conv)
    throw Error(ErrorCode::kMissingConversion,
                "unknown conversion '" + o.conversion + "'");
  EvalConfig config;
  config.nbins = o.nbins;
  config.tau = o.tau;
  config.range = parse_range(o.range);
  return evaluate(corpus, o.target.empty() ? conv->target_id : o.target,
                  o.source.empty() ? conv->source_id : o.source, o.conversion,
                  config);
}

int cmd_validate(const std::string &manifest, std::ostream &out,
                 std::ostream &err) {
  Corpus corpus;
  try {
    corpus = read_manifest(manifest);
  } catch (const Error &e) {
    if (exit_status_for(e.code()) == kExitIo) return fail(err, e);
    out << e.code_name() << '\t' << manifest << '\t' << e.what() << '\n';
    return kExitDomain;
  }
  const auto violations = validate(corpus);
  for (const auto &v : violations)
    out << v.code << '\t' << v.location << '\t' << v.detail << '\n';
  return violations.empty() ? kExitOk : kExitDomain;
}

int cmd_proximal(const std::string &manifest,
                 const std::vector<std::string> &filters, std::ostream &out) {
  const Corpus corpus = load_manifest(manifest);
  const SpeakerSubset subset = filter_speakers(corpus, parse_filter(filters));
  auto scores = proximal_scores(subset, corpus);
  std::stable_sort(scores.begin(), scores.end(), [](const auto &a, const auto &b) {
    return a.summed_distance < b.summed_distance;
  });
  out << "proximal\t" << scores.front().id << '\n';
  char buf[64];
  for (const auto &s : scores) {
    std::snprintf(buf, sizeof(buf), "%.6f", s.summed_distance);
    out << s.id << '\t' << buf << '\n';
  }
  return kExitOk;
}

struct ExperimentSpec {
  std::string manifest;
  AttributePredicate target_filter;
  std::vector<Mismatch> mismatches;
  EvalConfig config;
  std::string output;
  std::string format = "md";
};

ExperimentSpec read_experiment_config(const std::string &path) {
  if (!fs::exists(path))
    throw Error(ErrorCode::kFileNotFound, "config " + path + " not found");
  std::ifstream in(path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw Error(ErrorCode::kMalformedManifest, path + " is not a JSON object");
  ExperimentSpec spec;
  try {
    spec.manifest = doc.at("manifest").get<std::string>();
    if (doc.contains("target_filter"))
      spec.target_filter = doc.at("target_filter").get<AttributePredicate>();
    for (const auto &m : doc.value("mismatches", json::array())) {
      spec.mismatches.push_back({m.at("attribute").get<std::string>(),
                                 m.at("value").get<std::string>(),
                                 m.value("label", std::string())});
    }
    spec.config.nbins = doc.value("nbins", kDefaultBins);
    spec.config.tau = doc.value("tau", kDefaultTau);
    spec.config.range = parse_range(doc.value("range", std::string("shared")));
    spec.output = doc.value("output", std::string());
    spec.format = doc.value("format", std::string("md"));
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedManifest,
                path + ": " + std::string(e.what()));
  }
  return spec;
}

int cmd_experiment(const std::string &config_path, const std::string &out_flag,
                   const std::string &format_flag, std::ostream &out,
                   std::ostream &err) {
  ExperimentSpec spec = read_experiment_config(config_path);
  if (!out_flag.empty()) spec.output = out_flag;
  if (!format_flag.empty()) spec.format = format_flag;
  const ReportFormat format = parse_format(spec.format);
  check_config(spec.config);

  const Corpus corpus = load_manifest(spec.manifest);
  const auto rows =
      run_experiment(corpus, spec.target_filter, spec.mismatches, spec.config);
  write_output(render_rows(rows, format), spec.output, out);

  bool failed = false;
  for (const auto &row : rows) {
    if (!row.error) continue;
    failed = true;
    err << "row '" << row.label << "': " << row.error->code_name() << ": "
        << row.error->what() << '\n';
  }
  return failed ? kExitDomain : kExitOk;
}

struct SynthOptions {
  std::string out_dir;
  SynthConfig config;
  std::vector<std::string> attrs;
  std::vector<std::string> converts;
  bool force = false;
  bool csv = false;
};

int cmd_synth(const SynthOptions &o, std::ostream &out) {
  const fs::path dir(o.out_dir);
  if (fs::exists(dir)) {
    if (!o.force)
      throw Error(ErrorCode::kOutputExists,
                  dir.string() + " exists; pass --force to overwrite");
    if (!fs::is_directory(dir))
      throw Error(ErrorCode::kOutputExists, dir.string() + " is not a directory");
    // Only what a previous synth run wrote.
    std::error_code ec;
    fs::remove(dir / "manifest.json", ec);
    fs::remove_all(dir / "embeddings", ec);
  }

  SynthConfig config = o.config;
  for (const auto &a : o.attrs)
    config.attribute_plan.push_back(parse_attr(a, config.n_speakers));
  Corpus corpus = generate_corpus(config);

  std::vector<ConversionSimConfig> convs;
  for (std::size_t i = 0; i < o.converts.size(); ++i) {
    convs.push_back(parse_convert(o.converts[i], config, i));
    convs.back().id = add_conversion(corpus, convs.back()).id;
  }
  corpus.provenance = provenance_json(config, convs);

  const fs::path manifest = write_corpus(
      corpus, dir, o.csv ? EmbeddingFormat::kCsv : EmbeddingFormat::kBinary);
  out << manifest.string() << '\n';
  return kExitOk;
}

}  // namespace

int exit_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound:
    case ErrorCode::kIoError:
    case ErrorCode::kMalformedManifest:
    case ErrorCode::kUnresolvableReference:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kOutputExists:
      return kExitIo;
    default:
      return kExitDomain;
  }
}

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"vcleak: source-speaker leakage in voice-converted speech"};
  app.name("vcleak");
  app.require_subcommand(1);

  std::string validate_manifest;
  auto *validate_cmd =
      app.add_subcommand("validate", "Check a corpus manifest against its invariants");
  validate_cmd->add_option("manifest", validate_manifest, "Corpus manifest")
      ->required();

  std::string proximal_manifest;
  std::vector<std::string> proximal_filter;
  auto *proximal_cmd = app.add_subcommand(
      "proximal", "Proximal speaker of an attribute-filtered subset");
  proximal_cmd->add_option("manifest", proximal_manifest, "Corpus manifest")
      ->required();
  proximal_cmd->add_option("--filter,-f", proximal_filter,
                           "Attribute constraint key=value (repeatable)");

  PairOptions eval_opts;
  std::string eval_out;
  std::string eval_format = "json";
  auto *eval_cmd =
      app.add_subcommand("eval", "Leakage report for one (P, D, P') triple");
  add_pair_options(eval_cmd, eval_opts);
  eval_cmd->add_option("--tau", eval_opts.tau, "Scenario threshold in (0, 1)")
      ->capture_default_str();
  eval_cmd->add_option("--format", eval_format, "json, csv or md")
      ->capture_default_str();
  eval_cmd->add_option("--out,-o", eval_out, "Output file (default: stdout)");

  std::string experiment_config;
  std::string experiment_out;
  std::string experiment_format;
  auto *experiment_cmd = app.add_subcommand(
      "experiment", "Mismatch experiment from a JSON config");
  experiment_cmd->add_option("config", experiment_config, "Experiment config")
      ->required();
  experiment_cmd->add_option("--out,-o", experiment_out,
                             "Output file (overrides config 'output')");
  experiment_cmd->add_option("--format", experiment_format,
                             "json, csv or md (overrides config 'format')");

  SynthOptions synth;
  auto *synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic corpus with conversions");
  synth_cmd->add_option("--out,-o", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--speakers", synth.config.n_speakers)->capture_default_str();
  synth_cmd->add_option("--utterances", synth.config.n_utterances)
      ->capture_default_str();
  synth_cmd->add_option("--dim", synth.config.dim)->capture_default_str();
  synth_cmd->add_option("--sigma", synth.config.sigma)->capture_default_str();
  synth_cmd->add_option("--seed", synth.config.seed)->capture_default_str();
  synth_cmd->add_option("--attr", synth.attrs,
                        "key=v1,v2 (cyclic) or key=v1:n1,v2:n2 (blocks)");
  synth_cmd->add_option("--convert", synth.converts,
                        "src=ID,tgt=ID,alpha=A[,n=N][,sigma=S][,seed=K][,id=ID]");
  synth_cmd->add_flag("--force", synth.force, "Overwrite an existing corpus");
  synth_cmd->add_flag("--csv", synth.csv, "Write embeddings as CSV text");

  PairOptions hist_opts;
  std::string hist_out;
  auto *hist_cmd = app.add_subcommand("hist", "Dump B/R/G histograms as TSV");
  add_pair_options(hist_cmd, hist_opts);
  hist_cmd->add_option("--out,-o", hist_out, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: usage: " << e.what() << '\n';
    return kExitIo;
  }

  try {
    if (*validate_cmd) return cmd_validate(validate_manifest, out, err);
    if (*proximal_cmd) return cmd_proximal(proximal_manifest, proximal_filter, out);
    if (*eval_cmd) {
      const ReportFormat format = parse_format(eval_format);
      write_output(render_report(evaluate_pair(eval_opts), format), eval_out, out);
      return kExitOk;
    }
    if (*experiment_cmd)
      return cmd_experiment(experiment_config, experiment_out, experiment_format,
                            out, err);
    if (*synth_cmd) return cmd_synth(synth, out);
    if (*hist_cmd) {
      write_output(render_histogram_tsv(evaluate_pair(hist_opts)), hist_out, out);
      return kExitOk;
    }
  } catch (const Error &e) {
    return fail(err, e);
  } catch (const std::exception &e) {
    err << "error: internal: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitIo;
}

}  // namespace vcleak::cli

// src/report.cpp

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

#include "vcleak/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace vcleak {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

std::string fixed4(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string md_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out.push_back(c);
  }
  return out;
}

// RFC 4180 quoting, only when needed.
std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

double get_number(const json &doc, const char *key) {
  if (!doc.contains(key) || !doc.at(key).is_number())
    throw Error(ErrorCode::kMalformedManifest,
                std::string("report: '") + key + "' must be a number");
  return doc.at(key).get<double>();
}

std::string get_string(const json &doc, const char *key) {
  if (!doc.contains(key) || !doc.at(key).is_string())
    throw Error(ErrorCode::kMalformedManifest,
                std::string("report: '") + key + "' must be a string");
  return doc.at(key).get<std::string>();
}

std::vector<double> get_masses(const json &hist, const char *key,
                               std::size_t nbins) {
  if (!hist.contains(key) || !hist.at(key).is_array())
    throw Error(ErrorCode::kMalformedManifest,
                std::string("report: hist.") + key + " must be an array");
  auto out = hist.at(key).get<std::vector<double>>();
  if (out.size() != nbins)
    throw Error(ErrorCode::kMalformedManifest,
                std::string("report: hist.") + key + " has " +
                    std::to_string(out.size()) + " entries, nbins is " +
                    std::to_string(nbins));
  return out;
}

const char *kCsvHeader =
    "label,target,source,conversion,n,emd_br,emd_rg,emd_bg,L,scenario,tau,"
    "nbins,error\n";

void csv_row(std::ostringstream &os, std::string_view label,
             const LeakageReport &r) {
  os << csv_field(label) << ',' << csv_field(r.target) << ','
     << csv_field(r.source) << ',' << csv_field(r.conversion) << ',' << r.n
     << ',' << format_double(r.triple.br) << ',' << format_double(r.triple.rg)
     << ',' << format_double(r.triple.bg) << ',' << format_double(r.L) << ','
     << scenario_name(r.scenario) << ',' << format_double(r.tau) << ','
     << r.nbins << ",\n";
}

const char *kMdHeader =
    "| Source mismatch | P | D | n | EMD(B,R) | EMD(R,G) | EMD(B,G) | L | "
    "Scenario |\n"
    "|---|---|---|---:|---:|---:|---:|---:|---|\n";

void md_row(std::ostringstream &os, std::string_view label,
            const LeakageReport &r) {
  os << "| " << md_escape(label) << " | " << md_escape(r.target) << " | "
     << md_escape(r.source) << " | " << r.n << " | " << fixed4(r.triple.br)
     << " | " << fixed4(r.triple.rg) << " | " << fixed4(r.triple.bg) << " | "
     << fixed4(r.L) << " | " << scenario_name(r.scenario) << " |\n";
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ojson report_to_json(const LeakageReport &r) {
  ojson doc;
  doc["target"] = r.target;
  doc["source"] = r.source;
  doc["conversion"] = r.conversion;
  doc["n"] = r.n;
  doc["emd_br"] = r.triple.br;
  doc["emd_rg"] = r.triple.rg;
  doc["emd_bg"] = r.triple.bg;
  if (std::isinf(r.L)) doc["L"] = "inf";
  else doc["L"] = r.L;
  doc["scenario"] = scenario_name(r.scenario);
  doc["tau"] = r.tau;
  doc["nbins"] = r.nbins;
  doc["edges"] = {{"lo", r.edges.lo()}, {"hi", r.edges.hi()}};
  doc["hist"] = {{"B", r.hist_b}, {"R", r.hist_r}, {"G", r.hist_g}};
  return doc;
}

LeakageReport report_from_json(const json &doc) {
  if (!doc.is_object())
    throw Error(ErrorCode::kMalformedManifest, "report must be a JSON object");
  LeakageReport r;
  r.target = get_string(doc, "target");
  r.source = get_string(doc, "source");
  r.conversion = get_string(doc, "conversion");
  if (!doc.contains("n") || !doc.at("n").is_number_unsigned())
    throw Error(ErrorCode::kMalformedManifest, "report: 'n' must be a count");
  r.n = doc.at("n").get<std::size_t>();
  r.triple.br = get_number(doc, "emd_br");
  r.triple.rg = get_number(doc, "emd_rg");
  r.triple.bg = get_number(doc, "emd_bg");
  if (doc.contains("L") && doc.at("L").is_string() &&
      doc.at("L").get<std::string>() == "inf")
    r.L = std::numeric_limits<double>::infinity();
  else
    r.L = get_number(doc, "L");
  const auto scenario = parse_scenario(get_string(doc, "scenario"));
  if (!scenario)
    throw Error(ErrorCode::kMalformedManifest, "report: unknown scenario");
  r.scenario = *scenario;
  r.tau = get_number(doc, "tau");
  if (!doc.contains("nbins") || !doc.at("nbins").is_number_unsigned())
    throw Error(ErrorCode::kMalformedManifest, "report: 'nbins' must be a count");
  r.nbins = doc.at("nbins").get<std::size_t>();
  if (!doc.contains("edges") || !doc.contains("hist"))
    throw Error(ErrorCode::kMalformedManifest, "report: missing edges or hist");
  r.edges = BinEdges(get_number(doc.at("edges"), "lo"),
                     get_number(doc.at("edges"), "hi"), r.nbins);
  r.hist_b = get_masses(doc.at("hist"), "B", r.nbins);
  r.hist_r = get_masses(doc.at("hist"), "R", r.nbins);
  r.hist_g = get_masses(doc.at("hist"), "G", r.nbins);
  return r;
}

std::string render_report(const LeakageReport &report, ReportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ReportFormat::kJson:
      os << report_to_json(report).dump(2) << '\n';
      break;
    case ReportFormat::kCsv:
      os << kCsvHeader;
      csv_row(os, "-", report);
      break;
    case ReportFormat::kMarkdown:
      os << kMdHeader;
      md_row(os, "-", report);
      break;
  }
  return os.str();
}

std::string render_rows(std::span<const ExperimentRow> rows, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::kJson) {
    ojson doc = ojson::array();
    for (const auto &row : rows) {
      ojson entry;
      entry["label"] = row.label;
      entry["target"] = row.target;
      entry["source"] = row.source;
      entry["n"] = row.n;
      if (row.report) entry["report"] = report_to_json(*row.report);
      if (row.error)
        entry["error"] = {{"code", row.error->code_name()},
                          {"message", row.error->what()}};
      doc.push_back(std::move(entry));
    }
    os << doc.dump(2) << '\n';
    return os.str();
  }

  os << (format == ReportFormat::kCsv ? kCsvHeader : kMdHeader);
  for (const auto &row : rows) {
    if (row.report) {
      if (format == ReportFormat::kCsv) csv_row(os, row.label, *row.report);
      else md_row(os, row.label, *row.report);
      continue;
    }
    const std::string code =
        row.error ? std::string(row.error->code_name()) : "unknown";
    if (format == ReportFormat::kCsv) {
      os << csv_field(row.label) << ',' << csv_field(row.target) << ','
         << csv_field(row.source) << ",," << row.n << ",,,,,,,,"
         << csv_field(code) << '\n';
    } else {
      os << "| " << md_escape(row.label) << " | " << md_escape(row.target)
         << " | " << md_escape(row.source) << " | " << row.n
         << " | - | - | - | - | error: " << code << " |\n";
    }
  }
  return os.str();
}

std::string render_histogram_tsv(const LeakageReport &r) {
  std::ostringstream os;
  os << "bin_lo\tbin_hi\tmass_B\tmass_R\tmass_G\n";
  for (std::size_t i = 0; i < r.nbins; ++i) {
    os << format_double(r.edges.edge(i)) << '\t'
       << format_double(r.edges.edge(i + 1)) << '\t'
       << format_double(r.hist_b[i]) << '\t' << format_double(r.hist_r[i])
       << '\t' << format_double(r.hist_g[i]) << '\n';
  }
  return os.str();
}

}  // namespace vcleak

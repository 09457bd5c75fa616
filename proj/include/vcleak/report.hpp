// include/vcleak/report.hpp

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

#ifndef VCLEAK_REPORT_HPP_
#define VCLEAK_REPORT_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "vcleak/leakage.hpp"

namespace vcleak {

enum class ReportFormat { kJson, kCsv, kMarkdown };

std::optional<ReportFormat> parse_report_format(std::string_view name);

/// Keys: target, source, conversion, n, emd_br, emd_rg, emd_bg, L (number,
/// or the string "inf"), scenario, tau, nbins, edges {lo, hi},
/// hist {B, R, G}. Doubles are written at round-trip precision.
nlohmann::ordered_json report_to_json(const LeakageReport &report);

/// Inverse of report_to_json; throws kMalformedManifest on schema errors.
LeakageReport report_from_json(const nlohmann::json &doc);

/// A single evaluation rendered as a complete document.
std::string render_report(const LeakageReport &report, ReportFormat format);

/// Experiment rows, one per mismatch plus the matched control. The markdown
/// table lists EMD(B,R), EMD(R,G), EMD(B,G) and L at 4 decimal places.
std::string render_rows(std::span<const ExperimentRow> rows, ReportFormat format);

/// Plot data: header `bin_lo bin_hi mass_B mass_R mass_G` (tab separated),
/// then one row per bin.
std::string render_histogram_tsv(const LeakageReport &report);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace vcleak

#endif  // VCLEAK_REPORT_HPP_

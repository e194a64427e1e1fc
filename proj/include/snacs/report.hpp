// include/snacs/report.hpp

// Copyright 2026 The snacs-zh Authors
//
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

#pragma once

// JSON ("structured") and plain-text renderings shared by the CLI and the
// HTTP service. Field names here are the documented output schema.

#include <string>
#include <vector>

#include <json.hpp>

#include "snacs/agreement.hpp"
#include "snacs/alignment.hpp"
#include "snacs/construal_stats.hpp"
#include "snacs/corpus.hpp"
#include "snacs/hierarchy.hpp"
#include "snacs/targets.hpp"

namespace snacs {

using nlohmann::json;

json to_json(const Hierarchy& h);
json to_json(const Label& label);
json to_json(const TargetAnnotation& t, const AnnotatedDocument& doc);
json to_json(const AnnotatedDocument& doc);
json to_json(const TargetCandidate& c, const AnnotatedDocument& doc);
json to_json(const TargetDiff& d);
json to_json(const Violation& v, std::size_t line = 0);
json to_json(const AgreementReport& r);
json to_json(const AlignmentPair& p, const AnnotatedDocument& en, const AnnotatedDocument& zh);
json to_json(const MatchReport& r);
json to_json(const IdentityRate& r);
json to_json(const CrossTab& t);
json to_json(const DivergenceReport& r);
json to_json(const ConstrualInventory& inv);

/// Identity rate, crosstab, inventory and divergence of one layer.
json stats_json(const AnnotatedDocument& doc, const std::string& annotator,
                std::span<const TargetAnnotation> layer, const Hierarchy& h);

std::string render_identity_rate(const IdentityRate& r, const std::string& row_label);
std::string render_crosstab(const CrossTab& t);
std::string render_inventory(const ConstrualInventory& inv);
std::string render_divergence(const DivergenceReport& r);
std::string render_agreement(const std::vector<AgreementReport>& reports);
std::string render_match(const MatchReport& r);

}  // namespace snacs

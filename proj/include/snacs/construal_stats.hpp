// include/snacs/construal_stats.hpp

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

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "snacs/corpus.hpp"
#include "snacs/hierarchy.hpp"

namespace snacs {

// Statistics run over one annotator layer (or an adjudicated layer stored
// under its own annotator id).

/// The named layer, or the only layer when `annotator` is unset. Throws
/// kBadField when unset and the document holds several layers.
std::vector<TargetAnnotation> select_layer(const AnnotatedDocument& doc,
                                           const std::optional<std::string>& annotator);

// Integer percent, rounded half up; 0 for an empty denominator.
int rounded_percent(std::size_t num, std::size_t den);

struct IdentityRate {
  std::size_t same_count = 0;   // construals with scene == function
  std::size_t total_count = 0;  // all targets, specials included
  std::optional<double> rate;

  int percent() const { return rounded_percent(same_count, total_count); }
};

IdentityRate identity_rate(std::span<const TargetAnnotation> layer);

/// Function subhierarchy by scene subhierarchy.
struct CrossTab {
  std::array<std::array<std::size_t, 3>, 3> counts{};  // [function][scene]

  std::size_t& at(Subhierarchy function, Subhierarchy scene) {
    return counts[index_of(function)][index_of(scene)];
  }
  std::size_t at(Subhierarchy function, Subhierarchy scene) const {
    return counts[index_of(function)][index_of(scene)];
  }
  std::size_t row_total(Subhierarchy function) const;
  std::size_t column_total(Subhierarchy scene) const;
  std::size_t total() const;
  std::size_t diagonal_total() const;
  std::size_t offdiagonal_total() const { return total() - diagonal_total(); }

  CrossTab& operator+=(const CrossTab& other);
  friend bool operator==(const CrossTab&, const CrossTab&) = default;
};

/// Special-label targets are left out.
CrossTab subhierarchy_crosstab(std::span<const TargetAnnotation> layer, const Hierarchy& h);

struct AdpositionDivergence {
  std::string form;
  std::size_t tokens = 0;     // all targets with this form, specials included
  std::size_t divergent = 0;  // scene != function
  std::map<Construal, std::size_t> construals;
};

struct DivergenceReport {
  std::vector<AdpositionDivergence> forms;  // sorted by form
  std::size_t divergent_tokens = 0;
  std::size_t identity_tokens = 0;
  std::size_t forms_among_divergent = 0;  // distinct forms with a divergent token
  std::size_t forms_among_identity = 0;   // distinct forms with an identity token
};

DivergenceReport divergence_by_adposition(const AnnotatedDocument& doc,
                                          std::span<const TargetAnnotation> layer);

struct ConstrualInventory {
  std::map<Construal, std::size_t> counts;
  std::map<std::string, std::size_t> special_counts;
  std::size_t n_tokens = 0;  // specials included

  std::size_t n_construal_types() const { return counts.size(); }
  std::size_t n_distinct_scene_labels() const;
  std::size_t n_distinct_function_labels() const;
  /// Descending count, ties broken by (scene, function).
  std::vector<std::pair<Construal, std::size_t>> ranked() const;

  ConstrualInventory& operator+=(const ConstrualInventory& other);
  friend bool operator==(const ConstrualInventory&, const ConstrualInventory&) = default;
};

ConstrualInventory construal_inventory(std::span<const TargetAnnotation> layer);

}  // namespace snacs

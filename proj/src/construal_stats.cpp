// src/construal_stats.cpp

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

#include "snacs/construal_stats.hpp"

#include <algorithm>
#include <set>

#include "snacs/error.hpp"

namespace snacs {

std::vector<TargetAnnotation> select_layer(const AnnotatedDocument& doc,
                                           const std::optional<std::string>& annotator) {
  if (annotator) return doc.layer(*annotator);
  const auto ids = doc.annotators();
  if (ids.empty()) return {};
  if (ids.size() > 1) {
    throw Error(ErrorCode::kBadField,
                "document " + doc.doc_id + " has " + std::to_string(ids.size()) +
                    " annotator layers; choose one");
  }
  return doc.layer(ids.front());
}

int rounded_percent(std::size_t num, std::size_t den) {
  if (den == 0) return 0;
  return static_cast<int>((200 * num + den) / (2 * den));
}

IdentityRate identity_rate(std::span<const TargetAnnotation> layer) {
  IdentityRate r;
  for (const TargetAnnotation& t : layer) {
    ++r.total_count;
    if (const Construal* c = as_construal(t.label); c != nullptr && c->is_identity()) ++r.same_count;
  }
  if (r.total_count > 0) {
    r.rate = static_cast<double>(r.same_count) / static_cast<double>(r.total_count);
  }
  return r;
}

std::size_t CrossTab::row_total(Subhierarchy function) const {
  std::size_t sum = 0;
  for (Subhierarchy s : kSubhierarchies) sum += at(function, s);
  return sum;
}

std::size_t CrossTab::column_total(Subhierarchy scene) const {
  std::size_t sum = 0;
  for (Subhierarchy f : kSubhierarchies) sum += at(f, scene);
  return sum;
}

std::size_t CrossTab::total() const {
  std::size_t sum = 0;
  for (Subhierarchy f : kSubhierarchies) sum += row_total(f);
  return sum;
}

std::size_t CrossTab::diagonal_total() const {
  std::size_t sum = 0;
  for (Subhierarchy s : kSubhierarchies) sum += at(s, s);
  return sum;
}

CrossTab& CrossTab::operator+=(const CrossTab& other) {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) counts[i][j] += other.counts[i][j];
  }
  return *this;
}

CrossTab subhierarchy_crosstab(std::span<const TargetAnnotation> layer, const Hierarchy& h) {
  CrossTab tab;
  for (const TargetAnnotation& t : layer) {
    const Construal* c = as_construal(t.label);
    if (c == nullptr) continue;
    const Subhierarchy scene = h.subhierarchy_of(h.at(c->scene));
    const Subhierarchy function = h.subhierarchy_of(h.at(c->function));
    ++tab.at(function, scene);
  }
  return tab;
}

DivergenceReport divergence_by_adposition(const AnnotatedDocument& doc,
                                          std::span<const TargetAnnotation> layer) {
  std::map<std::string, AdpositionDivergence> by_form;
  std::set<std::string> divergent_forms, identity_forms;
  DivergenceReport r;
  for (const TargetAnnotation& t : layer) {
    const std::string form = doc.target_form(t);
    AdpositionDivergence& entry = by_form[form];
    entry.form = form;
    ++entry.tokens;
    const Construal* c = as_construal(t.label);
    if (c == nullptr) continue;
    ++entry.construals[*c];
    if (c->is_identity()) {
      ++r.identity_tokens;
      identity_forms.insert(form);
    } else {
      ++entry.divergent;
      ++r.divergent_tokens;
      divergent_forms.insert(form);
    }
  }
  for (auto& [form, entry] : by_form) r.forms.push_back(std::move(entry));
  r.forms_among_divergent = divergent_forms.size();
  r.forms_among_identity = identity_forms.size();
  return r;
}

std::size_t ConstrualInventory::n_distinct_scene_labels() const {
  std::set<std::string> labels;
  for (const auto& [c, n] : counts) labels.insert(c.scene);
  return labels.size();
}

std::size_t ConstrualInventory::n_distinct_function_labels() const {
  std::set<std::string> labels;
  for (const auto& [c, n] : counts) labels.insert(c.function);
  return labels.size();
}

std::vector<std::pair<Construal, std::size_t>> ConstrualInventory::ranked() const {
  std::vector<std::pair<Construal, std::size_t>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

ConstrualInventory& ConstrualInventory::operator+=(const ConstrualInventory& other) {
  for (const auto& [c, n] : other.counts) counts[c] += n;
  for (const auto& [s, n] : other.special_counts) special_counts[s] += n;
  n_tokens += other.n_tokens;
  return *this;
}

ConstrualInventory construal_inventory(std::span<const TargetAnnotation> layer) {
  ConstrualInventory inv;
  for (const TargetAnnotation& t : layer) {
    ++inv.n_tokens;
    if (const Construal* c = as_construal(t.label)) {
      ++inv.counts[*c];
    } else {
      ++inv.special_counts[std::get<SpecialLabel>(t.label).name];
    }
  }
  return inv;
}

}  // namespace snacs

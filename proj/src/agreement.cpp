// src/agreement.cpp

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

#include "snacs/agreement.hpp"

#include <set>

#include "snacs/error.hpp"

namespace snacs {

std::string_view to_string(Projection p) {
  switch (p) {
    case Projection::kSceneRole: return "scene";
    case Projection::kFunction: return "function";
    case Projection::kConstrual: return "construal";
  }
  return "?";
}

std::optional<Projection> parse_projection(std::string_view s) {
  for (Projection p : kProjections) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

std::string project(const Label& label, Projection p) {
  switch (p) {
    case Projection::kSceneRole: return scene_value(label);
    case Projection::kFunction: return function_value(label);
    case Projection::kConstrual: return display(label);
  }
  return {};
}

ComparableItems comparable_items(const AnnotatedDocument& doc,
                                 std::span<const std::string> annotators) {
  const std::set<std::string> wanted(annotators.begin(), annotators.end());
  if (wanted.size() < 2) {
    throw Error(ErrorCode::kTooFewAnnotators, "agreement needs at least two annotators");
  }
  ComparableItems out;
  out.annotators.assign(wanted.begin(), wanted.end());

  // Spans keyed in document order so items come out in reading order.
  std::map<std::pair<std::size_t, std::vector<int>>, AgreementItem> spans;
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) position.emplace(doc.sentences[i].id, i);

  for (const TargetAnnotation& t : doc.annotations) {
    if (wanted.count(t.annotator) == 0) continue;
    const auto pos = position.find(t.sentence_id);
    const std::size_t sp = pos == position.end() ? doc.sentences.size() : pos->second;
    AgreementItem& item = spans[{sp, t.token_indices}];
    item.sentence_id = t.sentence_id;
    item.token_indices = t.token_indices;
    item.labels.emplace(t.annotator, t.label);
  }
  for (auto& [key, item] : spans) {
    if (item.labels.size() == wanted.size()) {
      out.items.push_back(std::move(item));
    } else {
      ++out.excluded;
    }
  }
  return out;
}

double cohen_kappa(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() || a.size() != b.size()) {
    throw Error(ErrorCode::kEmptyItems, "kappa needs two non-empty sequences of equal length");
  }
  const double n = static_cast<double>(a.size());
  std::map<std::string_view, double> ma, mb;
  double agree = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma[a[i]] += 1.0;
    mb[b[i]] += 1.0;
    if (a[i] == b[i]) agree += 1.0;
  }
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [label, count] : ma) {
    const auto it = mb.find(label);
    if (it != mb.end()) p_e += (count / n) * (it->second / n);
  }
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

namespace {

std::vector<std::string> column(const ComparableItems& items, std::string_view annotator,
                                Projection p) {
  std::vector<std::string> out;
  out.reserve(items.items.size());
  for (const AgreementItem& item : items.items) {
    const auto it = item.labels.find(std::string(annotator));
    if (it == item.labels.end()) {
      throw Error(ErrorCode::kTooFewAnnotators,
                  "annotator " + std::string(annotator) + " missing from comparable items");
    }
    out.push_back(project(it->second, p));
  }
  return out;
}

void require_items(const ComparableItems& items) {
  if (items.items.empty()) throw Error(ErrorCode::kEmptyItems, "no comparable items");
  if (items.annotators.size() < 2) {
    throw Error(ErrorCode::kTooFewAnnotators, "agreement needs at least two annotators");
  }
}

template <typename F>
double mean_over_pairs(const ComparableItems& items, F&& per_pair) {
  double sum = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < items.annotators.size(); ++i) {
    for (std::size_t j = i + 1; j < items.annotators.size(); ++j) {
      sum += per_pair(items.annotators[i], items.annotators[j]);
      ++pairs;
    }
  }
  return sum / pairs;
}

double match_fraction(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i] ? 1 : 0;
  return static_cast<double>(same) / static_cast<double>(a.size());
}

}  // namespace

double cohen_kappa(const ComparableItems& items, std::string_view annotator_a,
                   std::string_view annotator_b, Projection p) {
  if (items.items.empty()) throw Error(ErrorCode::kEmptyItems, "no comparable items");
  return cohen_kappa(column(items, annotator_a, p), column(items, annotator_b, p));
}

double raw_agreement(const ComparableItems& items, Projection p) {
  require_items(items);
  return mean_over_pairs(items, [&](const std::string& a, const std::string& b) {
    return match_fraction(column(items, a, p), column(items, b, p));
  });
}

double all_agree_fraction(const ComparableItems& items, Projection p) {
  require_items(items);
  std::size_t agree = 0;
  for (const AgreementItem& item : items.items) {
    std::set<std::string> values;
    for (const auto& [annotator, label] : item.labels) values.insert(project(label, p));
    agree += values.size() == 1 ? 1 : 0;
  }
  return static_cast<double>(agree) / static_cast<double>(items.items.size());
}

double average_pairwise_kappa(const ComparableItems& items, Projection p) {
  require_items(items);
  return mean_over_pairs(items, [&](const std::string& a, const std::string& b) {
    return cohen_kappa(items, a, b, p);
  });
}

AgreementReport agreement_report(const ComparableItems& items, Projection p) {
  require_items(items);
  AgreementReport r;
  r.projection = p;
  r.n_items = items.items.size();
  r.excluded_items = items.excluded;
  r.raw = raw_agreement(items, p);
  r.raw_all_agree = all_agree_fraction(items, p);
  for (std::size_t i = 0; i < items.annotators.size(); ++i) {
    for (std::size_t j = i + 1; j < items.annotators.size(); ++j) {
      r.kappa_pairwise[{items.annotators[i], items.annotators[j]}] =
          cohen_kappa(items, items.annotators[i], items.annotators[j], p);
    }
  }
  double sum = 0.0;
  for (const auto& [pair, k] : r.kappa_pairwise) sum += k;
  r.kappa_mean = sum / static_cast<double>(r.kappa_pairwise.size());
  return r;
}

}  // namespace snacs

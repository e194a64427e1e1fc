// src/hierarchy.cpp

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

#include "snacs/hierarchy.hpp"

#include <fstream>

#include "snacs/error.hpp"
#include "text_util.hpp"

namespace snacs {

std::string_view abbreviation(Subhierarchy s) {
  switch (s) {
    case Subhierarchy::kCircumstance: return "CIRC";
    case Subhierarchy::kParticipant: return "PART";
    case Subhierarchy::kConfiguration: return "CONF";
  }
  return "?";
}

std::string_view display_name(Subhierarchy s) {
  switch (s) {
    case Subhierarchy::kCircumstance: return "Circumstance";
    case Subhierarchy::kParticipant: return "Participant";
    case Subhierarchy::kConfiguration: return "Configuration";
  }
  return "?";
}

std::optional<Subhierarchy> parse_subhierarchy(std::string_view abbrev) {
  for (Subhierarchy s : kSubhierarchies) {
    if (abbreviation(s) == abbrev) return s;
  }
  return std::nullopt;
}

namespace {

struct RawNode {
  std::string name;
  std::string parent;  // empty for roots
  Subhierarchy declared;
  std::size_t line;
};

}  // namespace

Hierarchy Hierarchy::load(std::istream& in) {
  Hierarchy h;
  std::vector<RawNode> raw;
  std::string line;
  std::size_t line_no = 0;
  bool have_version = false;

  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    const std::string_view text = detail::trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const std::string_view body = detail::trim(text.substr(1));
      constexpr std::string_view kKey = "version:";
      if (body.substr(0, kKey.size()) == kKey) {
        h.version_ = std::string(detail::trim(body.substr(kKey.size())));
        have_version = !h.version_.empty();
      }
      continue;
    }
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kBadColumnCount,
                  "expected 3 tab-separated fields, got " + std::to_string(fields.size()),
                  line_no);
    }
    const std::string_view name = detail::trim(fields[0]);
    const std::string_view parent = detail::trim(fields[1]);
    if (name.empty() || parent.empty()) {
      throw Error(ErrorCode::kBadField, "empty label or parent field", line_no);
    }
    const auto sub = parse_subhierarchy(detail::trim(fields[2]));
    if (!sub) {
      throw Error(ErrorCode::kBadField,
                  "bad subhierarchy '" + std::string(fields[2]) + "' for " + std::string(name),
                  line_no);
    }
    raw.push_back({std::string(name), parent == "-" ? std::string() : std::string(parent),
                   *sub, line_no});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failure on hierarchy stream");
  if (!have_version) {
    throw Error(ErrorCode::kMissingVersion, "hierarchy file lacks a '# version:' header");
  }

  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto [it, inserted] = h.by_lower_name_.emplace(detail::to_lower(raw[i].name), i);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateLabel, "duplicate label " + raw[i].name, raw[i].line);
    }
  }

  h.nodes_.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Supersense& node = h.nodes_[i];
    node.id = i;
    node.name = raw[i].name;
    node.subhierarchy = raw[i].declared;
    if (!raw[i].parent.empty()) {
      const auto it = h.by_lower_name_.find(detail::to_lower(raw[i].parent));
      if (it == h.by_lower_name_.end()) {
        throw Error(ErrorCode::kUnknownParent,
                    "unknown parent " + raw[i].parent + " of " + raw[i].name, raw[i].line);
      }
      node.parent = it->second;
    }
  }

  // Cycle check: a chain longer than the node count must revisit something.
  for (std::size_t i = 0; i < h.nodes_.size(); ++i) {
    std::vector<bool> seen(h.nodes_.size(), false);
    std::size_t cur = i;
    while (true) {
      if (seen[cur]) {
        throw Error(ErrorCode::kCycle, "cyclic parent chain through " + h.nodes_[cur].name,
                    raw[cur].line);
      }
      seen[cur] = true;
      if (!h.nodes_[cur].parent) break;
      cur = *h.nodes_[cur].parent;
    }
  }

  std::array<int, 3> root_count{};
  for (const Supersense& node : h.nodes_) {
    if (!node.parent) {
      ++root_count[index_of(node.subhierarchy)];
      h.roots_[index_of(node.subhierarchy)] = node.id;
    }
  }
  for (Subhierarchy s : kSubhierarchies) {
    if (root_count[index_of(s)] != 1) {
      throw Error(ErrorCode::kRootCount,
                  std::string(abbreviation(s)) + " has " +
                      std::to_string(root_count[index_of(s)]) + " roots, expected 1");
    }
  }

  // Depths and subhierarchy consistency; parents may appear after children.
  for (Supersense& node : h.nodes_) {
    int depth = 0;
    std::size_t cur = node.id;
    while (h.nodes_[cur].parent) {
      cur = *h.nodes_[cur].parent;
      ++depth;
    }
    node.depth = depth;
    if (h.nodes_[cur].subhierarchy != node.subhierarchy) {
      throw Error(ErrorCode::kSubhierarchyMismatch,
                  node.name + " declared " + std::string(abbreviation(node.subhierarchy)) +
                      " but its root " + h.nodes_[cur].name + " is " +
                      std::string(abbreviation(h.nodes_[cur].subhierarchy)),
                  raw[node.id].line);
    }
  }

  if (h.nodes_.size() != kExpectedSize) {
    throw Error(ErrorCode::kNodeCount, "hierarchy has " + std::to_string(h.nodes_.size()) +
                                           " nodes, expected " + std::to_string(kExpectedSize));
  }
  return h;
}

Hierarchy Hierarchy::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return load(in);
}

const Supersense* Hierarchy::lookup(std::string_view label) const {
  const auto it = by_lower_name_.find(detail::to_lower(label));
  return it == by_lower_name_.end() ? nullptr : &nodes_[it->second];
}

const Supersense& Hierarchy::at(std::string_view label) const {
  const Supersense* s = lookup(label);
  if (s == nullptr) {
    throw Error(ErrorCode::kUnknownSupersense, "unknown supersense " + std::string(label));
  }
  return *s;
}

const Supersense* Hierarchy::parent(const Supersense& s) const {
  return s.parent ? &nodes_[*s.parent] : nullptr;
}

const Supersense& Hierarchy::root(Subhierarchy sub) const {
  return nodes_[roots_[index_of(sub)]];
}

Subhierarchy Hierarchy::subhierarchy_of(const Supersense& s) const {
  const Supersense* cur = &s;
  while (cur->parent) cur = &nodes_[*cur->parent];
  return cur->subhierarchy;
}

std::vector<const Supersense*> Hierarchy::ancestors(const Supersense& s) const {
  std::vector<const Supersense*> out;
  for (const Supersense* p = parent(s); p != nullptr; p = parent(*p)) out.push_back(p);
  return out;
}

std::optional<int> Hierarchy::tree_distance(const Supersense& a, const Supersense& b) const {
  if (subhierarchy_of(a) != subhierarchy_of(b)) return std::nullopt;
  const Supersense* x = &a;
  const Supersense* y = &b;
  int dist = 0;
  while (x->depth > y->depth) { x = parent(*x); ++dist; }
  while (y->depth > x->depth) { y = parent(*y); ++dist; }
  while (x != y) {
    x = parent(*x);
    y = parent(*y);
    dist += 2;
  }
  return dist;
}

std::vector<const Supersense*> Hierarchy::members(Subhierarchy sub) const {
  std::vector<const Supersense*> out;
  for (const Supersense& n : nodes_) {
    if (subhierarchy_of(n) == sub) out.push_back(&n);
  }
  return out;
}

}  // namespace snacs

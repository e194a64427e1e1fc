// include/snacs/hierarchy.hpp

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
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace snacs {

enum class Subhierarchy { kCircumstance, kParticipant, kConfiguration };

inline constexpr std::array<Subhierarchy, 3> kSubhierarchies = {
    Subhierarchy::kCircumstance, Subhierarchy::kParticipant,
    Subhierarchy::kConfiguration};

// "CIRC", "PART", "CONF".
std::string_view abbreviation(Subhierarchy s);
// "Circumstance", "Participant", "Configuration".
std::string_view display_name(Subhierarchy s);
std::optional<Subhierarchy> parse_subhierarchy(std::string_view abbrev);
inline std::size_t index_of(Subhierarchy s) { return static_cast<std::size_t>(s); }

struct Supersense {
  std::size_t id = 0;  // position in Hierarchy::nodes()
  std::string name;    // canonical mixed-case label, e.g. "Locus"
  std::optional<std::size_t> parent;
  Subhierarchy subhierarchy = Subhierarchy::kCircumstance;
  int depth = 0;
};

/// The SNACS supersense hierarchy: 50 labels in three disjoint trees.
///
/// Immutable once loaded; every query is const and safe to call from
/// several threads at once.
class Hierarchy {
 public:
  static constexpr std::size_t kExpectedSize = 50;

  /// Reads the tab-separated hierarchy format (`label parent subhierarchy`,
  /// `-` for roots, `# version: ...` header). Throws snacs::Error naming the
  /// offending label on duplicates, unknown parents, cycles, a subhierarchy
  /// column that disagrees with the root, anything other than one root per
  /// subhierarchy, or a node count other than 50.
  static Hierarchy load(std::istream& in);
  static Hierarchy load_file(const std::filesystem::path& path);

  const std::string& version() const { return version_; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const Supersense> nodes() const { return nodes_; }

  /// Case-insensitive; "LOCUS", "locus" and "Locus" all resolve.
  const Supersense* lookup(std::string_view label) const;
  /// Like lookup() but throws kUnknownSupersense.
  const Supersense& at(std::string_view label) const;
  const Supersense& node(std::size_t id) const { return nodes_.at(id); }

  const Supersense* parent(const Supersense& s) const;
  const Supersense& root(Subhierarchy sub) const;

  /// Subhierarchy of the root reached through parent links.
  Subhierarchy subhierarchy_of(const Supersense& s) const;

  /// Path from the parent of `s` up to its root; empty for roots.
  std::vector<const Supersense*> ancestors(const Supersense& s) const;

  /// Edge count of the path through the lowest common ancestor, or nullopt
  /// when the two labels sit in different subhierarchies.
  std::optional<int> tree_distance(const Supersense& a, const Supersense& b) const;

  std::vector<const Supersense*> members(Subhierarchy sub) const;

 private:
  std::string version_;
  std::vector<Supersense> nodes_;
  std::unordered_map<std::string, std::size_t> by_lower_name_;
  std::array<std::size_t, 3> roots_{};
};

}  // namespace snacs

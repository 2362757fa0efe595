#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pecwe/ids.hpp"

namespace pecwe {

/// The CWE View-1003 hierarchy: a rooted DAG at most a few levels deep whose
/// nodes are the view members plus the two special NVD designators. Edges
/// point from parent to child. build() enforces the structural invariants:
/// every edge endpoint is a member, the graph is acyclic, and the special
/// designators never have children.
class CweCatalog {
 public:
  static CweCatalog build(std::set<CweId> nodes,
                          std::map<CweId, std::set<CweId>> child_edges,
                          std::string snapshot_label);

  const std::set<CweId>& nodes() const noexcept { return nodes_; }
  const std::map<CweId, std::set<CweId>>& child_edges() const noexcept {
    return child_edges_;
  }
  const std::string& snapshot_label() const noexcept { return snapshot_label_; }

  bool contains(const CweId& id) const { return nodes_.count(id) != 0; }

  /// Direct children; empty set for leaves.
  const std::set<CweId>& children_of(const CweId& id) const;

  /// All nodes reachable from id via child edges, excluding id itself.
  std::set<CweId> descendants(const CweId& id) const;

  /// Members that are not a child of any other member.
  std::vector<CweId> roots() const;

 private:
  CweCatalog() = default;

  std::set<CweId> nodes_;
  std::map<CweId, std::set<CweId>> child_edges_;
  std::string snapshot_label_;
};

}  // namespace pecwe

#include "pecwe/catalog.hpp"

#include <optional>
#include <utility>
#include <vector>

#include "pecwe/errors.hpp"

namespace pecwe {
namespace {

// Iterative three-color DFS; returns the first node found on a cycle.
std::optional<CweId> find_cycle(const std::set<CweId>& nodes,
                                const std::map<CweId, std::set<CweId>>& edges) {
  enum class Color { White, Gray, Black };
  std::map<CweId, Color> color;
  for (const CweId& n : nodes) color.emplace(n, Color::White);

  for (const CweId& start : nodes) {
    if (color.at(start) != Color::White) continue;
    // Stack of (node, next-child iterator position) pairs.
    std::vector<std::pair<CweId, std::set<CweId>::const_iterator>> stack;
    static const std::set<CweId> kEmpty;
    auto children = [&](const CweId& id) -> const std::set<CweId>& {
      auto it = edges.find(id);
      return it == edges.end() ? kEmpty : it->second;
    };
    color.at(start) = Color::Gray;
    stack.emplace_back(start, children(start).begin());
    while (!stack.empty()) {
      auto& [node, it] = stack.back();
      if (it == children(node).end()) {
        color.at(node) = Color::Black;
        stack.pop_back();
        continue;
      }
      CweId child = *it++;
      Color c = color.at(child);
      if (c == Color::Gray) return child;
      if (c == Color::White) {
        color.at(child) = Color::Gray;
        stack.emplace_back(child, children(child).begin());
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CweCatalog CweCatalog::build(std::set<CweId> nodes,
                             std::map<CweId, std::set<CweId>> child_edges,
                             std::string snapshot_label) {
  for (const CweId& special : {CweId::other(), CweId::noinfo()}) {
    if (nodes.count(special) == 0) {
      fail(ErrorKind::Catalog, "catalog is missing designator " + special.to_string());
    }
    auto it = child_edges.find(special);
    if (it != child_edges.end() && !it->second.empty()) {
      fail(ErrorKind::Catalog, "designator " + special.to_string() + " must not have children");
    }
  }
  for (const auto& [parent, children] : child_edges) {
    if (nodes.count(parent) == 0) {
      fail(ErrorKind::Catalog, "edge from non-member " + parent.to_string());
    }
    for (const CweId& child : children) {
      if (nodes.count(child) == 0) {
        fail(ErrorKind::Catalog, "edge to non-member " + child.to_string());
      }
      if (child == parent) {
        fail(ErrorKind::Catalog, "self-edge on " + parent.to_string());
      }
    }
  }
  if (auto on_cycle = find_cycle(nodes, child_edges)) {
    fail(ErrorKind::Catalog, "cycle through " + on_cycle->to_string());
  }

  CweCatalog catalog;
  catalog.nodes_ = std::move(nodes);
  catalog.child_edges_ = std::move(child_edges);
  catalog.snapshot_label_ = std::move(snapshot_label);
  return catalog;
}

const std::set<CweId>& CweCatalog::children_of(const CweId& id) const {
  static const std::set<CweId> kEmpty;
  auto it = child_edges_.find(id);
  return it == child_edges_.end() ? kEmpty : it->second;
}

std::set<CweId> CweCatalog::descendants(const CweId& id) const {
  if (!contains(id)) {
    fail(ErrorKind::UnknownCwe, id.to_string() + " is not in catalog " + snapshot_label_);
  }
  std::set<CweId> seen;
  std::vector<CweId> frontier{id};
  while (!frontier.empty()) {
    CweId node = frontier.back();
    frontier.pop_back();
    for (const CweId& child : children_of(node)) {
      if (seen.insert(child).second) frontier.push_back(child);
    }
  }
  seen.erase(id);
  return seen;
}

std::vector<CweId> CweCatalog::roots() const {
  std::set<CweId> children;
  for (const auto& [parent, kids] : child_edges_) {
    (void)parent;
    children.insert(kids.begin(), kids.end());
  }
  std::vector<CweId> out;
  for (const CweId& n : nodes_) {
    if (children.count(n) == 0) out.push_back(n);
  }
  return out;
}

}  // namespace pecwe

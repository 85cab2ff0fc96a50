#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ptrie/tree.hpp"

namespace ptrie {

/// Per-node aggregates of a tree, shared by every toll evaluated on it.
///
/// `image[v]` is the node that v's unary chain ends in (v itself unless v
/// has exactly one child), so the fringe tree at v compresses to the
/// patricia trie rooted at image[v]'s children.
struct TreeStats {
  std::vector<std::uint8_t> essential;             // phi_alpha on the tree as given
  std::vector<NodeId> image;                       // end of the unary chain below v
  std::vector<std::uint8_t> compressed_essential;  // phi_alpha on compress(T^v)

  explicit TreeStats(const Tree& t);
};

/// A fringe tree T^v as seen by a toll function. In compressed mode the
/// view presents compress(T^v): unary chains are skipped when walking to
/// children and essentiality refers to the compressed tree.
class Fringe {
public:
  Fringe(const Tree& tree, const TreeStats& stats, NodeId node, bool compressed = false)
      : tree_(&tree), stats_(&stats), node_(node), compressed_(compressed) {}

  const Tree& tree() const noexcept { return *tree_; }
  NodeId node() const noexcept { return node_; }
  bool is_compressed() const noexcept { return compressed_; }

  std::uint32_t leaves() const { return tree_->node(node_).leaves; }
  /// Child count of the root of T^v itself, never compressed.
  std::uint32_t raw_child_count() const { return tree_->node(node_).child_count; }
  std::uint32_t child_count() const { return tree_->node(base()).child_count; }
  Char child_edge(std::size_t i) const { return tree_->node(tree_->child_at(base(), i)).edge; }
  Fringe child(std::size_t i) const {
    return Fringe(*tree_, *stats_, tree_->child_at(base(), i), compressed_);
  }
  bool essential() const {
    return compressed_ ? stats_->compressed_essential[node_] : stats_->essential[node_];
  }

  /// The same fringe tree viewed through compress().
  Fringe compressed() const { return Fringe(*tree_, *stats_, node_, true); }

private:
  NodeId base() const { return compressed_ ? stats_->image[node_] : node_; }

  const Tree* tree_;
  const TreeStats* stats_;
  NodeId node_;
  bool compressed_;
};

/// Toll function phi. chi = phi(single leaf) is computed on construction.
/// `shape_only` marks tolls that ignore prefix attributes and keys; only
/// those may be pulled back to tries. Fringe views never expose prefixes,
/// so the flag records intent for user-defined rules.
class TollFunction {
public:
  using Rule = std::function<double(const Fringe&)>;

  TollFunction(std::string name, Rule rule, bool shape_only = true);

  const std::string& name() const noexcept { return name_; }
  double chi() const noexcept { return chi_; }
  bool shape_only() const noexcept { return shape_only_; }

  double operator()(const Fringe& f) const { return rule_(f); }

private:
  std::string name_;
  Rule rule_;
  bool shape_only_;
  double chi_ = 0.0;
};

/// Values of several additive functionals on one tree.
using FunctionalValue = std::vector<double>;

/// Phi(T) = sum_v phi(T^v) for every toll, in one pass over the tree.
FunctionalValue evaluate_additive(std::span<const TollFunction> tolls, const Tree& t);
double evaluate_additive(const TollFunction& toll, const Tree& t);

/// Phi(T^v) for every node, via Phi(T) = phi(T) + sum_a Phi(T^a).
std::vector<double> subtree_values(const TollFunction& toll, const Tree& t);

/// phi(T^v) for the single node v.
double toll_at(const TollFunction& toll, const Tree& t, NodeId v);

/// Toll on tries inducing Phi o compress: zero at nodes with exactly one
/// child, phi(compress(T^v)) elsewhere. Throws ShapeDependence unless the
/// toll is shape-only.
TollFunction pullback(const TollFunction& toll);

TollFunction phi_k(std::size_t k);       // 1{|T|_e = k}
TollFunction phi_geq(std::size_t k);     // 1{|T|_e >= k}
TollFunction phi_internal();             // 1{T has more than one node}
TollFunction phi_leaf();                 // 1{T is a single node}
TollFunction phi_shape(const Tree& shape);  // 1{T = shape}, ignoring prefixes and keys
/// Essentiality indicator max{0, 1 - sum_b phi_alpha(T^b)}; its additive
/// functional is the independence number.
TollFunction phi_alpha();

/// Parses "k=2", "geq=5", "internal", "leaf", "alpha" or "shape=(0:*,1:*)".
TollFunction parse_toll(const std::string& spec, std::size_t alphabet_size = 2);
/// Comma-separated list; commas inside parentheses belong to shapes.
std::vector<TollFunction> parse_toll_list(const std::string& spec, std::size_t alphabet_size = 2);

/// Number of nodes minus the independence number. Throws EmptyTree.
std::size_t matching_number(const Tree& t);

/// Maximum independent set size by exhaustive search over independent
/// sets. Throws LimitExceeded above 25 nodes.
std::size_t brute_force_independence(const Tree& t);

}  // namespace ptrie

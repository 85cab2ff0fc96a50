#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptrie/random.hpp"
#include "ptrie/source.hpp"

namespace ptrie {

using NodeId = std::uint32_t;
inline constexpr NodeId no_node = std::numeric_limits<NodeId>::max();
inline constexpr std::uint32_t no_key = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::size_t default_max_depth = 10000;

struct Node {
  NodeId first_child = 0;  // children occupy [first_child, first_child + child_count)
  std::uint32_t child_count = 0;
  std::uint32_t leaves = 0;  // leaves of the fringe tree rooted here
  std::uint32_t key = no_key;
  std::uint32_t prefix_offset = 0;
  std::uint32_t prefix_length = 0;
  Char edge = 0;  // character on the edge from the parent; 0 at the root
};

/// Rooted m-ary tree stored in breadth-first order. The root is node 0 and
/// the children of every node are contiguous and sorted by edge character,
/// so two equal trees have identical layouts.
///
/// Nodes carry an optional common-prefix attribute (always empty in a
/// trie) and leaves the index of the key they store.
class Tree {
public:
  Tree() = default;

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t leaf_count() const noexcept { return empty() ? 0 : nodes_[0].leaves; }

  static constexpr NodeId root() noexcept { return 0; }
  const Node& node(NodeId v) const { return nodes_.at(v); }
  std::span<const Node> nodes() const noexcept { return nodes_; }

  bool is_leaf(NodeId v) const { return nodes_[v].child_count == 0; }
  NodeId child_at(NodeId v, std::size_t i) const { return nodes_[v].first_child + static_cast<NodeId>(i); }
  /// Child along character c, or no_node.
  NodeId child(NodeId v, Char c) const;
  std::span<const Char> prefix(NodeId v) const;

  /// Node reached by following the branch characters in `path` from the
  /// root (prefix attributes are not part of the path). Throws InvalidPath.
  NodeId find(std::span<const Char> path) const;

  /// Number of nodes with exactly one child.
  std::size_t unary_count() const;

  /// Canonical shape string: "*" for a leaf, "(a:S,b:S)" for an internal
  /// node with subtrees S at characters a < b. Prefixes and keys omitted.
  std::string shape_string() const;

  /// Same tree shape, prefixes and keys compared.
  friend bool operator==(const Tree& a, const Tree& b);
  /// Shape equality, ignoring prefixes and stored keys.
  friend bool same_shape(const Tree& a, const Tree& b);

  /// Builds a bare tree (no prefixes, no keys) from a shape string. Unary
  /// nodes are allowed, e.g. "(0:(1:*))".
  static Tree from_shape_string(std::string_view text, std::size_t alphabet_size);

protected:
  friend class TreeBuilder;
  friend Tree fringe(const Tree& t, NodeId v);

  std::vector<Node> nodes_;
  std::vector<Char> prefix_pool_;
  std::size_t alphabet_size_ = 0;

  void compute_leaf_counts();
  Tree copy_subtree(NodeId v) const;
};

class Trie : public Tree {
public:
  Trie() = default;
  explicit Trie(Tree t) : Tree(std::move(t)) {}
};

class PatriciaTrie : public Tree {
public:
  PatriciaTrie() = default;
  explicit PatriciaTrie(Tree t) : Tree(std::move(t)) {}
};

/// Finite, prefix-free set of distinct finite strings.
class KeySet {
public:
  /// Throws InvalidArgument on duplicates, prefix relations or characters
  /// outside the alphabet.
  KeySet(std::vector<std::vector<Char>> keys, std::size_t alphabet_size);

  /// Keys written as digit strings, e.g. {"1000", "1001"}.
  static KeySet from_digits(const std::vector<std::string>& keys, std::size_t alphabet_size);

  std::size_t size() const noexcept { return keys_.size(); }
  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::span<const Char> key(std::size_t i) const { return keys_.at(i); }
  Char at(std::size_t i, std::size_t depth) const;

private:
  std::vector<std::vector<Char>> keys_;
  std::size_t alphabet_size_;
};

/// Keys given as lazy infinite streams from a memoryless source. Key i is
/// seeded by derive_seed(seed, i), so a set of n keys is a prefix of the
/// set of n+1 keys.
class StreamKeySet {
public:
  StreamKeySet(const CharSampler& sampler, std::uint64_t seed, std::size_t count = 0);

  void resize(std::size_t count);
  std::size_t size() const noexcept { return streams_.size(); }
  std::size_t alphabet_size() const noexcept { return sampler_->source().alphabet_size(); }
  Char at(std::size_t i, std::size_t depth) { return streams_[i].at(depth); }
  std::span<const Char> materialized(std::size_t i) const { return streams_.at(i).materialized(); }

  /// Total characters drawn so far.
  std::size_t materialized_chars() const;

private:
  const CharSampler* sampler_;
  std::uint64_t seed_;
  std::vector<CharStream> streams_;
};

/// Trie of the keys: splits on successive characters until every key is
/// alone. Throws DepthExceeded if two keys agree on max_depth characters.
Trie build_trie(const KeySet& keys, std::size_t max_depth = default_max_depth);
Trie build_trie(StreamKeySet& keys, std::size_t max_depth = default_max_depth);

/// Patricia trie: the longest common prefix of each key group is stored in
/// the node and the split happens on the first differing character.
PatriciaTrie build_patricia(const KeySet& keys, std::size_t max_depth = default_max_depth);
PatriciaTrie build_patricia(StreamKeySet& keys, std::size_t max_depth = default_max_depth);

/// Merges every node with exactly one child into that child, prepending
/// the edge character to the prefix attribute.
PatriciaTrie compress(const Trie& t);

/// Fringe tree rooted at v, re-rooted; the new root carries no prefix.
Tree fringe(const Tree& t, NodeId v);
Tree fringe(const Tree& t, std::span<const Char> path);
inline Trie fringe(const Trie& t, NodeId v) { return Trie(fringe(static_cast<const Tree&>(t), v)); }
inline PatriciaTrie fringe(const PatriciaTrie& t, NodeId v) {
  return PatriciaTrie(fringe(static_cast<const Tree&>(t), v));
}

}  // namespace ptrie

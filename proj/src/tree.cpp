#include "ptrie/tree.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>

#include "ptrie/error.hpp"

namespace ptrie {

// ---------------------------------------------------------------------------
// Tree accessors

NodeId Tree::child(NodeId v, Char c) const {
  const Node& n = nodes_.at(v);
  for (std::uint32_t i = 0; i < n.child_count; ++i) {
    if (nodes_[n.first_child + i].edge == c) return n.first_child + i;
  }
  return no_node;
}

std::span<const Char> Tree::prefix(NodeId v) const {
  const Node& n = nodes_.at(v);
  return std::span<const Char>(prefix_pool_).subspan(n.prefix_offset, n.prefix_length);
}

NodeId Tree::find(std::span<const Char> path) const {
  if (empty()) throw Error(ErrorKind::invalid_path, "tree is empty");
  NodeId v = root();
  for (Char c : path) {
    v = child(v, c);
    if (v == no_node) throw Error(ErrorKind::invalid_path, "path leaves the tree");
  }
  return v;
}

std::size_t Tree::unary_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.child_count == 1; }));
}

std::string Tree::shape_string() const {
  if (empty()) return "";
  std::string out;
  std::function<void(NodeId)> rec = [&](NodeId v) {
    const Node& n = nodes_[v];
    if (n.child_count == 0) {
      out += '*';
      return;
    }
    out += '(';
    for (std::uint32_t i = 0; i < n.child_count; ++i) {
      const NodeId c = n.first_child + i;
      if (i) out += ',';
      out += std::to_string(nodes_[c].edge);
      out += ':';
      rec(c);
    }
    out += ')';
  };
  rec(root());
  return out;
}

namespace {
// first_child is meaningless for leaves
bool same_children(const Node& x, const Node& y) {
  return x.child_count == y.child_count && (x.child_count == 0 || x.first_child == y.first_child);
}
}  // namespace

bool operator==(const Tree& a, const Tree& b) {
  if (a.size() != b.size() || a.alphabet_size_ != b.alphabet_size_) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Node& x = a.nodes_[i];
    const Node& y = b.nodes_[i];
    if (!same_children(x, y) || x.leaves != y.leaves || x.key != y.key || x.edge != y.edge) {
      return false;
    }
    const auto px = a.prefix(static_cast<NodeId>(i));
    const auto py = b.prefix(static_cast<NodeId>(i));
    if (!std::equal(px.begin(), px.end(), py.begin(), py.end())) return false;
  }
  return true;
}

bool same_shape(const Tree& a, const Tree& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Node& x = a.nodes_[i];
    const Node& y = b.nodes_[i];
    if (!same_children(x, y) || x.edge != y.edge) {
      return false;
    }
  }
  return true;
}

void Tree::compute_leaf_counts() {
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    Node& n = nodes_[i];
    if (n.child_count == 0) {
      n.leaves = 1;
      continue;
    }
    std::uint32_t sum = 0;
    for (std::uint32_t c = 0; c < n.child_count; ++c) sum += nodes_[n.first_child + c].leaves;
    n.leaves = sum;
  }
}

Tree Tree::copy_subtree(NodeId v) const {
  Tree out;
  out.alphabet_size_ = alphabet_size_;
  if (v >= nodes_.size()) throw Error(ErrorKind::invalid_path, "node id out of range");
  std::vector<NodeId> order{v};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Node& src = nodes_[order[head]];
    Node dst = src;
    dst.first_child = static_cast<NodeId>(order.size());
    dst.prefix_offset = static_cast<std::uint32_t>(out.prefix_pool_.size());
    if (head == 0) {
      dst.edge = 0;
      dst.prefix_length = 0;
    } else {
      const auto p = prefix(order[head]);
      out.prefix_pool_.insert(out.prefix_pool_.end(), p.begin(), p.end());
    }
    for (std::uint32_t c = 0; c < src.child_count; ++c) order.push_back(src.first_child + c);
    out.nodes_.push_back(dst);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shape strings

namespace {

struct NestedNode {
  Char edge = 0;
  std::vector<NestedNode> children;
};

class ShapeParser {
public:
  ShapeParser(std::string_view text, std::size_t m) : text_(text), m_(m) {}

  NestedNode parse() {
    NestedNode root = node();
    if (pos_ != text_.size()) fail("trailing characters");
    return root;
  }

private:
  NestedNode node() {
    if (peek() == '*') {
      ++pos_;
      return {};
    }
    expect('(');
    NestedNode n;
    int last = -1;
    for (;;) {
      const int c = number();
      if (c <= last) fail("children must be in increasing character order");
      if (static_cast<std::size_t>(c) >= m_) fail("character outside the alphabet");
      last = c;
      expect(':');
      NestedNode child = node();
      child.edge = static_cast<Char>(c);
      n.children.push_back(std::move(child));
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(')');
      return n;
    }
  }

  int number() {
    int v = 0;
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
      if (v > 255) fail("character index too large");
    }
    if (pos_ == start) fail("expected a character index");
    return v;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::invalid_argument,
                "bad shape string at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  std::size_t m_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree Tree::from_shape_string(std::string_view text, std::size_t alphabet_size) {
  const NestedNode root = ShapeParser(text, alphabet_size).parse();
  Tree t;
  t.alphabet_size_ = alphabet_size;
  std::vector<const NestedNode*> order{&root};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NestedNode* src = order[head];
    Node n;
    n.edge = src->edge;
    n.first_child = static_cast<NodeId>(order.size());
    n.child_count = static_cast<std::uint32_t>(src->children.size());
    for (const NestedNode& c : src->children) order.push_back(&c);
    t.nodes_.push_back(n);
  }
  t.nodes_[0].edge = 0;
  t.compute_leaf_counts();
  return t;
}

// ---------------------------------------------------------------------------
// Key sets

KeySet::KeySet(std::vector<std::vector<Char>> keys, std::size_t alphabet_size)
    : keys_(std::move(keys)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ < 2 || alphabet_size_ > 256) {
    throw Error(ErrorKind::invalid_argument, "alphabet size must be in [2, 256]");
  }
  std::vector<std::size_t> order(keys_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Char c : keys_[i]) {
      if (c >= alphabet_size_) throw Error(ErrorKind::invalid_argument, "character outside alphabet");
    }
    order[i] = i;
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return keys_[a] < keys_[b]; });
  // In lexicographic order a prefix sorts immediately before some extension
  // of it, so checking neighbours is enough.
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& a = keys_[order[i - 1]];
    const auto& b = keys_[order[i]];
    if (a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin())) {
      throw Error(ErrorKind::invalid_argument, "keys must be distinct and prefix-free");
    }
  }
}

KeySet KeySet::from_digits(const std::vector<std::string>& keys, std::size_t alphabet_size) {
  std::vector<std::vector<Char>> out;
  for (const auto& k : keys) {
    std::vector<Char> chars;
    for (char c : k) {
      if (c < '0' || c > '9') throw Error(ErrorKind::invalid_argument, "digit keys only");
      chars.push_back(static_cast<Char>(c - '0'));
    }
    out.push_back(std::move(chars));
  }
  return KeySet(std::move(out), alphabet_size);
}

Char KeySet::at(std::size_t i, std::size_t depth) const {
  const auto& k = keys_[i];
  if (depth >= k.size()) {
    // Unreachable for valid key sets: two keys sharing a full key would
    // make one a prefix of the other.
    throw Error(ErrorKind::invalid_argument, "key exhausted during split");
  }
  return k[depth];
}

StreamKeySet::StreamKeySet(const CharSampler& sampler, std::uint64_t seed, std::size_t count)
    : sampler_(&sampler), seed_(seed) {
  resize(count);
}

void StreamKeySet::resize(std::size_t count) {
  streams_.reserve(count);
  while (streams_.size() < count) {
    streams_.emplace_back(*sampler_, derive_seed(seed_, streams_.size()));
  }
  if (streams_.size() > count) streams_.erase(streams_.begin() + static_cast<std::ptrdiff_t>(count), streams_.end());
}

std::size_t StreamKeySet::materialized_chars() const {
  std::size_t total = 0;
  for (const auto& s : streams_) total += s.materialized().size();
  return total;
}

// ---------------------------------------------------------------------------
// Construction

class TreeBuilder {
public:
  template <class Keys>
  static Tree build(Keys& keys, std::size_t max_depth, bool patricia) {
    if (max_depth < 1) throw Error(ErrorKind::invalid_argument, "max_depth must be >= 1");
    Tree t;
    t.alphabet_size_ = keys.alphabet_size();
    const std::size_t n = keys.size();
    if (n == 0) return t;
    if (n >= no_key) throw Error(ErrorKind::limit_exceeded, "too many keys");

    struct Work {
      std::uint32_t begin, end;
      std::size_t depth;
    };
    std::vector<std::uint32_t> perm(n), scratch(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<Char> chars;
    std::vector<std::uint32_t> counts(t.alphabet_size_);
    std::deque<Work> queue;

    t.nodes_.push_back(Node{});
    queue.push_back({0, static_cast<std::uint32_t>(n), 0});
    for (NodeId v = 0; !queue.empty(); ++v) {
      Work w = queue.front();
      queue.pop_front();
      const std::uint32_t count = w.end - w.begin;
      t.nodes_[v].prefix_offset = static_cast<std::uint32_t>(t.prefix_pool_.size());
      if (count == 1) {
        t.nodes_[v].key = perm[w.begin];
        continue;
      }
      chars.resize(count);
      for (;;) {
        if (w.depth >= max_depth) {
          throw Error(ErrorKind::depth_exceeded,
                      "two keys agree on the first " + std::to_string(max_depth) + " characters");
        }
        std::fill(counts.begin(), counts.end(), 0u);
        for (std::uint32_t i = 0; i < count; ++i) {
          const Char c = keys.at(perm[w.begin + i], w.depth);
          chars[i] = c;
          ++counts[c];
        }
        const std::size_t nonempty = static_cast<std::size_t>(
            std::count_if(counts.begin(), counts.end(), [](std::uint32_t c) { return c != 0; }));
        if (nonempty == 1 && patricia) {
          t.prefix_pool_.push_back(chars[0]);
          ++t.nodes_[v].prefix_length;
          ++w.depth;
          continue;
        }
        break;
      }
      // Stable counting sort of the group by its character at w.depth.
      std::uint32_t offset = w.begin;
      std::vector<std::uint32_t> start(t.alphabet_size_);
      for (std::size_t a = 0; a < t.alphabet_size_; ++a) {
        start[a] = offset;
        offset += counts[a];
      }
      for (std::uint32_t i = 0; i < count; ++i) scratch[start[chars[i]]++] = perm[w.begin + i];
      std::copy(scratch.begin() + w.begin, scratch.begin() + w.end, perm.begin() + w.begin);

      t.nodes_[v].first_child = static_cast<NodeId>(t.nodes_.size());
      std::uint32_t child_begin = w.begin;
      for (std::size_t a = 0; a < t.alphabet_size_; ++a) {
        if (counts[a] == 0) continue;
        Node c;
        c.edge = static_cast<Char>(a);
        t.nodes_.push_back(c);
        ++t.nodes_[v].child_count;
        queue.push_back({child_begin, child_begin + counts[a], w.depth + 1});
        child_begin += counts[a];
      }
    }
    t.compute_leaf_counts();
    return t;
  }

  static Tree compress(const Tree& trie) {
    Tree out;
    out.alphabet_size_ = trie.alphabet_size_;
    if (trie.empty()) return out;
    // Each queue entry is the top of a unary chain in the trie.
    std::vector<NodeId> tops{Tree::root()};
    for (std::size_t head = 0; head < tops.size(); ++head) {
      NodeId v = tops[head];
      Node n;
      n.edge = head == 0 ? 0 : trie.nodes_[v].edge;
      n.prefix_offset = static_cast<std::uint32_t>(out.prefix_pool_.size());
      while (trie.nodes_[v].child_count == 1) {
        v = trie.nodes_[v].first_child;
        out.prefix_pool_.push_back(trie.nodes_[v].edge);
        ++n.prefix_length;
      }
      const Node& bottom = trie.nodes_[v];
      n.key = bottom.key;
      n.child_count = bottom.child_count;
      n.first_child = static_cast<NodeId>(tops.size());
      for (std::uint32_t c = 0; c < bottom.child_count; ++c) tops.push_back(bottom.first_child + c);
      out.nodes_.push_back(n);
    }
    out.compute_leaf_counts();
    return out;
  }
};

Trie build_trie(const KeySet& keys, std::size_t max_depth) {
  return Trie(TreeBuilder::build(keys, max_depth, false));
}

Trie build_trie(StreamKeySet& keys, std::size_t max_depth) {
  return Trie(TreeBuilder::build(keys, max_depth, false));
}

PatriciaTrie build_patricia(const KeySet& keys, std::size_t max_depth) {
  return PatriciaTrie(TreeBuilder::build(keys, max_depth, true));
}

PatriciaTrie build_patricia(StreamKeySet& keys, std::size_t max_depth) {
  return PatriciaTrie(TreeBuilder::build(keys, max_depth, true));
}

PatriciaTrie compress(const Trie& t) { return PatriciaTrie(TreeBuilder::compress(t)); }

Tree fringe(const Tree& t, NodeId v) {
  if (t.empty() || v >= t.size()) throw Error(ErrorKind::invalid_path, "node id out of range");
  return t.copy_subtree(v);
}

Tree fringe(const Tree& t, std::span<const Char> path) { return fringe(t, t.find(path)); }

}  // namespace ptrie

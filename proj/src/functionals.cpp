#include "ptrie/functionals.hpp"

#include <charconv>

#include "ptrie/error.hpp"

namespace ptrie {

TreeStats::TreeStats(const Tree& t)
    : essential(t.size()), image(t.size()), compressed_essential(t.size()) {
  const auto nodes = t.nodes();
  for (std::size_t i = nodes.size(); i-- > 0;) {
    const Node& n = nodes[i];
    const auto v = static_cast<NodeId>(i);
    if (n.child_count == 0) {
      essential[v] = 1;
      image[v] = v;
      compressed_essential[v] = 1;
      continue;
    }
    unsigned essential_children = 0;
    unsigned compressed_children = 0;
    for (std::uint32_t c = 0; c < n.child_count; ++c) {
      essential_children += essential[n.first_child + c];
      compressed_children += compressed_essential[n.first_child + c];
    }
    essential[v] = essential_children == 0;
    if (n.child_count == 1) {
      image[v] = image[n.first_child];
      compressed_essential[v] = compressed_essential[image[v]];
    } else {
      image[v] = v;
      compressed_essential[v] = compressed_children == 0;
    }
  }
}

TollFunction::TollFunction(std::string name, Rule rule, bool shape_only)
    : name_(std::move(name)), rule_(std::move(rule)), shape_only_(shape_only) {
  const Tree leaf = Tree::from_shape_string("*", 2);
  const TreeStats stats(leaf);
  chi_ = rule_(Fringe(leaf, stats, Tree::root()));
}

FunctionalValue evaluate_additive(std::span<const TollFunction> tolls, const Tree& t) {
  FunctionalValue out(tolls.size(), 0.0);
  if (t.empty()) return out;
  const TreeStats stats(t);
  for (std::size_t v = 0; v < t.size(); ++v) {
    const Fringe f(t, stats, static_cast<NodeId>(v));
    for (std::size_t j = 0; j < tolls.size(); ++j) out[j] += tolls[j](f);
  }
  return out;
}

double evaluate_additive(const TollFunction& toll, const Tree& t) {
  return evaluate_additive(std::span<const TollFunction>(&toll, 1), t)[0];
}

std::vector<double> subtree_values(const TollFunction& toll, const Tree& t) {
  std::vector<double> values(t.size(), 0.0);
  const TreeStats stats(t);
  const auto nodes = t.nodes();
  for (std::size_t i = nodes.size(); i-- > 0;) {
    double v = toll(Fringe(t, stats, static_cast<NodeId>(i)));
    for (std::uint32_t c = 0; c < nodes[i].child_count; ++c) v += values[nodes[i].first_child + c];
    values[i] = v;
  }
  return values;
}

double toll_at(const TollFunction& toll, const Tree& t, NodeId v) {
  if (t.empty() || v >= t.size()) throw Error(ErrorKind::invalid_path, "node id out of range");
  const TreeStats stats(t);
  return toll(Fringe(t, stats, v));
}

TollFunction pullback(const TollFunction& toll) {
  if (!toll.shape_only()) {
    throw Error(ErrorKind::shape_dependence,
                "toll '" + toll.name() + "' depends on prefix attributes");
  }
  return TollFunction("~" + toll.name(), [toll](const Fringe& f) {
    return f.raw_child_count() == 1 ? 0.0 : toll(f.compressed());
  });
}

TollFunction phi_k(std::size_t k) {
  if (k < 1) throw Error(ErrorKind::invalid_argument, "phi_k needs k >= 1");
  return TollFunction("k=" + std::to_string(k),
                      [k](const Fringe& f) { return f.leaves() == k ? 1.0 : 0.0; });
}

TollFunction phi_geq(std::size_t k) {
  if (k < 1) throw Error(ErrorKind::invalid_argument, "phi_geq needs k >= 1");
  return TollFunction("geq=" + std::to_string(k),
                      [k](const Fringe& f) { return f.leaves() >= k ? 1.0 : 0.0; });
}

TollFunction phi_internal() {
  return TollFunction("internal", [](const Fringe& f) { return f.child_count() > 0 ? 1.0 : 0.0; });
}

TollFunction phi_leaf() {
  return TollFunction("leaf", [](const Fringe& f) { return f.child_count() == 0 ? 1.0 : 0.0; });
}

TollFunction phi_alpha() {
  return TollFunction("alpha", [](const Fringe& f) { return f.essential() ? 1.0 : 0.0; });
}

namespace {

bool matches(const Fringe& f, const Tree& shape, NodeId u) {
  const Node& n = shape.node(u);
  if (f.leaves() != n.leaves || f.child_count() != n.child_count) return false;
  for (std::uint32_t i = 0; i < n.child_count; ++i) {
    const NodeId c = n.first_child + i;
    if (f.child_edge(i) != shape.node(c).edge || !matches(f.child(i), shape, c)) return false;
  }
  return true;
}

std::size_t parse_count(const std::string& spec, std::string_view digits) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorKind::invalid_argument, "bad functional '" + spec + "'");
  }
  return v;
}

}  // namespace

TollFunction phi_shape(const Tree& shape) {
  if (shape.empty()) throw Error(ErrorKind::invalid_argument, "empty shape");
  return TollFunction("shape=" + shape.shape_string(),
                      [shape](const Fringe& f) { return matches(f, shape, Tree::root()) ? 1.0 : 0.0; });
}

TollFunction parse_toll(const std::string& spec, std::size_t alphabet_size) {
  const std::string_view s(spec);
  if (s == "internal") return phi_internal();
  if (s == "leaf") return phi_leaf();
  if (s == "alpha") return phi_alpha();
  if (s.starts_with("k=")) return phi_k(parse_count(spec, s.substr(2)));
  if (s.starts_with("geq=")) return phi_geq(parse_count(spec, s.substr(4)));
  if (s.starts_with("shape=")) return phi_shape(Tree::from_shape_string(s.substr(6), alphabet_size));
  throw Error(ErrorKind::invalid_argument, "unknown functional '" + spec + "'");
}

std::vector<TollFunction> parse_toll_list(const std::string& spec, std::size_t alphabet_size) {
  std::vector<TollFunction> out;
  int depth = 0;
  std::string item;
  for (char c : spec + ",") {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!item.empty()) out.push_back(parse_toll(item, alphabet_size));
      item.clear();
      continue;
    }
    item += c;
  }
  if (out.empty()) throw Error(ErrorKind::invalid_argument, "no functionals given");
  return out;
}

std::size_t matching_number(const Tree& t) {
  if (t.empty()) throw Error(ErrorKind::empty_tree, "matching number of the empty tree");
  return t.size() - static_cast<std::size_t>(evaluate_additive(phi_alpha(), t));
}

namespace {

struct IndependentSetSearch {
  std::vector<NodeId> parent;
  std::vector<std::uint8_t> in_set;
  std::size_t best = 0;

  // Nodes are visited in breadth-first order, so a node's parent is decided
  // before the node itself.
  void visit(std::size_t v, std::size_t chosen) {
    const std::size_t n = parent.size();
    if (chosen + (n - v) <= best) return;
    if (v == n) {
      best = chosen;
      return;
    }
    const bool blocked = v != 0 && in_set[parent[v]];
    if (!blocked) {
      in_set[v] = 1;
      visit(v + 1, chosen + 1);
      in_set[v] = 0;
    }
    visit(v + 1, chosen);
  }
};

}  // namespace

std::size_t brute_force_independence(const Tree& t) {
  if (t.size() > 25) throw Error(ErrorKind::limit_exceeded, "brute force limited to 25 nodes");
  if (t.empty()) return 0;
  IndependentSetSearch search;
  search.parent.assign(t.size(), no_node);
  search.in_set.assign(t.size(), 0);
  for (std::size_t v = 0; v < t.size(); ++v) {
    const Node& n = t.node(static_cast<NodeId>(v));
    for (std::uint32_t c = 0; c < n.child_count; ++c) search.parent[n.first_child + c] = static_cast<NodeId>(v);
  }
  search.visit(0, 0);
  return search.best;
}

}  // namespace ptrie

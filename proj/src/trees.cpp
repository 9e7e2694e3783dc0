#include "strahler/trees.hpp"

#include <algorithm>

#include "strahler/errors.hpp"

namespace strahler::trees {

namespace {

void check_limit(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw ResourceError(std::string(what) + ": size " + std::to_string(n) +
                        " exceeds the enumeration limit " + std::to_string(limit));
  }
}

// levels[k] = all trees of size k, for k = 0..n.
std::vector<std::vector<BinaryTree>> enumerate_up_to(std::size_t n) {
  std::vector<std::vector<BinaryTree>> levels(n + 1);
  levels[0].push_back(BinaryTree{});
  for (std::size_t size = 1; size <= n; ++size) {
    auto& out = levels[size];
    for (std::size_t left = 0; left < size; ++left) {
      for (const auto& l : levels[left]) {
        for (const auto& r : levels[size - 1 - left]) out.push_back(BinaryTree::node(l, r));
      }
    }
  }
  return levels;
}

BinaryTree replace_rightmost(const BinaryTree& t, std::size_t depth, const BinaryTree& graft) {
  if (depth == 0) return graft;
  return BinaryTree::node(t.left(), replace_rightmost(t.right(), depth - 1, graft));
}

}  // namespace

BinaryTree BinaryTree::node(BinaryTree left, BinaryTree right) {
  BinaryTree t;
  const std::size_t size = 1 + left.size() + right.size();
  t.node_ = std::make_shared<const Node>(Node{std::move(left), std::move(right), size});
  return t;
}

std::size_t BinaryTree::size() const noexcept { return node_ ? node_->size : 0; }

const BinaryTree& BinaryTree::left() const {
  if (!node_) throw DomainError("left(): the empty tree has no children");
  return node_->left;
}

const BinaryTree& BinaryTree::right() const {
  if (!node_) throw DomainError("right(): the empty tree has no children");
  return node_->right;
}

std::string BinaryTree::to_string() const {
  if (empty()) return ".";
  return "(" + left().to_string() + right().to_string() + ")";
}

bool operator==(const BinaryTree& a, const BinaryTree& b) {
  if (a.node_ == b.node_) return true;
  if (a.empty() || b.empty() || a.size() != b.size()) return false;
  return a.left() == b.left() && a.right() == b.right();
}

unsigned reg(const BinaryTree& t) {
  if (t.empty()) return 0;
  const unsigned l = reg(t.left());
  const unsigned r = reg(t.right());
  return l == r ? l + 1 : std::max(l, r);
}

std::size_t rightmost_len(const BinaryTree& t) {
  std::size_t len = 0;
  for (const BinaryTree* cur = &t; !cur->empty(); cur = &cur->right()) ++len;
  return len;
}

BinaryTree complete_tree(unsigned levels) {
  if (levels == 0) return {};
  const BinaryTree child = complete_tree(levels - 1);
  return BinaryTree::node(child, child);
}

std::vector<BinaryTree> enumerate(std::size_t n, std::size_t limit) {
  check_limit(n, limit, "enumerate");
  return std::move(enumerate_up_to(n)[n]);
}

ButterflyTree::ButterflyTree(BinaryTree tree, std::size_t mark)
    : tree_(std::move(tree)), mark_(mark) {
  if (tree_.empty()) throw DomainError("ButterflyTree: the underlying tree must be nonempty");
  const std::size_t r = rightmost_len(tree_);
  if (mark_ < 1 || mark_ > r) {
    throw DomainError("ButterflyTree: mark " + std::to_string(mark_) +
                      " outside the rightmost path 1.." + std::to_string(r));
  }
}

ButterflyTree glue(const BinaryTree& t1, const BinaryTree& t2) {
  if (t1.empty()) throw DomainError("glue: the first tree must be nonempty");
  const std::size_t r = rightmost_len(t1);
  return ButterflyTree(replace_rightmost(t1, r, t2), r);
}

std::pair<BinaryTree, BinaryTree> split(const ButterflyTree& b) {
  const BinaryTree* below = &b.tree();
  for (std::size_t i = 0; i < b.mark(); ++i) below = &below->right();
  return {replace_rightmost(b.tree(), b.mark(), BinaryTree{}), *below};
}

std::vector<ButterflyTree> enumerate_butterflies(std::size_t n, std::size_t limit) {
  check_limit(n, limit, "enumerate_butterflies");
  std::vector<ButterflyTree> out;
  for (const auto& t : enumerate(n, limit)) {
    if (t.empty()) continue;
    const std::size_t r = rightmost_len(t);
    for (std::size_t mark = 1; mark <= r; ++mark) out.emplace_back(t, mark);
  }
  return out;
}

CountTable reg_table(std::size_t n_max, std::size_t limit) {
  check_limit(n_max, limit, "reg_table");
  const auto levels = enumerate_up_to(n_max);
  CountTable table(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (const auto& t : levels[n]) ++table[n][reg(t)];
  }
  return table;
}

CountTable butterfly_table(std::size_t n_max, std::size_t limit) {
  check_limit(n_max, limit, "butterfly_table");
  const auto levels = enumerate_up_to(n_max);
  CountTable table(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    // Each tree carries one butterfly per edge of its rightmost path, and the
    // mark does not change reg.
    for (const auto& t : levels[n]) table[n][reg(t)] += rightmost_len(t);
  }
  return table;
}

}  // namespace strahler::trees

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

// Brute-force combinatorics of binary trees: enumeration, the register
// function, and gluing two trees along the rightmost leaf.
namespace strahler::trees {

// An immutable binary tree: either empty (an external leaf) or an internal
// node with two subtrees. Subtrees are shared between copies.
class BinaryTree {
 public:
  BinaryTree() = default;
  static BinaryTree node(BinaryTree left, BinaryTree right);

  bool empty() const noexcept { return node_ == nullptr; }
  // Number of internal nodes.
  std::size_t size() const noexcept;
  // Children of a nonempty tree; DomainError on the empty tree.
  const BinaryTree& left() const;
  const BinaryTree& right() const;

  // "." for the empty tree, "(LR)" for a node.
  std::string to_string() const;

  friend bool operator==(const BinaryTree& a, const BinaryTree& b);

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct BinaryTree::Node {
  BinaryTree left;
  BinaryTree right;
  std::size_t size;
};

// Horton-Strahler number.
unsigned reg(const BinaryTree& t);

// Number of edges from the root to the rightmost external leaf.
std::size_t rightmost_len(const BinaryTree& t);

// The perfect tree with `levels` levels of internal nodes (2^levels - 1 nodes).
BinaryTree complete_tree(unsigned levels);

inline constexpr std::size_t kDefaultTreeLimit = 15;
inline constexpr std::size_t kDefaultButterflyLimit = 12;

// All trees with n internal nodes, ordered by left-subtree size and then
// recursively. ResourceError when n exceeds limit.
std::vector<BinaryTree> enumerate(std::size_t n, std::size_t limit = kDefaultTreeLimit);

// A nonempty binary tree with one marked edge on its rightmost path.
// Marks are 1-based, counted from the root.
class ButterflyTree {
 public:
  ButterflyTree(BinaryTree tree, std::size_t mark);

  const BinaryTree& tree() const noexcept { return tree_; }
  std::size_t mark() const noexcept { return mark_; }
  std::size_t size() const noexcept { return tree_.size(); }

  friend bool operator==(const ButterflyTree&, const ButterflyTree&) = default;

 private:
  BinaryTree tree_;
  std::size_t mark_;
};

// t1 with its rightmost leaf replaced by t2; the mark is the last edge of t1.
ButterflyTree glue(const BinaryTree& t1, const BinaryTree& t2);

// Inverse of glue.
std::pair<BinaryTree, BinaryTree> split(const ButterflyTree& b);

// Every ButterflyTree of size n.
std::vector<ButterflyTree> enumerate_butterflies(std::size_t n,
                                                 std::size_t limit = kDefaultButterflyLimit);

// counts[n][p]: number of objects of size n with register function p.
using CountTable = std::vector<std::map<unsigned, std::uint64_t>>;

// Binary trees of sizes 0..n_max by register function.
CountTable reg_table(std::size_t n_max, std::size_t limit = kDefaultTreeLimit);

// Butterfly trees of sizes 0..n_max by the register function of the
// underlying tree. Row 0 is empty.
CountTable butterfly_table(std::size_t n_max, std::size_t limit = kDefaultButterflyLimit);

}  // namespace strahler::trees

#pragma once

// Fuse-expression trees: the syntactic side of the theory.  A tree is either
// the literal 0 or a fuse of two subtrees; its value is well-defined only
// when every fuse node satisfies |left - right| < 1.
//
// Trees are stored in a flat arena (child indices, no pointers), so parsing,
// evaluation, depth, and destruction are all non-recursive and deep inputs
// cannot exhaust the native call stack.

#include <string>
#include <string_view>
#include <vector>

#include "fusible/rational.hpp"

namespace fusible {

class FuseExpr {
  public:
    struct Node {
        int left = -1;   // -1 = leaf (the literal 0)
        int right = -1;
    };

    static FuseExpr leaf();

    int root() const { return root_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    bool is_leaf(int i) const { return nodes_[i].left < 0; }
    std::size_t node_count() const { return nodes_.size(); }

    // "root.L.R"-style location of a node, for error reporting.
    std::string path_of(int index) const;

    friend FuseExpr parse_expr(std::string_view);

  private:
    int add_leaf();
    int add_fuse(int l, int r);

    std::vector<Node> nodes_;
    int root_ = -1;
};

// Grammar: expr := "0" | "(" expr "~" expr ")".  The outermost pair of
// parentheses may be omitted.  Whitespace between tokens is ignored.
FuseExpr parse_expr(std::string_view text);

// Canonical form: every fuse parenthesized except the outermost.
std::string format_expr(const FuseExpr& e);

// Value of the tree; throws InvalidFuse naming the offending node's path.
Rational eval_expr(const FuseExpr& e);

// Height: depth(0) = 0, depth(a~b) = max(depth(a), depth(b)) + 1.
int depth_expr(const FuseExpr& e);

}  // namespace fusible

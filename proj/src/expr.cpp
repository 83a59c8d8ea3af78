#include "fusible/expr.hpp"

#include <algorithm>
#include <cctype>

#include "fusible/error.hpp"

namespace fusible {

FuseExpr FuseExpr::leaf() {
    FuseExpr e;
    e.root_ = e.add_leaf();
    return e;
}

int FuseExpr::add_leaf() {
    nodes_.push_back({});
    return static_cast<int>(nodes_.size()) - 1;
}

int FuseExpr::add_fuse(int l, int r) {
    nodes_.push_back({l, r});
    return static_cast<int>(nodes_.size()) - 1;
}

std::string FuseExpr::path_of(int index) const {
    // Parents are not stored; recover the path by a scan.
    std::vector<int> parent(nodes_.size(), -1);
    std::vector<char> side(nodes_.size(), ' ');
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
        if (nodes_[i].left >= 0) {
            parent[nodes_[i].left] = i;
            side[nodes_[i].left] = 'L';
            parent[nodes_[i].right] = i;
            side[nodes_[i].right] = 'R';
        }
    }
    std::string path;
    for (int i = index; i != root_; i = parent[i]) {
        path.insert(path.begin(), side[i]);
        path.insert(path.begin(), '.');
    }
    return "root" + path;
}

FuseExpr parse_expr(std::string_view text) {
    FuseExpr e;
    struct Frame {
        int left = -1;
        int right = -1;
        bool seen_tilde = false;
        bool implicit = false;
    };
    std::vector<Frame> st;
    st.push_back({.implicit = true});

    auto fail = [&](const std::string& why) -> ParseError {
        return ParseError("bad expression '" + std::string(text) + "': " + why);
    };
    auto attach = [&](int node) {
        Frame& f = st.back();
        if (f.left < 0 && !f.seen_tilde)
            f.left = node;
        else if (f.seen_tilde && f.right < 0)
            f.right = node;
        else
            throw fail("operand without a '~' to join it");
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        switch (c) {
            case '0': attach(e.add_leaf()); break;
            case '(': st.push_back({}); break;
            case '~': {
                Frame& f = st.back();
                if (f.left < 0 || f.seen_tilde) throw fail("misplaced '~'");
                f.seen_tilde = true;
                break;
            }
            case ')': {
                Frame f = st.back();
                if (f.implicit) throw fail("unmatched ')'");
                if (f.left < 0 || !f.seen_tilde || f.right < 0) throw fail("incomplete fuse before ')'");
                st.pop_back();
                attach(e.add_fuse(f.left, f.right));
                break;
            }
            default: throw fail(std::string("unexpected character '") + c + "'");
        }
    }
    if (st.size() != 1) throw fail("unmatched '('");
    Frame& top = st.back();
    if (top.left >= 0 && !top.seen_tilde)
        e.root_ = top.left;
    else if (top.left >= 0 && top.seen_tilde && top.right >= 0)
        e.root_ = e.add_fuse(top.left, top.right);
    else
        throw fail("incomplete expression");
    return e;
}

namespace {

// Iterative post-order visit; calls leaf_fn/fuse_fn per node, results in out.
template <typename T, typename LeafFn, typename FuseFn>
T fold_expr(const FuseExpr& e, LeafFn leaf_fn, FuseFn fuse_fn) {
    std::vector<T> out(e.node_count());
    std::vector<char> done(e.node_count(), 0);
    std::vector<int> stack = {e.root()};
    while (!stack.empty()) {
        int i = stack.back();
        if (e.is_leaf(i)) {
            out[i] = leaf_fn();
            done[i] = 1;
            stack.pop_back();
            continue;
        }
        const auto& n = e.nodes()[i];
        if (!done[n.left]) {
            stack.push_back(n.left);
            continue;
        }
        if (!done[n.right]) {
            stack.push_back(n.right);
            continue;
        }
        out[i] = fuse_fn(i, out[n.left], out[n.right]);
        done[i] = 1;
        stack.pop_back();
    }
    return out[e.root()];
}

}  // namespace

std::string format_expr(const FuseExpr& e) {
    std::string s = fold_expr<std::string>(
        e, []() { return std::string("0"); },
        [&](int, const std::string& l, const std::string& r) { return "(" + l + "~" + r + ")"; });
    // Outermost parentheses are dropped in canonical form.
    if (!e.is_leaf(e.root())) s = s.substr(1, s.size() - 2);
    return s;
}

Rational eval_expr(const FuseExpr& e) {
    return fold_expr<Rational>(
        e, []() { return Rational(0); },
        [&](int i, const Rational& l, const Rational& r) { return fuse(l, r, e.path_of(i)); });
}

int depth_expr(const FuseExpr& e) {
    return fold_expr<int>(
        e, []() { return 0; },
        [](int, int l, int r) { return std::max(l, r) + 1; });
}

}  // namespace fusible

#include "csmooth/vtree.hpp"

#include <algorithm>
#include <stdexcept>

namespace csmooth {

VtreeNodeId Vtree::add_leaf(VarId v) {
    Node n;
    n.leaf = true;
    n.var = v;
    nodes_.push_back(n);
    return static_cast<VtreeNodeId>(nodes_.size() - 1);
}

VtreeNodeId Vtree::add_internal(VtreeNodeId left, VtreeNodeId right) {
    Node n;
    n.leaf = false;
    n.left = left;
    n.right = right;
    nodes_.push_back(n);
    return static_cast<VtreeNodeId>(nodes_.size() - 1);
}

void Vtree::finalize() {
    if (nodes_.empty() || root_ == kNoVtreeNode) throw std::invalid_argument("vtree: empty");
    const std::size_t count = nodes_.size();

    std::vector<int> parent_count(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        if (nodes_[i].leaf) continue;
        if (nodes_[i].left >= count || nodes_[i].right >= count)
            throw std::invalid_argument("vtree: dangling child id");
        parent_count[nodes_[i].left]++;
        parent_count[nodes_[i].right]++;
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (i == root_ && parent_count[i] != 0)
            throw std::invalid_argument("vtree: root has a parent");
        if (i != root_ && parent_count[i] != 1)
            throw std::invalid_argument("vtree: node " + std::to_string(i) +
                                        " must have exactly one parent");
    }

    // Iterative in-order traversal; also validates connectivity/acyclicity
    // and assigns leaf positions.
    std::size_t num_leaves = 0;
    for (const Node& n : nodes_) num_leaves += n.leaf;
    position_of_.assign(num_leaves + 1, 0);
    var_at_.assign(num_leaves + 1, 0);
    leaf_of_.assign(num_leaves + 1, kNoVtreeNode);

    std::uint32_t next_pos = 0;
    std::size_t visited = 0;
    std::vector<std::pair<VtreeNodeId, int>> stack;  // (node, state 0=go left, 1=go right, 2=done)
    nodes_[root_].parent = kNoVtreeNode;
    nodes_[root_].depth = 0;
    stack.push_back({root_, 0});
    while (!stack.empty()) {
        auto& [id, state] = stack.back();
        Node& nd = nodes_[id];
        if (nd.leaf) {
            ++visited;
            if (nd.var == 0 || nd.var > num_leaves)
                throw std::invalid_argument("vtree: variable out of range");
            if (leaf_of_[nd.var] != kNoVtreeNode)
                throw std::invalid_argument("vtree: duplicate variable " + std::to_string(nd.var));
            ++next_pos;
            nd.range = {next_pos, next_pos};
            position_of_[nd.var] = next_pos;
            var_at_[next_pos] = nd.var;
            leaf_of_[nd.var] = id;
            stack.pop_back();
            continue;
        }
        if (state == 0) {
            state = 1;
            nodes_[nd.left].parent = id;
            nodes_[nd.left].depth = nd.depth + 1;
            stack.push_back({nd.left, 0});
        } else if (state == 1) {
            state = 2;
            nodes_[nd.right].parent = id;
            nodes_[nd.right].depth = nd.depth + 1;
            stack.push_back({nd.right, 0});
        } else {
            ++visited;
            nd.range = {nodes_[nd.left].range.lo, nodes_[nd.right].range.hi};
            stack.pop_back();
        }
    }
    if (visited != count) throw std::invalid_argument("vtree: disconnected or cyclic nodes");
}

VtreeNodeId Vtree::lca(VtreeNodeId a, VtreeNodeId b) const {
    while (nodes_[a].depth > nodes_[b].depth) a = nodes_[a].parent;
    while (nodes_[b].depth > nodes_[a].depth) b = nodes_[b].parent;
    while (a != b) {
        a = nodes_[a].parent;
        b = nodes_[b].parent;
    }
    return a;
}

VtreeNodeId Vtree::cover(const PosInterval& iv) const {
    VtreeNodeId u = root_;
    while (!nodes_[u].leaf) {
        const Node& l = nodes_[nodes_[u].left];
        if (l.range.contains(iv)) { u = nodes_[u].left; continue; }
        const Node& r = nodes_[nodes_[u].right];
        if (r.range.contains(iv)) { u = nodes_[u].right; continue; }
        break;
    }
    return u;
}

std::vector<VtreeNodeId> Vtree::canonical_cover(const PosInterval& iv) const {
    std::vector<VtreeNodeId> out;
    if (iv.empty()) return out;
    // Walk down from the covering node, peeling maximal fully-contained
    // children, exactly like a segment-tree range decomposition.
    std::vector<VtreeNodeId> stack{cover(iv)};
    while (!stack.empty()) {
        VtreeNodeId u = stack.back();
        stack.pop_back();
        const Node& nd = nodes_[u];
        if (iv.contains(nd.range)) {
            out.push_back(u);
            continue;
        }
        if (nd.leaf) continue;
        const PosInterval lr = nodes_[nd.left].range;
        const PosInterval rr = nodes_[nd.right].range;
        // Right first so the output stays ordered by position.
        if (!(rr.hi < iv.lo || rr.lo > iv.hi)) stack.push_back(nd.right);
        if (!(lr.hi < iv.lo || lr.lo > iv.hi)) stack.push_back(nd.left);
    }
    return out;
}

bool operator==(const Vtree& a, const Vtree& b) {
    if (a.nodes_.size() != b.nodes_.size() || a.root_ != b.root_) return false;
    for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
        const auto& x = a.nodes_[i];
        const auto& y = b.nodes_[i];
        if (x.leaf != y.leaf || x.var != y.var || x.left != y.left || x.right != y.right)
            return false;
    }
    return true;
}

namespace {

VtreeNodeId build_balanced(Vtree& v, std::uint32_t lo, std::uint32_t hi) {
    if (lo == hi) return v.add_leaf(lo);
    std::uint32_t count = hi - lo + 1;
    std::uint32_t mid = lo + (count + 1) / 2 - 1;  // split at ceil(count/2)
    VtreeNodeId l = build_balanced(v, lo, mid);
    VtreeNodeId r = build_balanced(v, mid + 1, hi);
    return v.add_internal(l, r);
}

}  // namespace

Vtree balanced_vtree(std::uint32_t n) {
    Vtree v;
    v.set_root(build_balanced(v, 1, n));
    v.finalize();
    return v;
}

Vtree right_linear_vtree(std::uint32_t n) {
    Vtree v;
    std::vector<VtreeNodeId> leaves;
    for (std::uint32_t i = 1; i <= n; ++i) leaves.push_back(v.add_leaf(i));
    VtreeNodeId acc = leaves[n - 1];
    for (std::uint32_t i = n - 1; i-- > 0;) acc = v.add_internal(leaves[i], acc);
    v.set_root(acc);
    v.finalize();
    return v;
}

}  // namespace csmooth

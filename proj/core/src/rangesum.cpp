#include "csmooth/rangesum.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <unordered_map>

namespace csmooth {

namespace {

struct AckKey {
    std::uint32_t t;
    std::uint64_t k;
    std::uint64_t cap;
    bool operator==(const AckKey&) const = default;
};
struct AckKeyHash {
    std::size_t operator()(const AckKey& a) const {
        std::uint64_t h = a.t * 0x9e3779b97f4a7c15ull;
        h ^= a.k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= a.cap + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

std::uint64_t ack(std::uint32_t t, std::uint64_t k, std::uint64_t cap) {
    if (t <= 2 || k <= 3) return std::min<std::uint64_t>(2, cap);
    // A(t,k) at least doubles every three k steps, so far before k=200 it
    // exceeds any 64-bit cap; this keeps memo chains short for huge k.
    if (k >= 200) return cap;
    static thread_local std::unordered_map<AckKey, std::uint64_t, AckKeyHash> memo;
    AckKey key{t, k, cap};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::uint64_t a = ack(t, k - 3, cap);
    std::uint64_t b = ack(t - 2, a, cap);
    std::uint64_t value = (a != 0 && b > cap / a) ? cap : std::min(cap, a * b);
    memo.emplace(key, value);
    return value;
}

std::uint32_t inverse_ack(std::uint64_t m, std::uint64_t n) {
    (void)m;  // m >= n in all uses; n drives the criterion
    std::uint32_t c = 1;
    while (ack(2 * c, 3 * c, n) < n) ++c;
    return c;
}

namespace {

// Strictly decreasing block-size chain a_i = ack(t, k-3i), ending at 2.
std::vector<std::uint64_t> size_chain(std::uint32_t t, std::uint64_t k, std::uint64_t cap) {
    std::vector<std::uint64_t> sizes;
    std::uint64_t kk = k;
    while (true) {
        std::uint64_t a = (t <= 2 || kk <= 3) ? 2 : ack(t, kk - 3, cap);
        if (sizes.empty() || a < sizes.back()) sizes.push_back(a);
        if (a <= 2) break;
        kk -= 3;
    }
    return sizes;
}

}  // namespace

JumpIndex build_jump_index(std::uint32_t t, std::uint64_t k, std::uint64_t range,
                           std::uint64_t cap) {
    JumpIndex idx;
    idx.block_sizes = size_chain(t, k, cap);
    idx.jump_to.assign(range + 1, 0);
    // Two-pointer walk: as s decreases, the smallest fitting index can only
    // move deeper.
    std::uint32_t i = 0;
    for (std::uint64_t s = range; s >= 1; --s) {
        while (i < idx.block_sizes.size() && idx.block_sizes[i] > s) ++i;
        idx.jump_to[s] = (i < idx.block_sizes.size())
                             ? i + 1
                             : static_cast<std::uint32_t>(idx.block_sizes.size());
        if (s == 1) break;
    }
    return idx;
}

using NodeId = AdditionTrace::NodeId;
inline constexpr NodeId kNoNode = 0xffffffffu;

// One outer-recursion level: an array of variable nodes, its block-size
// chain, prefix/suffix sum tables per chain entry, and a child level per
// enclosing block holding that block's sub-block sums. Sums are emitted
// into the trace lazily, block by block, the first time a query touches
// them; untouched blocks never cost an addition.
struct RangeSumScheme::Level {
    std::uint32_t t = 1;
    std::uint64_t k = 2;
    std::uint64_t n_real = 0;
    std::uint64_t n_pad = 0;
    std::vector<NodeId> vars;                // length n_pad (sentinel-padded)
    std::vector<std::uint64_t> sizes;        // filtered strictly-decreasing chain
    std::vector<std::uint32_t> jump;         // [0..n_real], 1-based into sizes
    std::vector<std::vector<NodeId>> prefix; // per chain entry; empty until touched
    std::vector<std::vector<NodeId>> suffix;
    std::vector<std::vector<std::uint8_t>> prefix_done, suffix_done;  // per entry, per block
    std::vector<std::vector<std::unique_ptr<Level>>> children;        // per entry, per e1-block

    std::uint64_t block_span(std::size_t i) const {  // enclosing block size for entry i
        return i == 0 ? n_pad : sizes[i - 1];
    }
};

namespace {

struct LazyCtx {
    AdditionTrace& trace;
    NodeId* pad;
    std::uint64_t cap;
    std::size_t* preprocess_additions;

    NodeId pad_node() {
        if (*pad == kNoNode) *pad = trace.add_pad_leaf();
        return *pad;
    }
};

using Level = RangeSumScheme::Level;

// Chain, jump table and padded variable array; no additions are emitted.
std::unique_ptr<Level> build_skeleton(LazyCtx& ctx, std::uint32_t t, std::uint64_t k,
                                      std::vector<NodeId> vars) {
    auto level = std::make_unique<Level>();
    level->t = t;
    level->k = k;
    level->n_real = vars.size();
    level->vars = std::move(vars);
    if (level->n_real <= 1) {
        level->n_pad = level->n_real;
        return level;
    }
    for (std::uint64_t a : size_chain(t, k, ctx.cap))
        if (a < level->n_real) level->sizes.push_back(a);
    if (level->sizes.empty()) level->sizes.push_back(2);

    const std::uint64_t top = level->sizes.front();
    level->n_pad = ((level->n_real + top - 1) / top) * top;
    if (level->n_pad != level->n_real) level->vars.resize(level->n_pad, ctx.pad_node());

    level->jump.assign(level->n_real + 1, 0);
    std::uint32_t i = 0;
    for (std::uint64_t s = level->n_real; s >= 1; --s) {
        while (i < level->sizes.size() && level->sizes[i] > s) ++i;
        level->jump[s] =
            (i < level->sizes.size()) ? i + 1 : static_cast<std::uint32_t>(level->sizes.size());
        if (s == 1) break;
    }

    const std::size_t q = level->sizes.size();
    level->prefix.resize(q);
    level->suffix.resize(q);
    level->prefix_done.resize(q);
    level->suffix_done.resize(q);
    level->children.resize(q);
    return level;
}

void touch_entry(Level& level, std::size_t i) {
    if (!level.prefix[i].empty()) return;
    level.prefix[i].assign(level.n_pad, kNoNode);
    level.suffix[i].assign(level.n_pad, kNoNode);
    const std::uint64_t blocks = level.n_pad / level.sizes[i];
    level.prefix_done[i].assign(blocks, 0);
    level.suffix_done[i].assign(blocks, 0);
    const std::uint64_t spans = level.n_pad / level.block_span(i);
    level.children[i].resize(spans);
}

// Prefix sums of one block: forward walk, one addition per real position.
// Entries reaching into the sentinel tail are tainted and alias the pad
// node; nothing reachable from an answer ever reads them.
void ensure_prefix(LazyCtx& ctx, Level& level, std::size_t i, std::uint64_t block) {
    touch_entry(level, i);
    if (level.prefix_done[i][block]) return;
    level.prefix_done[i][block] = 1;
    const std::uint64_t e0 = level.sizes[i];
    const std::uint64_t s = block * e0, e = s + e0 - 1;
    auto& pre = level.prefix[i];
    if (s >= level.n_real) {
        for (std::uint64_t j = s; j <= e; ++j) pre[j] = ctx.pad_node();
        return;
    }
    pre[s] = level.vars[s];
    for (std::uint64_t j = s + 1; j <= e; ++j) {
        if (j < level.n_real) {
            pre[j] = ctx.trace.add_sum(pre[j - 1], level.vars[j]);
            ++*ctx.preprocess_additions;
        } else {
            pre[j] = ctx.pad_node();
        }
    }
}

// Suffix sums of one block, walked backward with operands kept in position
// order. A block with a sentinel tail has only tainted suffixes. The whole-
// block sum is shared with the prefix table rather than re-added.
void ensure_suffix(LazyCtx& ctx, Level& level, std::size_t i, std::uint64_t block) {
    touch_entry(level, i);
    if (level.suffix_done[i][block]) return;
    level.suffix_done[i][block] = 1;
    ensure_prefix(ctx, level, i, block);
    const std::uint64_t e0 = level.sizes[i];
    const std::uint64_t s = block * e0, e = s + e0 - 1;
    auto& suf = level.suffix[i];
    if (e >= level.n_real) {
        for (std::uint64_t j = s; j <= e; ++j) suf[j] = ctx.pad_node();
        return;
    }
    suf[e] = level.vars[e];
    for (std::uint64_t j = e - 1; j > s; --j) {
        suf[j] = ctx.trace.add_sum(level.vars[j], suf[j + 1]);
        ++*ctx.preprocess_additions;
    }
    suf[s] = level.prefix[i][e];
}

// Child level over the block sums of chain entry i inside one enclosing
// block; materializes the needed block sums first.
Level& ensure_child(LazyCtx& ctx, Level& level, std::size_t i, std::uint64_t span_index) {
    touch_entry(level, i);
    auto& slot = level.children[i][span_index];
    if (slot) return *slot;
    const std::uint64_t e0 = level.sizes[i];
    const std::uint64_t e1 = level.block_span(i);
    const std::uint64_t first_block = span_index * (e1 / e0);
    std::vector<NodeId> sums;
    sums.reserve(e1 / e0);
    for (std::uint64_t b = 0; b < e1 / e0; ++b) {
        const std::uint64_t block = first_block + b;
        if (block * e0 >= level.n_real) {
            sums.push_back(ctx.pad_node());
            continue;
        }
        ensure_prefix(ctx, level, i, block);
        sums.push_back(level.prefix[i][block * e0 + e0 - 1]);
    }
    slot = build_skeleton(ctx, level.t >= 3 ? level.t - 2 : 1, e0, std::move(sums));
    return *slot;
}

NodeId solve_on_level(LazyCtx& ctx, Level& level, std::uint64_t lo, std::uint64_t hi,
                      std::size_t& additions) {
    if (lo == hi) return level.vars[lo];
    const std::uint64_t s = hi - lo + 1;
    const std::size_t idx = level.jump[s] - 1;
    const std::uint64_t e0 = level.sizes[idx];
    const std::uint64_t e1 = level.block_span(idx);

    if (idx >= 1 && lo / e1 != hi / e1) {
        // straddles exactly two blocks of the previous entry: one suffix,
        // one prefix, one addition
        ensure_suffix(ctx, level, idx - 1, lo / e1);
        ensure_prefix(ctx, level, idx - 1, hi / e1);
        ++additions;
        return ctx.trace.add_sum(level.suffix[idx - 1][lo], level.prefix[idx - 1][hi]);
    }

    std::uint64_t bl = lo / e0, bh = hi / e0;
    NodeId left = kNoNode, right = kNoNode, mid = kNoNode;
    if (lo % e0 != 0) {
        ensure_suffix(ctx, level, idx, bl);
        left = level.suffix[idx][lo];
        ++bl;
    }
    if ((hi + 1) % e0 != 0) {
        ensure_prefix(ctx, level, idx, bh);
        right = level.prefix[idx][hi];
        --bh;
    }
    if (bl <= bh) {
        if (bl == bh) {
            ensure_prefix(ctx, level, idx, bl);
            mid = level.prefix[idx][bl * e0 + e0 - 1];  // one full block: stored sum
        } else {
            const std::uint64_t span_index = lo / e1;
            Level& child = ensure_child(ctx, level, idx, span_index);
            const std::uint64_t base = span_index * (e1 / e0);
            mid = solve_on_level(ctx, child, bl - base, bh - base, additions);
        }
    }
    NodeId acc = left;
    for (NodeId piece : {mid, right}) {
        if (piece == kNoNode) continue;
        if (acc == kNoNode) { acc = piece; continue; }
        acc = ctx.trace.add_sum(acc, piece);
        ++additions;
    }
    return acc;
}

}  // namespace

RangeSumScheme::RangeSumScheme(AdditionTrace& trace, std::uint32_t n, std::uint32_t t,
                               std::uint64_t k)
    : trace_(trace) {
    std::vector<NodeId> leaves;
    leaves.reserve(n);
    for (std::uint32_t p = 1; p <= n; ++p) leaves.push_back(trace.add_leaf(p));
    pad_node_ = kNoNode;  // created only if padding is ever needed
    cap_ = n;
    LazyCtx ctx{trace_, &pad_node_, cap_, &preprocess_additions_};
    top_ = build_skeleton(ctx, t, k, std::move(leaves));
}

RangeSumScheme::~RangeSumScheme() = default;
RangeSumScheme::RangeSumScheme(RangeSumScheme&&) noexcept = default;

AdditionTrace::NodeId RangeSumScheme::solve(IntervalQuery q) {
    last_query_additions_ = 0;
    LazyCtx ctx{trace_, &pad_node_, cap_, &preprocess_additions_};
    return solve_on_level(ctx, *top_, q.lo - 1, q.hi - 1, last_query_additions_);
}

AdditionTrace build_trace(std::uint32_t n, std::span<const IntervalQuery> queries,
                          TraceBuildStats* stats) {
    AdditionTrace trace;
    if (queries.empty()) {
        if (stats) *stats = {};
        return trace;
    }
    const std::uint32_t c = inverse_ack(queries.size(), n);
    RangeSumScheme scheme(trace, n, 2 * c, 3 * c);
    std::size_t max_query = 0;
    std::unordered_map<std::uint64_t, NodeId> seen;  // identical queries share answers
    for (const IntervalQuery& q : queries) {
        const std::uint64_t key = (std::uint64_t(q.lo) << 32) | q.hi;
        auto it = seen.find(key);
        NodeId ans;
        if (it != seen.end()) {
            ans = it->second;
        } else {
            ans = scheme.solve(q);
            max_query = std::max(max_query, scheme.last_query_additions());
            seen.emplace(key, ans);
        }
        trace.push_answer(ans);
    }
    if (stats) {
        stats->c = c;
        stats->preprocess_additions = scheme.preprocess_additions();
        stats->max_query_additions = max_query;
    }
    return trace;
}

AdditionTrace naive_trace(std::uint32_t n, std::span<const IntervalQuery> queries) {
    AdditionTrace trace;
    std::vector<NodeId> leaves;
    leaves.reserve(n);
    for (std::uint32_t p = 1; p <= n; ++p) leaves.push_back(trace.add_leaf(p));
    for (const IntervalQuery& q : queries) {
        NodeId acc = leaves[q.lo - 1];
        for (std::uint32_t p = q.lo + 1; p <= q.hi; ++p) acc = trace.add_sum(acc, leaves[p - 1]);
        trace.push_answer(acc);
    }
    return trace;
}

void dump_trace(const AdditionTrace& trace, std::ostream& out) {
    for (NodeId id = 0; id < trace.num_nodes(); ++id) {
        if (trace.is_pad(id)) out << "P\n";
        else if (trace.is_leaf(id)) out << "W " << trace.position(id) << '\n';
        else out << "+ " << trace.left(id) << ' ' << trace.right(id) << '\n';
    }
    for (std::size_t q = 0; q < trace.answers().size(); ++q)
        out << "ans " << q << ' ' << trace.answers()[q] << '\n';
}

std::vector<std::uint32_t> expand_node(const AdditionTrace& trace, AdditionTrace::NodeId id) {
    std::vector<std::uint32_t> out;
    std::vector<NodeId> stack{id};
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        if (trace.is_pad(cur)) { out.push_back(0); continue; }
        if (trace.is_leaf(cur)) { out.push_back(trace.position(cur)); continue; }
        stack.push_back(trace.right(cur));  // left expanded first
        stack.push_back(trace.left(cur));
    }
    return out;
}

}  // namespace csmooth

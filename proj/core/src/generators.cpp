#include "csmooth/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csmooth/smoothing.hpp"

namespace csmooth {

namespace {

constexpr GateId kNoGate = 0xffffffffu;

// Product of the literals at the complement positions, following the vtree
// splits so the result is structured. Complement is given as up to two
// position intervals.
GateId vtree_product(Circuit& c, const Vtree& v, VtreeNodeId u,
                     const std::array<PosInterval, 2>& runs, std::vector<GateId>& lit_gate) {
    const PosInterval range = v.node(u).range;
    bool any = false;
    for (const auto& run : runs) {
        if (run.empty()) continue;
        if (!(run.hi < range.lo || run.lo > range.hi)) any = true;
    }
    if (!any) return kNoGate;
    if (v.node(u).leaf) {
        VarId x = v.node(u).var;
        if (lit_gate[x] == kNoGate) lit_gate[x] = c.add_literal(Literal{(std::int32_t)x});
        return lit_gate[x];
    }
    GateId l = vtree_product(c, v, v.node(u).left, runs, lit_gate);
    GateId r = vtree_product(c, v, v.node(u).right, runs, lit_gate);
    if (l == kNoGate) return r;
    if (r == kNoGate) return l;
    return c.add_and({l, r});
}

}  // namespace

GeneratedInstance build_worstcase(std::uint32_t n, const std::vector<PosInterval>& intervals) {
    if (n < 2) throw std::invalid_argument("worstcase family needs n >= 2");
    GeneratedInstance inst;
    inst.vtree = balanced_vtree(n);
    inst.intervals = intervals;
    Circuit& c = inst.circuit;
    c.set_num_vars(n);
    std::vector<GateId> lit_gate(n + 1, kNoGate);
    std::vector<GateId> products;
    for (const PosInterval& iv : intervals) {
        if (iv.empty() || iv.lo < 1 || iv.hi > n)
            throw std::invalid_argument("worstcase interval out of range");
        std::array<PosInterval, 2> runs{};
        if (iv.lo > 1) runs[0] = {1, iv.lo - 1};
        if (iv.hi < n) runs[1] = {iv.hi + 1, n};
        if (runs[0].empty() && runs[1].empty())
            throw std::invalid_argument("worstcase interval covers every variable");
        products.push_back(vtree_product(c, inst.vtree, inst.vtree.root(), runs, lit_gate));
    }
    c.add_or(products);
    return inst;
}

GeneratedInstance gen_worstcase(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("gen_worstcase needs n >= 4");
    Rng rng(seed ^ 0x776f727374ull);  // family-tagged seed stream
    std::vector<PosInterval> intervals;
    intervals.reserve(m);
    // Interval complements stay a handful of variables wide: every product
    // is then O(1) gates while missing Theta(n) variables, which is what
    // blows up one-at-a-time smoothing.
    const std::uint32_t max_keep = std::min<std::uint32_t>(8, n - 2);
    for (std::uint32_t i = 0; i < m; ++i) {
        std::uint32_t keep = static_cast<std::uint32_t>(rng.in_range(2, max_keep));
        std::uint32_t len = n - keep;
        std::uint32_t lo = static_cast<std::uint32_t>(rng.in_range(1, n - len + 1));
        intervals.push_back({lo, lo + len - 1});
    }
    GeneratedInstance inst = build_worstcase(n, intervals);
    return inst;
}

WorstcaseLadderPoint worstcase_ladder_point(std::size_t target_edges) {
    WorstcaseLadderPoint p;
    double scale = static_cast<double>(target_edges) / 40000.0;
    p.n = std::max<std::uint32_t>(48, static_cast<std::uint32_t>(std::lround(100.0 * std::pow(scale, 0.65))));
    // average product: keep ~ U[2,8] -> 2(keep-1)+1 = 9 edges per interval
    p.m = std::max<std::uint32_t>(4, static_cast<std::uint32_t>(target_edges / 9));
    return p;
}

Circuit gen_chain(std::uint32_t n, const std::vector<PosInterval>& intervals) {
    if (n < 3) throw std::invalid_argument("chain family needs n >= 3");
    Circuit c;
    c.set_num_vars(n);
    std::vector<GateId> lit(n + 1);
    for (std::uint32_t x = 1; x <= n; ++x) lit[x] = c.add_literal(Literal{(std::int32_t)x});
    std::vector<GateId> prefix(n + 1), suffix(n + 2);
    prefix[1] = lit[1];
    for (std::uint32_t k = 2; k <= n; ++k) prefix[k] = c.add_and({prefix[k - 1], lit[k]});
    suffix[n] = lit[n];
    for (std::uint32_t k = n - 1; k >= 1; --k) suffix[k] = c.add_and({suffix[k + 1], lit[k]});
    std::vector<GateId> tops;
    for (const PosInterval& iv : intervals) {
        if (iv.empty() || iv.lo < 2 || iv.hi > n - 1)
            throw std::invalid_argument("chain interval must stay inside [2, n-1]");
        tops.push_back(c.add_and({prefix[iv.lo - 1], suffix[iv.hi + 1]}));
    }
    tops.push_back(prefix[n]);
    tops.push_back(suffix[1]);
    c.add_or(tops);
    return c;
}

GeneratedInstance gen_chain_random(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
    Rng rng(seed ^ 0x636861696eull);
    std::vector<PosInterval> intervals;
    for (std::uint32_t i = 0; i < m; ++i) {
        std::uint32_t a = static_cast<std::uint32_t>(rng.in_range(2, n - 1));
        std::uint32_t b = static_cast<std::uint32_t>(rng.in_range(a, n - 1));
        intervals.push_back({a, b});
    }
    GeneratedInstance inst;
    inst.circuit = gen_chain(n, intervals);
    inst.intervals = std::move(intervals);
    return inst;
}

namespace {

VtreeNodeId random_vtree_shape(Vtree& v, Rng& rng, std::span<const VarId> vars,
                               const std::vector<double>& catalan) {
    if (vars.size() == 1) return v.add_leaf(vars[0]);
    const std::size_t k = vars.size();
    // left subtree size weighted by Catalan counts, so shapes are uniform
    double total = catalan[k - 1];
    double target = rng.unit() * total;
    std::size_t left = 1;
    double acc = 0.0;
    for (; left < k; ++left) {
        acc += catalan[left - 1] * catalan[k - left - 1];
        if (acc >= target || left == k - 1) break;
    }
    VtreeNodeId l = random_vtree_shape(v, rng, vars.subspan(0, left), catalan);
    VtreeNodeId r = random_vtree_shape(v, rng, vars.subspan(left), catalan);
    return v.add_internal(l, r);
}

Vtree random_vtree(std::uint32_t n, Rng& rng) {
    std::vector<VarId> vars(n);
    for (std::uint32_t i = 0; i < n; ++i) vars[i] = i + 1;
    for (std::uint32_t i = n; i > 1; --i) std::swap(vars[i - 1], vars[rng.below(i)]);
    std::vector<double> catalan(n + 1, 1.0);
    for (std::uint32_t i = 1; i <= n; ++i)
        catalan[i] = catalan[i - 1] * 2.0 * (2.0 * i - 1.0) / (i + 1.0);
    Vtree v;
    v.set_root(random_vtree_shape(v, rng, vars, catalan));
    v.finalize();
    return v;
}

GeneratedInstance try_random_structured(std::uint32_t n, std::uint32_t target_gates,
                                        std::uint64_t seed, bool deterministic) {
    Rng rng(seed);
    GeneratedInstance inst;
    inst.deterministic = deterministic;
    inst.vtree = random_vtree(n, rng);
    const Vtree& v = inst.vtree;
    Circuit& c = inst.circuit;
    c.set_num_vars(n);

    std::vector<GateId> lit_pos(n + 1), lit_neg(n + 1);
    for (std::uint32_t x = 1; x <= n; ++x) {
        lit_pos[x] = c.add_literal(Literal{(std::int32_t)x});
        lit_neg[x] = c.add_literal(Literal{-(std::int32_t)x});
    }

    // Post-order over vtree nodes; each internal node contributes a few AND
    // pairings of its child pools and OR mixes over its subtree.
    std::vector<std::vector<GateId>> pool(v.num_nodes());
    std::vector<VtreeNodeId> order;
    {
        std::vector<VtreeNodeId> stack{v.root()};
        while (!stack.empty()) {
            VtreeNodeId u = stack.back();
            stack.pop_back();
            order.push_back(u);
            if (!v.node(u).leaf) {
                stack.push_back(v.node(u).left);
                stack.push_back(v.node(u).right);
            }
        }
        std::reverse(order.begin(), order.end());  // children before parents
    }
    auto pick = [&](const std::vector<GateId>& p) { return p[rng.below(p.size())]; };
    auto leaf_var_in = [&](VtreeNodeId u) {
        const PosInterval r = v.node(u).range;
        return v.var_at(static_cast<std::uint32_t>(rng.in_range(r.lo, r.hi)));
    };

    const std::uint32_t internal_nodes = n > 1 ? n - 1 : 1;
    const std::uint32_t per_node = std::max<std::uint32_t>(
        1, target_gates / std::max<std::uint32_t>(1, 3 * internal_nodes));
    for (VtreeNodeId u : order) {
        const auto& nd = v.node(u);
        if (nd.leaf) {
            pool[u] = {lit_pos[nd.var], lit_neg[nd.var]};
            continue;
        }
        std::vector<GateId> local;
        for (std::uint32_t r = 0; r < per_node + 1; ++r) {
            GateId a = pick(pool[nd.left]);
            GateId b = pick(pool[nd.right]);
            local.push_back(c.add_and({a, b}));
        }
        std::uint32_t or_count = 1 + static_cast<std::uint32_t>(rng.below(per_node + 1));
        for (std::uint32_t r = 0; r < or_count; ++r) {
            if (deterministic) {
                // decision on a variable of the left subtree keeps OR
                // children mutually exclusive under every assignment; the
                // bare-literal variant leaves a vtree gap on that edge
                VarId x = leaf_var_in(nd.left);
                GateId a = c.add_and({lit_pos[x], pick(pool[nd.right])});
                if (rng.below(4) < 3) {
                    local.push_back(c.add_or({a, lit_neg[x]}));
                } else {
                    GateId b = c.add_and({lit_neg[x], pick(pool[nd.right])});
                    local.push_back(c.add_or({a, b}));
                }
            } else {
                std::vector<GateId> kids;
                std::uint32_t kcount = 2 + static_cast<std::uint32_t>(rng.below(2));
                for (std::uint32_t j = 0; j < kcount; ++j) {
                    std::uint64_t which = rng.below(3);
                    const std::vector<GateId>& src =
                        which == 0 ? local : (which == 1 ? pool[nd.left] : pool[nd.right]);
                    kids.push_back(pick(src.empty() ? local : src));
                }
                local.push_back(c.add_or(kids));
            }
        }
        pool[u] = std::move(local);
    }

    // root gate: an OR mapped to the vtree root
    if (deterministic) {
        const auto& nd = v.node(v.root());
        VarId x = n > 1 ? leaf_var_in(nd.left) : 1;
        if (n > 1) {
            GateId a = c.add_and({lit_pos[x], pick(pool[nd.right])});
            c.add_or({a, lit_neg[x]});
        } else {
            c.add_or({lit_pos[1], lit_neg[1]});
        }
    } else {
        std::vector<GateId> kids;
        std::uint32_t kcount = 2 + static_cast<std::uint32_t>(rng.below(3));
        for (std::uint32_t j = 0; j < kcount; ++j) kids.push_back(pick(pool[v.root()]));
        c.add_or(kids);
    }
    return inst;
}

}  // namespace

GeneratedInstance gen_random_structured(std::uint32_t n, std::uint32_t target_gates,
                                        std::uint64_t seed, bool deterministic) {
    if (n < 1) throw std::invalid_argument("gen_random_structured needs n >= 1");
    // Redraw until enough OR edges actually need smoothing (bounded, and a
    // pure function of the seed).
    std::uint64_t s = seed;
    GeneratedInstance inst;
    for (int attempt = 0; attempt < 20; ++attempt) {
        inst = try_random_structured(n, target_gates, s, deterministic);
        std::size_t or_edges = 0;
        for (GateId g = 0; g < inst.circuit.num_gates(); ++g)
            if (inst.circuit.kind(g) == GateKind::Or) or_edges += inst.circuit.fanin(g);
        if (or_edges == 0) { s += 0x9e3779b97f4a7c15ull; continue; }
        // measured against the vtree-node gap notion, which is what the
        // structured smoother pads
        GapAnalysis ga = analyze_gaps(inst.circuit, inst.vtree, GapTargets::VtreeFull);
        std::size_t gap_or_edges = 0;
        for (const GapSite& site : ga.sites)
            if (inst.circuit.kind(site.parent) == GateKind::Or) ++gap_or_edges;
        if (gap_or_edges * 10 >= or_edges * 3) return inst;  // >= 30%
        s += 0x9e3779b97f4a7c15ull;
    }
    return inst;
}

}  // namespace csmooth

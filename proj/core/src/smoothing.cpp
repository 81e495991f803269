#include "csmooth/smoothing.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "csmooth/rangesum.hpp"
#include "csmooth/transform.hpp"
#include "csmooth/validate.hpp"

namespace csmooth {

const char* to_string(SmoothMethod m) {
    switch (m) {
        case SmoothMethod::Naive: return "naive";
        case SmoothMethod::RangeSum: return "rangesum";
        case SmoothMethod::Structured: return "structured";
    }
    return "?";
}

std::array<PosInterval, 2> gap_intervals(VtreeNodeId parent_vnode, VtreeNodeId child_vnode,
                                         const Vtree& v) {
    if (!v.is_ancestor_or_equal(parent_vnode, child_vnode))
        throw std::invalid_argument("gap_intervals: nodes are not ancestor-related");
    const PosInterval p = v.node(parent_vnode).range;
    const PosInterval c = v.node(child_vnode).range;
    std::array<PosInterval, 2> out{};
    if (c.lo > p.lo) out[0] = {p.lo, c.lo - 1};
    if (c.hi < p.hi) out[1] = {c.hi + 1, p.hi};
    return out;
}

namespace {

constexpr std::size_t kSmoothCheckBudget = 20'000'000;

// Constant value of a variable-free gate.
bool const_value(GateId g, const std::vector<char>& val_cache) { return val_cache[g] != 0; }

std::vector<char> fold_constants(const Circuit& c, const std::vector<PosInterval>& span) {
    std::vector<char> val(c.num_gates(), 0);
    for (GateId g = 0; g < c.num_gates(); ++g) {
        if (!span[g].empty()) continue;  // only var-free gates matter
        switch (c.kind(g)) {
            case GateKind::True: val[g] = 1; break;
            case GateKind::False: val[g] = 0; break;
            case GateKind::And: {
                char v = 1;
                for (GateId k : c.children(g)) v = v && val[k];
                val[g] = v;
                break;
            }
            case GateKind::Or: {
                char v = 0;
                for (GateId k : c.children(g)) v = v || val[k];
                val[g] = v;
                break;
            }
            default: break;
        }
    }
    return val;
}

}  // namespace

GapAnalysis analyze_gaps(const Circuit& c, const Vtree& v, GapTargets targets) {
    if (c.num_vars() != v.num_vars())
        throw std::invalid_argument("analyze_gaps: circuit and vtree variable counts differ");

    GapAnalysis ga;
    auto smooth_now = check_smooth_budgeted(c, kSmoothCheckBudget);
    if (smooth_now && smooth_now->ok) {
        ga.already_smooth = true;
        ga.structure.ok = true;
        ga.structure.circuit = c;
        return ga;
    }

    ga.structure = infer_structure_map(c, v);
    if (!ga.structure.ok)
        throw StructureError(ga.structure.offending_gate, ga.structure.reason);
    const Circuit& cc = ga.structure.circuit;
    const auto& rho = ga.structure.map.rho;
    const std::vector<char> const_val = fold_constants(cc, ga.structure.map.var_span);

    ga.padded_span.assign(cc.num_gates(), {});
    auto& padded = ga.padded_span;

    auto push_site = [&](GapSite site) {
        for (const auto& iv : site.gaps) ga.gap_positions += iv.length();
        ga.sites.push_back(std::move(site));
    };

    const bool span_targets = targets == GapTargets::Span;
    for (GateId g = 0; g < cc.num_gates(); ++g) {
        switch (cc.kind(g)) {
            case GateKind::Literal: {
                std::uint32_t p = v.position_of(cc.literal(g).var());
                padded[g] = {p, p};
                break;
            }
            case GateKind::True:
            case GateKind::False: break;  // var-free
            case GateKind::And: {
                auto kids = cc.children(g);
                if (kids.empty()) break;
                const PosInterval s1 = padded[kids[0]];
                const PosInterval s2 = padded[kids[1]];
                if (s1.empty() && s2.empty()) break;
                if (span_targets) {
                    if (!s1.empty() && !s2.empty()) {
                        // close the hole between the children, split at the
                        // vtree slot boundary so decomposability is kept
                        const auto& nd = v.node(rho[g]);
                        const std::uint32_t boundary = v.node(nd.left).range.hi;
                        assert(s1.hi <= boundary && s2.lo > boundary);
                        if (s1.hi < boundary) {
                            GapSite site;
                            site.parent = g;
                            site.child_index = 0;
                            site.kind = GapSite::Kind::Pad;
                            site.gaps[1] = {s1.hi + 1, boundary};
                            site.target = {s1.lo, boundary};
                            push_site(std::move(site));
                        }
                        if (boundary + 1 < s2.lo) {
                            GapSite site;
                            site.parent = g;
                            site.child_index = 1;
                            site.kind = GapSite::Kind::Pad;
                            site.gaps[0] = {boundary + 1, s2.lo - 1};
                            site.target = {boundary + 1, s2.hi};
                            push_site(std::move(site));
                        }
                        padded[g] = {s1.lo, s2.hi};
                    } else {
                        padded[g] = s1.empty() ? s2 : s1;  // var-free side adds nothing
                    }
                } else {
                    const auto& nd = v.node(rho[g]);
                    const VtreeNodeId slots[2] = {nd.left, nd.right};
                    for (std::uint32_t i = 0; i < 2; ++i) {
                        const GateId k = kids[i];
                        const PosInterval target = v.node(slots[i]).range;
                        if (padded[k].empty()) {
                            GapSite site;
                            site.parent = g;
                            site.child_index = i;
                            site.kind = const_value(k, const_val) ? GapSite::Kind::Replace
                                                                      : GapSite::Kind::FalsePad;
                            site.gaps[0] = target;
                            site.target = target;
                            site.target_node = slots[i];
                            push_site(std::move(site));
                        } else {
                            auto gaps = gap_intervals(slots[i], rho[k], v);
                            if (!gaps[0].empty() || !gaps[1].empty()) {
                                GapSite site;
                                site.parent = g;
                                site.child_index = i;
                                site.kind = GapSite::Kind::Pad;
                                site.gaps = gaps;
                                site.target = target;
                                site.target_node = slots[i];
                                site.child_rho = rho[k];
                                push_site(std::move(site));
                            }
                        }
                    }
                    padded[g] = v.node(rho[g]).range;
                }
                break;
            }
            case GateKind::Or: {
                auto kids = cc.children(g);
                if (kids.empty()) break;
                PosInterval target;
                VtreeNodeId target_node = kNoVtreeNode;
                if (span_targets) {
                    for (GateId k : kids) {
                        if (padded[k].empty()) continue;
                        target = target.empty() ? padded[k]
                                                : PosInterval{std::min(target.lo, padded[k].lo),
                                                              std::max(target.hi, padded[k].hi)};
                    }
                    if (target.empty()) break;  // fully var-free OR
                } else {
                    bool any = false;
                    for (GateId k : kids) any = any || !padded[k].empty();
                    if (!any) break;
                    target_node = rho[g];
                    target = v.node(target_node).range;
                }
                for (std::uint32_t i = 0; i < kids.size(); ++i) {
                    const GateId k = kids[i];
                    if (padded[k].empty()) {
                        GapSite site;
                        site.parent = g;
                        site.child_index = i;
                        site.kind = const_value(k, const_val) ? GapSite::Kind::Replace
                                                                  : GapSite::Kind::FalsePad;
                        site.gaps[0] = target;
                        site.target = target;
                        site.target_node = target_node;
                        push_site(std::move(site));
                        continue;
                    }
                    GapSite site;
                    site.parent = g;
                    site.child_index = i;
                    site.kind = GapSite::Kind::Pad;
                    site.target = target;
                    site.target_node = target_node;
                    if (!span_targets) site.child_rho = rho[k];
                    if (padded[k].lo > target.lo) site.gaps[0] = {target.lo, padded[k].lo - 1};
                    if (padded[k].hi < target.hi) site.gaps[1] = {padded[k].hi + 1, target.hi};
                    if (!site.gaps[0].empty() || !site.gaps[1].empty())
                        push_site(std::move(site));
                }
                padded[g] = target;
                break;
            }
        }
    }
    return ga;
}

namespace {

constexpr GateId kNoGate = 0xffffffffu;

// Rebuilds the input circuit gate by gate, splicing smoothing gates in front
// of the parents that need them. Original gates keep their relative order.
struct Rebuilder {
    const Circuit& in;
    const Vtree& v;
    Circuit out;
    std::vector<GateId> map;
    std::vector<GateId> lit_pos, lit_neg, taut_or;

    Rebuilder(const Circuit& input, const Vtree& vtree) : in(input), v(vtree) {
        out.set_num_vars(input.num_vars());
        out.reserve(input.num_gates() * 2, input.num_edges() * 2);
        map.assign(input.num_gates(), kNoGate);
        lit_pos.assign(vtree.num_vars() + 1, kNoGate);
        lit_neg.assign(vtree.num_vars() + 1, kNoGate);
        taut_or.assign(vtree.num_vars() + 1, kNoGate);
    }

    // Shared (x | -x) gate for a variable, created on first use.
    GateId taut(VarId x) {
        if (taut_or[x] != kNoGate) return taut_or[x];
        if (lit_pos[x] == kNoGate) lit_pos[x] = out.add_literal(Literal{(std::int32_t)x});
        if (lit_neg[x] == kNoGate) lit_neg[x] = out.add_literal(Literal{-(std::int32_t)x});
        taut_or[x] = out.add_or({lit_pos[x], lit_neg[x]});
        return taut_or[x];
    }
    GateId taut_at(std::uint32_t pos) { return taut(v.var_at(pos)); }

    void emit_original(GateId g, std::span<const GateId> new_children) {
        switch (in.kind(g)) {
            case GateKind::Literal: map[g] = out.add_literal(in.literal(g)); break;
            case GateKind::True: map[g] = out.add_constant(true); break;
            case GateKind::False: map[g] = out.add_constant(false); break;
            case GateKind::And:
            case GateKind::Or: map[g] = out.add_gate(in.kind(g), new_children); break;
        }
    }
};

using SiteGateFn = GateId (*)(Rebuilder&, const GapSite&, GateId, void*);

SmoothResult materialize(const Circuit& input_for_stats, const Circuit& cc, const Vtree& v,
                         const std::vector<GapSite>& sites, SmoothMethod method,
                         std::size_t trace_additions, SiteGateFn site_gate, void* ctx) {
    Rebuilder rb(cc, v);
    std::size_t next_site = 0;
    std::vector<GateId> kids;
    for (GateId g = 0; g < cc.num_gates(); ++g) {
        auto ch = cc.children(g);
        kids.assign(ch.size(), kNoGate);
        for (std::size_t i = 0; i < ch.size(); ++i) kids[i] = rb.map[ch[i]];
        while (next_site < sites.size() && sites[next_site].parent == g) {
            const GapSite& site = sites[next_site++];
            kids[site.child_index] = site_gate(rb, site, kids[site.child_index], ctx);
        }
        rb.emit_original(g, kids);
    }

    SmoothResult res;
    res.circuit = std::move(rb.out);
    res.stats.method = method;
    res.stats.input_edges = input_for_stats.num_edges();
    res.stats.added_gates = res.circuit.num_gates() >= input_for_stats.num_gates()
                                ? res.circuit.num_gates() - input_for_stats.num_gates()
                                : 0;
    res.stats.added_edges = res.circuit.num_edges() >= input_for_stats.num_edges()
                                ? res.circuit.num_edges() - input_for_stats.num_edges()
                                : 0;
    res.stats.trace_additions = trace_additions;
    res.stats.gap_sites = sites.size();
    return res;
}

SmoothResult unchanged(const Circuit& c, SmoothMethod method) {
    SmoothResult res;
    res.circuit = c;
    res.stats.method = method;
    res.stats.input_edges = c.num_edges();
    return res;
}

// Removes False gates by constant propagation: AND gates with a false child
// become False, false children of OR gates are dropped. Equivalence and
// determinism preserving; only needed when the structured smoother meets an
// input that was not false-pruned.
Circuit fold_false(const Circuit& c) {
    Circuit out;
    out.set_num_vars(c.num_vars());
    std::vector<GateId> map(c.num_gates());
    std::vector<GateId> kids;
    for (GateId g = 0; g < c.num_gates(); ++g) {
        switch (c.kind(g)) {
            case GateKind::Literal: map[g] = out.add_literal(c.literal(g)); break;
            case GateKind::True: map[g] = out.add_constant(true); break;
            case GateKind::False: map[g] = out.add_constant(false); break;
            case GateKind::And: {
                bool dead = false;
                for (GateId k : c.children(g)) dead = dead || out.kind(map[k]) == GateKind::False;
                if (dead) { map[g] = out.add_constant(false); break; }
                kids.clear();
                for (GateId k : c.children(g)) kids.push_back(map[k]);
                map[g] = out.add_and(kids);
                break;
            }
            case GateKind::Or: {
                kids.clear();
                for (GateId k : c.children(g))
                    if (out.kind(map[k]) != GateKind::False) kids.push_back(map[k]);
                map[g] = kids.empty() ? out.add_constant(false) : out.add_or(kids);
                break;
            }
        }
    }
    if (map[c.root()] != out.root()) {
        GateId src = map[c.root()];
        switch (out.kind(src)) {
            case GateKind::Literal: out.add_literal(out.literal(src)); break;
            case GateKind::True: out.add_constant(true); break;
            case GateKind::False: out.add_constant(false); break;
            default: {
                std::vector<GateId> ks(out.children(src).begin(), out.children(src).end());
                out.add_gate(out.kind(src), ks);
                break;
            }
        }
    }
    return out;
}

}  // namespace

SmoothResult smooth_naive(const Circuit& c, const Vtree& v) {
    GapAnalysis ga = analyze_gaps(c, v, GapTargets::Span);
    if (ga.already_smooth || ga.sites.empty()) return unchanged(c, SmoothMethod::Naive);
    auto site_gate = [](Rebuilder& rb, const GapSite& site, GateId child, void*) -> GateId {
        GateId cur = site.kind == GapSite::Kind::Replace ? kNoGate : child;
        for (const auto& iv : site.gaps) {
            if (iv.empty()) continue;
            for (std::uint32_t p = iv.lo; p <= iv.hi; ++p) {
                GateId tg = rb.taut_at(p);
                cur = (cur == kNoGate) ? tg : rb.out.add_and({cur, tg});
            }
        }
        return cur;
    };
    return materialize(c, ga.structure.circuit, v, ga.sites, SmoothMethod::Naive, 0, site_gate,
                       nullptr);
}

SmoothResult smooth_rangesum(const Circuit& c, const Vtree& v) {
    GapAnalysis ga = analyze_gaps(c, v, GapTargets::Span);
    if (ga.already_smooth || ga.sites.empty()) return unchanged(c, SmoothMethod::RangeSum);

    // One batched trace answers every gap interval of every site.
    std::vector<IntervalQuery> queries;
    std::vector<std::array<std::uint32_t, 2>> site_query(ga.sites.size(),
                                                         {kNoGate, kNoGate});
    for (std::size_t si = 0; si < ga.sites.size(); ++si) {
        for (std::size_t j = 0; j < 2; ++j) {
            const auto& iv = ga.sites[si].gaps[j];
            if (iv.empty()) continue;
            site_query[si][j] = static_cast<std::uint32_t>(queries.size());
            queries.push_back(iv);
        }
    }
    TraceBuildStats tstats;
    AdditionTrace trace = build_trace(v.num_vars(), queries, &tstats);

    struct Ctx {
        const AdditionTrace& trace;
        const std::vector<std::array<std::uint32_t, 2>>& site_query;
        const std::vector<GapSite>* sites;
        std::vector<GateId> trace_gate;
        bool emitted = false;
    } ctx{trace, site_query, &ga.sites, {}, false};

    auto site_gate = [](Rebuilder& rb, const GapSite& site, GateId child, void* vctx) -> GateId {
        Ctx& ctx = *static_cast<Ctx*>(vctx);
        if (!ctx.emitted) {
            // materialize the whole trace up front: leaves become shared
            // (x | -x) gates, additions become AND gates
            ctx.trace_gate.assign(ctx.trace.num_nodes(), kNoGate);
            GateId pad_true = kNoGate;
            for (AdditionTrace::NodeId id = 0; id < ctx.trace.num_nodes(); ++id) {
                if (ctx.trace.is_pad(id)) {
                    if (pad_true == kNoGate) pad_true = rb.out.add_constant(true);
                    ctx.trace_gate[id] = pad_true;
                } else if (ctx.trace.is_leaf(id)) {
                    ctx.trace_gate[id] = rb.taut_at(ctx.trace.position(id));
                } else {
                    ctx.trace_gate[id] = rb.out.add_and(
                        {ctx.trace_gate[ctx.trace.left(id)], ctx.trace_gate[ctx.trace.right(id)]});
                }
            }
            ctx.emitted = true;
        }
        const std::size_t si = static_cast<std::size_t>(&site - ctx.sites->data());
        GateId cur = site.kind == GapSite::Kind::Replace ? kNoGate : child;
        for (std::size_t j = 0; j < 2; ++j) {
            if (ctx.site_query[si][j] == kNoGate) continue;
            GateId piece = ctx.trace_gate[ctx.trace.answers()[ctx.site_query[si][j]]];
            cur = (cur == kNoGate) ? piece : rb.out.add_and({cur, piece});
        }
        return cur;
    };
    return materialize(c, ga.structure.circuit, v, ga.sites, SmoothMethod::RangeSum,
                       trace.addition_count(), site_gate, &ctx);
}

SmoothResult smooth_structured(const Circuit& c, const Vtree& v) {
    // The structured smoother cannot pad a False gate without breaking the
    // vtree mapping, so degenerate inputs are constant-folded first.
    const Circuit* input = &c;
    Circuit folded;
    for (GateId g = 0; g < c.num_gates(); ++g) {
        if (c.kind(g) == GateKind::False) {
            folded = fold_false(c);
            input = &folded;
            break;
        }
    }
    GapAnalysis ga = analyze_gaps(*input, v, GapTargets::VtreeFull);
    if (ga.already_smooth || ga.sites.empty()) return unchanged(*input, SmoothMethod::Structured);

    struct Ctx {
        const Vtree& v;
        std::vector<GateId> sg;  // per vtree node, lazily built smoothing gate
    } ctx{v, std::vector<GateId>(v.num_nodes(), kNoGate)};

    auto site_gate = [](Rebuilder& rb, const GapSite& site, GateId child, void* vctx) -> GateId {
        Ctx& ctx = *static_cast<Ctx*>(vctx);
        // structured smoothing gate for a whole vtree node
        auto sg_of = [&](VtreeNodeId u) -> GateId {
            std::vector<VtreeNodeId> todo{u};
            while (!todo.empty()) {
                VtreeNodeId w = todo.back();
                if (ctx.sg[w] != kNoGate) { todo.pop_back(); continue; }
                const auto& nd = ctx.v.node(w);
                if (nd.leaf) {
                    ctx.sg[w] = rb.taut(nd.var);
                    todo.pop_back();
                    continue;
                }
                if (ctx.sg[nd.left] == kNoGate) { todo.push_back(nd.left); continue; }
                if (ctx.sg[nd.right] == kNoGate) { todo.push_back(nd.right); continue; }
                ctx.sg[w] = rb.out.add_and({ctx.sg[nd.left], ctx.sg[nd.right]});
                todo.pop_back();
            }
            return ctx.sg[u];
        };
        if (site.kind == GapSite::Kind::Replace) return sg_of(site.target_node);
        assert(site.kind == GapSite::Kind::Pad);
        // climb from the child's node to the target, conjoining the sibling
        // smoothing gate at every step; each AND maps exactly to the node it
        // is created at, so the output respects the vtree
        GateId cur = child;
        VtreeNodeId w = site.child_rho;
        while (w != site.target_node) {
            VtreeNodeId p = ctx.v.node(w).parent;
            const auto& pn = ctx.v.node(p);
            if (pn.left == w) cur = rb.out.add_and({cur, sg_of(pn.right)});
            else cur = rb.out.add_and({sg_of(pn.left), cur});
            w = p;
        }
        return cur;
    };
    return materialize(c, ga.structure.circuit, v, ga.sites, SmoothMethod::Structured, 0,
                       site_gate, &ctx);
}

SmoothResult smooth(const Circuit& c, const Vtree& v, SmoothMethod method) {
    switch (method) {
        case SmoothMethod::Naive: return smooth_naive(c, v);
        case SmoothMethod::RangeSum: return smooth_rangesum(c, v);
        case SmoothMethod::Structured: return smooth_structured(c, v);
    }
    throw std::invalid_argument("unknown smoothing method");
}

}  // namespace csmooth

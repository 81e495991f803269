#include "csmooth/structure.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace csmooth {

namespace {

// Can a variable-free gate be placed exactly at vtree node u? Constants fit
// anywhere; a var-free binary AND needs an internal node whose child slots
// accept its children; a var-free OR passes its node through to every child.
struct Placer {
    const Circuit& c;
    const Vtree& v;
    std::unordered_map<std::uint64_t, bool> memo;

    bool placeable(GateId g, VtreeNodeId u) {
        switch (c.kind(g)) {
            case GateKind::True:
            case GateKind::False: return true;
            case GateKind::And: {
                auto kids = c.children(g);
                if (kids.empty()) return true;
                std::uint64_t key = (std::uint64_t(g) << 32) | u;
                auto it = memo.find(key);
                if (it != memo.end()) return it->second;
                const auto& nd = v.node(u);
                bool ok = !nd.leaf && placeable(kids[0], nd.left) && placeable(kids[1], nd.right);
                memo.emplace(key, ok);
                return ok;
            }
            case GateKind::Or: {
                std::uint64_t key = (std::uint64_t(g) << 32) | u;
                auto it = memo.find(key);
                if (it != memo.end()) return it->second;
                bool ok = true;
                for (GateId k : c.children(g)) ok = ok && placeable(k, u);
                memo.emplace(key, ok);
                return ok;
            }
            default: return true;  // unreachable for var-free gates
        }
    }
};

struct Failure {
    GateId gate;
    std::string reason;
};

}  // namespace

StructureResult infer_structure_map(const Circuit& c, const Vtree& v) {
    StructureResult res;
    const std::size_t count = c.num_gates();
    std::vector<bool> floating(count, false);
    std::vector<PosInterval> span(count);
    std::vector<VtreeNodeId> rho(count, kNoVtreeNode);
    Placer placer{c, v, {}};

    auto fail = [&](GateId g, std::string reason) {
        res.ok = false;
        res.offending_gate = g;
        res.reason = std::move(reason);
        return res;
    };

    // Bottom-up: spans and rho for gates that mention variables.
    for (GateId g = 0; g < count; ++g) {
        switch (c.kind(g)) {
            case GateKind::True:
            case GateKind::False: floating[g] = true; break;
            case GateKind::Literal: {
                VarId x = c.literal(g).var();
                if (x > v.num_vars()) return fail(g, "variable not in vtree");
                std::uint32_t p = v.position_of(x);
                span[g] = {p, p};
                rho[g] = v.leaf_of(x);
                break;
            }
            case GateKind::And: {
                auto kids = c.children(g);
                if (kids.size() != 0 && kids.size() != 2)
                    return fail(g, "AND gate must have 0 or 2 children (run normalize first)");
                if (kids.empty()) { floating[g] = true; break; }
                const GateId a = kids[0], b = kids[1];
                if (floating[a] && floating[b]) { floating[g] = true; break; }
                if (!floating[a] && !floating[b]) {
                    VtreeNodeId u = v.lca(rho[a], rho[b]);
                    if (u == rho[a] || u == rho[b])
                        return fail(g, "AND children overlap in the vtree");
                    const auto& nd = v.node(u);
                    if (!v.is_ancestor_or_equal(nd.left, rho[a]))
                        return fail(g, "left AND child maps into the right vtree subtree");
                    rho[g] = u;
                    span[g] = {span[a].lo, span[b].hi};
                    break;
                }
                // One var-free child: lowest ancestor putting the other child
                // in its proper slot while the var-free child still fits.
                const bool left_floating = floating[a];
                const GateId anchor = left_floating ? b : a;
                VtreeNodeId cur = rho[anchor];
                VtreeNodeId found = kNoVtreeNode;
                while (v.node(cur).parent != kNoVtreeNode) {
                    VtreeNodeId par = v.node(cur).parent;
                    const auto& pn = v.node(par);
                    const bool anchor_on_right = v.is_ancestor_or_equal(pn.right, rho[anchor]);
                    if (anchor_on_right == left_floating) {
                        VtreeNodeId slot = left_floating ? pn.left : pn.right;
                        if (placer.placeable(left_floating ? a : b, slot)) { found = par; break; }
                    }
                    cur = par;
                }
                if (found == kNoVtreeNode)
                    return fail(g, "no vtree node accommodates this AND gate");
                rho[g] = found;
                span[g] = span[anchor];
                break;
            }
            case GateKind::Or: {
                VtreeNodeId r = kNoVtreeNode;
                PosInterval sp;
                bool any_floating = false;
                for (GateId k : c.children(g)) {
                    if (floating[k]) { any_floating = true; continue; }
                    r = (r == kNoVtreeNode) ? rho[k] : v.lca(r, rho[k]);
                    sp = sp.empty() ? span[k]
                                    : PosInterval{std::min(sp.lo, span[k].lo),
                                                  std::max(sp.hi, span[k].hi)};
                }
                if (r == kNoVtreeNode) { floating[g] = true; break; }
                if (any_floating) {
                    while (true) {
                        bool ok = true;
                        for (GateId k : c.children(g))
                            if (floating[k]) ok = ok && placer.placeable(k, r);
                        if (ok) break;
                        r = v.node(r).parent;
                        if (r == kNoVtreeNode)
                            return fail(g, "no vtree node accommodates this OR gate");
                    }
                }
                rho[g] = r;
                span[g] = sp;
                break;
            }
        }
    }

    // Top-down: placement demands for var-free gates. Parents sit at higher
    // ids, so a descending sweep sees every demand before propagating it.
    std::vector<std::vector<VtreeNodeId>> demands(count);
    auto add_demand = [&](GateId g, VtreeNodeId u) {
        auto& d = demands[g];
        if (std::find(d.begin(), d.end(), u) == d.end()) d.push_back(u);
    };
    if (floating[c.root()]) {
        if (!placer.placeable(c.root(), v.root()))
            return fail(c.root(), "var-free root does not fit the vtree");
        add_demand(c.root(), v.root());
    }
    for (GateId g = count; g-- > 0;) {
        if (floating[g]) {
            if (demands[g].empty()) {
                // unreferenced var-free gate: park it at the vtree root
                if (!placer.placeable(g, v.root()))
                    return fail(g, "var-free gate does not fit the vtree");
                add_demand(g, v.root());
            }
            for (VtreeNodeId u : demands[g]) {
                const auto& nd = v.node(u);
                auto kids = c.children(g);
                if (c.kind(g) == GateKind::And && !kids.empty()) {
                    add_demand(kids[0], nd.left);
                    add_demand(kids[1], nd.right);
                } else if (c.kind(g) == GateKind::Or) {
                    for (GateId k : kids) add_demand(k, u);
                }
            }
            continue;
        }
        auto kids = c.children(g);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (!floating[kids[i]]) continue;
            if (c.kind(g) == GateKind::And) {
                const auto& nd = v.node(rho[g]);
                add_demand(kids[i], i == 0 ? nd.left : nd.right);
            } else {
                add_demand(kids[i], rho[g]);
            }
        }
    }

    bool conflict = false;
    for (GateId g = 0; g < count && !conflict; ++g)
        conflict = floating[g] && demands[g].size() > 1;

    if (!conflict) {
        for (GateId g = 0; g < count; ++g)
            if (floating[g]) rho[g] = demands[g].empty() ? v.root() : demands[g][0];
        res.ok = true;
        res.circuit = c;
        res.map.rho = std::move(rho);
        res.map.var_span = std::move(span);
        return res;
    }

    // Conflicting demands: rebuild with one copy of each var-free gate per
    // demanded vtree node. Var-free subtrees only contain var-free gates, so
    // instances can be emitted recursively right before their first use.
    Circuit out;
    out.set_num_vars(c.num_vars());
    std::vector<GateId> map(count);
    std::vector<VtreeNodeId> out_rho;
    std::vector<PosInterval> out_span;
    std::unordered_map<std::uint64_t, GateId> instance;

    auto emit_tracking = [&](GateId new_id, VtreeNodeId r, PosInterval sp) {
        (void)new_id;
        out_rho.push_back(r);
        out_span.push_back(sp);
    };

    // NOLINTNEXTLINE(misc-no-recursion)
    auto instantiate = [&](auto&& self, GateId g, VtreeNodeId u) -> GateId {
        std::uint64_t key = (std::uint64_t(g) << 32) | u;
        auto it = instance.find(key);
        if (it != instance.end()) return it->second;
        GateId id;
        switch (c.kind(g)) {
            case GateKind::True: id = out.add_constant(true); break;
            case GateKind::False: id = out.add_constant(false); break;
            case GateKind::And: {
                auto kids = c.children(g);
                if (kids.empty()) { id = out.add_and({}); break; }
                const auto& nd = v.node(u);
                GateId a = self(self, kids[0], nd.left);
                GateId b = self(self, kids[1], nd.right);
                id = out.add_and({a, b});
                break;
            }
            case GateKind::Or: {
                std::vector<GateId> ks;
                for (GateId k : c.children(g)) ks.push_back(self(self, k, u));
                id = out.add_or(ks);
                break;
            }
            default: id = 0; break;  // unreachable
        }
        emit_tracking(id, u, {});
        instance.emplace(key, id);
        return id;
    };

    std::vector<GateId> kids;
    for (GateId g = 0; g < count; ++g) {
        if (floating[g]) {
            // Emitted on demand by parents; unreferenced ones get their
            // parked instance now so the gate count stays faithful.
            map[g] = instantiate(instantiate, g, demands[g][0]);
            continue;
        }
        switch (c.kind(g)) {
            case GateKind::Literal:
                map[g] = out.add_literal(c.literal(g));
                emit_tracking(map[g], rho[g], span[g]);
                break;
            case GateKind::And:
            case GateKind::Or: {
                kids.clear();
                auto ch = c.children(g);
                for (std::size_t i = 0; i < ch.size(); ++i) {
                    GateId k = ch[i];
                    if (!floating[k]) { kids.push_back(map[k]); continue; }
                    VtreeNodeId u;
                    if (c.kind(g) == GateKind::And) {
                        const auto& nd = v.node(rho[g]);
                        u = (i == 0) ? nd.left : nd.right;
                    } else {
                        u = rho[g];
                    }
                    kids.push_back(instantiate(instantiate, k, u));
                }
                map[g] = out.add_gate(c.kind(g), kids);
                emit_tracking(map[g], rho[g], span[g]);
                break;
            }
            default: break;
        }
    }
    if (map[c.root()] != out.root()) {
        // same trick as the transforms: duplicate the mapped root at the end
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
        out_rho.push_back(out_rho[src]);
        out_span.push_back(out_span[src]);
    }

    res.ok = true;
    res.circuit = std::move(out);
    res.map.rho = std::move(out_rho);
    res.map.var_span = std::move(out_span);
    res.duplicated_constants = true;
    return res;
}

}  // namespace csmooth

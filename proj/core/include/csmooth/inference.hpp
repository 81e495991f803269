#ifndef CSMOOTH_INFERENCE_HPP
#define CSMOOTH_INFERENCE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "csmooth/circuit.hpp"
#include "csmooth/semiring.hpp"
#include "csmooth/smoothing.hpp"
#include "csmooth/vtree.hpp"

namespace csmooth {

template <class S>
struct AmcResult {
    typename S::Value value;
    std::size_t op_count = 0;
};

// One bottom-up pass over a smooth, deterministic, decomposable circuit:
// literals read their weight, True/False map to one/zero, AND gates fold
// with times, OR gates with plus. Property violations are the caller's
// responsibility and are not detected here.
template <class S>
AmcResult<S> amc_eval(const Circuit& c, const LiteralWeights<S>& w) {
    using V = typename S::Value;
    std::vector<V> val(c.num_gates(), S::zero());
    std::size_t ops = 0;
    for (GateId g = 0; g < c.num_gates(); ++g) {
        switch (c.kind(g)) {
            case GateKind::Literal: val[g] = w(c.literal(g)); break;
            case GateKind::True: val[g] = S::one(); break;
            case GateKind::False: val[g] = S::zero(); break;
            case GateKind::And: {
                auto kids = c.children(g);
                V acc = S::one();
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    if (i == 0) acc = val[kids[0]];
                    else { acc = S::times(acc, val[kids[i]]); ++ops; }
                }
                val[g] = acc;
                break;
            }
            case GateKind::Or: {
                auto kids = c.children(g);
                V acc = S::zero();
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    if (i == 0) acc = val[kids[0]];
                    else { acc = S::plus(acc, val[kids[i]]); ++ops; }
                }
                val[g] = acc;
                break;
            }
        }
    }
    return {val[c.root()], ops};
}

template <class S>
struct MarginalResult {
    typename S::Value s;                         // full-universe AMC value
    std::vector<typename S::Value> d_pos, d_neg; // 1-based by variable
    std::size_t op_count = 0;
};

// Prefix products of per-position fill factors over the in-order variable
// sequence: F[0] = one, F[j] = F[j-1] * (w(x_pi(j)) + w(-x_pi(j))). The fill
// of [l,r] is then F[r] / F[l-1]. Requires division and positive weights.
template <class S>
std::vector<typename S::Value> fill_prefix(const LiteralWeights<S>& w, const Vtree& v,
                                           std::size_t* op_count = nullptr) {
    static_assert(S::has_division);
    const std::uint32_t n = v.num_vars();
    std::vector<typename S::Value> f(n + 1);
    f[0] = S::one();
    std::size_t ops = 0;
    for (std::uint32_t j = 1; j <= n; ++j) {
        VarId x = v.var_at(j);
        if (!S::is_positive(w.pos[x]) || !S::is_positive(w.neg[x]))
            throw std::domain_error("fill_prefix: weights must be positive");
        f[j] = S::times(f[j - 1], S::plus(w.pos[x], w.neg[x]));
        ops += 2;
    }
    if (op_count) *op_count += ops;
    return f;
}

// Prefix-plus scan realizing a batch of range increments: deltas has length
// n+1 (position n+1 holds the closing subtractions); the result is the
// accumulated value at positions 1..n.
template <class S>
std::vector<typename S::Value> range_increment_resolve(
    std::span<const typename S::Value> deltas, std::size_t* op_count = nullptr) {
    if (deltas.empty()) return {};
    const std::size_t n = deltas.size() - 1;
    std::vector<typename S::Value> out(n);
    std::size_t ops = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == 0) out[0] = deltas[0];
        else { out[j] = S::plus(out[j - 1], deltas[j]); ++ops; }
    }
    if (op_count) *op_count += ops;
    return out;
}

namespace detail {

// Variables with a reachable literal gate under the root.
std::vector<bool> mentioned_vars(const Circuit& c);

template <class S>
typename S::Value fill_of(const std::vector<typename S::Value>& f, const PosInterval& iv,
                          std::size_t& ops) {
    if (iv.empty()) return S::one();
    ++ops;
    return S::divide(f[iv.hi], f[iv.lo - 1]);
}

}  // namespace detail

// Smooths the circuit, converts it into an arithmetic circuit, and runs
// standard two-pass backpropagation. Works over any semiring (sibling
// products at AND gates avoid division). Variables absent from the circuit
// are accounted for with explicit fill-factor products so the result is the
// derivative of the full-universe AMC value.
template <class S>
MarginalResult<S> all_marginals_via_smoothing(const Circuit& c, const Vtree& v,
                                              const LiteralWeights<S>& w,
                                              SmoothMethod smoother = SmoothMethod::RangeSum) {
    using V = typename S::Value;
    const std::uint32_t n = v.num_vars();
    SmoothResult sr = smooth(c, v, smoother);
    const Circuit& sc = sr.circuit;
    std::size_t ops = 0;

    std::vector<V> val(sc.num_gates(), S::zero());
    for (GateId g = 0; g < sc.num_gates(); ++g) {
        switch (sc.kind(g)) {
            case GateKind::Literal: val[g] = w(sc.literal(g)); break;
            case GateKind::True: val[g] = S::one(); break;
            case GateKind::False: val[g] = S::zero(); break;
            case GateKind::And: {
                V acc = S::one();
                auto kids = sc.children(g);
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    if (i == 0) acc = val[kids[0]];
                    else { acc = S::times(acc, val[kids[i]]); ++ops; }
                }
                val[g] = acc;
                break;
            }
            case GateKind::Or: {
                V acc = S::zero();
                auto kids = sc.children(g);
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    if (i == 0) acc = val[kids[0]];
                    else { acc = S::plus(acc, val[kids[i]]); ++ops; }
                }
                val[g] = acc;
                break;
            }
        }
    }

    std::vector<V> dval(sc.num_gates(), S::zero());
    dval[sc.root()] = S::one();
    MarginalResult<S> res{S::zero(), std::vector<V>(n + 1, S::zero()),
                          std::vector<V>(n + 1, S::zero()), 0};
    std::vector<V> pre, suf;
    for (GateId g = sc.root() + 1; g-- > 0;) {
        if (S::is_zero(dval[g]) && g != sc.root()) continue;
        switch (sc.kind(g)) {
            case GateKind::Literal: {
                Literal lit = sc.literal(g);
                auto& slot = lit.positive() ? res.d_pos[lit.var()] : res.d_neg[lit.var()];
                slot = S::plus(slot, dval[g]);
                ++ops;
                break;
            }
            case GateKind::Or: {
                for (GateId k : sc.children(g)) {
                    dval[k] = S::plus(dval[k], dval[g]);
                    ++ops;
                }
                break;
            }
            case GateKind::And: {
                auto kids = sc.children(g);
                if (kids.empty()) break;
                if (kids.size() == 2) {
                    dval[kids[0]] = S::plus(dval[kids[0]], S::times(dval[g], val[kids[1]]));
                    dval[kids[1]] = S::plus(dval[kids[1]], S::times(dval[g], val[kids[0]]));
                    ops += 4;
                    break;
                }
                // forward/backward partial products: no division needed
                pre.assign(kids.size(), S::one());
                suf.assign(kids.size(), S::one());
                for (std::size_t i = 1; i < kids.size(); ++i) {
                    pre[i] = S::times(pre[i - 1], val[kids[i - 1]]);
                    ++ops;
                }
                for (std::size_t i = kids.size() - 1; i-- > 0;) {
                    suf[i] = S::times(suf[i + 1], val[kids[i + 1]]);
                    ++ops;
                }
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    V sib = S::times(pre[i], suf[i]);
                    dval[kids[i]] = S::plus(dval[kids[i]], S::times(dval[g], sib));
                    ops += 3;
                }
                break;
            }
            default: break;
        }
    }

    // Account for variables the circuit never mentions: the full-universe
    // value gains one fill factor per absent variable.
    std::vector<bool> mentioned = detail::mentioned_vars(sc);
    std::vector<std::uint32_t> absent;
    for (VarId x = 1; x <= n; ++x)
        if (!mentioned[x]) absent.push_back(x);
    std::vector<V> fv(absent.size());
    for (std::size_t i = 0; i < absent.size(); ++i) {
        fv[i] = S::plus(w.pos[absent[i]], w.neg[absent[i]]);
        ++ops;
    }
    pre.assign(absent.size() + 1, S::one());
    suf.assign(absent.size() + 1, S::one());
    for (std::size_t i = 0; i < absent.size(); ++i) { pre[i + 1] = S::times(pre[i], fv[i]); ++ops; }
    for (std::size_t i = absent.size(); i-- > 0;) { suf[i] = S::times(suf[i + 1], fv[i]); ++ops; }
    const V f_all = pre[absent.size()];

    res.s = S::times(val[sc.root()], f_all);
    ++ops;
    for (VarId x = 1; x <= n; ++x) {
        if (mentioned[x]) {
            res.d_pos[x] = S::times(res.d_pos[x], f_all);
            res.d_neg[x] = S::times(res.d_neg[x], f_all);
            ops += 2;
        }
    }
    for (std::size_t i = 0; i < absent.size(); ++i) {
        V others = S::times(pre[i], suf[i + 1]);
        V d = S::times(val[sc.root()], others);
        res.d_pos[absent[i]] = d;
        res.d_neg[absent[i]] = d;
        ops += 2;
    }
    res.op_count = ops;
    return res;
}

// Linear-time All-Marginals that bypasses smoothing. Needs all four
// operations and strictly positive weights. The bottom-up pass completes
// each gate with fill factors for its gap intervals (O(1) per gap via the
// fill prefix table); the top-down pass pushes derivatives through AND
// gates by dividing out the child and turns OR-gap propagation into range
// increments resolved by a single prefix scan. Matches
// all_marginals_via_smoothing exactly on its shared domain.
template <class S>
MarginalResult<S> all_marginals_direct(const Circuit& c0, const Vtree& v,
                                       const LiteralWeights<S>& w) {
    static_assert(S::has_division, "all_marginals_direct needs division");
    using V = typename S::Value;
    const std::uint32_t n = v.num_vars();
    for (VarId x = 1; x <= n; ++x) {
        if (!S::is_positive(w.pos[x]) || !S::is_positive(w.neg[x]))
            throw std::domain_error("all_marginals_direct: weights must be positive");
    }

    GapAnalysis ga = analyze_gaps(c0, v, GapTargets::Span);
    const Circuit& c = ga.structure.circuit;
    std::size_t ops = 0;
    std::vector<V> fprefix = fill_prefix<S>(w, v, &ops);
    auto fill = [&](const PosInterval& iv) { return detail::fill_of<S>(fprefix, iv, ops); };

    // Per-gate contiguous range of sites (sites are emitted in parent order).
    std::vector<std::uint32_t> site_begin(c.num_gates() + 1, 0);
    for (const GapSite& s : ga.sites) site_begin[s.parent + 1]++;
    for (std::size_t g = 1; g <= c.num_gates(); ++g) site_begin[g] += site_begin[g - 1];

    // Bottom-up: edge term = child value times the fills of the edge's gaps.
    auto edge_term = [&](GateId parent, std::uint32_t child_index, V child_val) {
        for (std::uint32_t si = site_begin[parent]; si < site_begin[parent + 1]; ++si) {
            const GapSite& s = ga.sites[si];
            if (s.child_index != child_index) continue;
            if (s.kind == GapSite::Kind::Replace) return fill(s.target);
            V t = child_val;
            for (const auto& giv : s.gaps) {
                if (giv.empty()) continue;
                t = S::times(t, fill(giv));
                ++ops;
            }
            return t;
        }
        return child_val;
    };

    std::vector<V> val(c.num_gates(), S::zero());
    for (GateId g = 0; g < c.num_gates(); ++g) {
        switch (c.kind(g)) {
            case GateKind::Literal: val[g] = w(c.literal(g)); break;
            case GateKind::True: val[g] = S::one(); break;
            case GateKind::False: val[g] = S::zero(); break;
            case GateKind::And: {
                auto kids = c.children(g);
                V acc = S::one();
                for (std::uint32_t i = 0; i < kids.size(); ++i) {
                    V t = edge_term(g, i, val[kids[i]]);
                    if (i == 0) acc = t;
                    else { acc = S::times(acc, t); ++ops; }
                }
                val[g] = acc;
                break;
            }
            case GateKind::Or: {
                auto kids = c.children(g);
                V acc = S::zero();
                for (std::uint32_t i = 0; i < kids.size(); ++i) {
                    V t = edge_term(g, i, val[kids[i]]);
                    if (i == 0) acc = t;
                    else { acc = S::plus(acc, t); ++ops; }
                }
                val[g] = acc;
                break;
            }
        }
    }

    // Positions the (padded) circuit covers; everything else is handled by
    // the global fill product.
    std::vector<bool> covered(n + 2, false);
    if (ga.already_smooth) {
        std::vector<bool> mentioned = detail::mentioned_vars(c);
        for (VarId x = 1; x <= n; ++x)
            if (mentioned[x]) covered[v.position_of(x)] = true;
    } else {
        const PosInterval& span = ga.padded_span[c.root()];
        for (std::uint32_t p = span.lo; p <= span.hi && !span.empty(); ++p) covered[p] = true;
    }
    V f_glob = S::one();
    for (std::uint32_t p = 1; p <= n; ++p) {
        if (covered[p]) continue;
        VarId x = v.var_at(p);
        f_glob = S::times(f_glob, S::plus(w.pos[x], w.neg[x]));
        ops += 2;
    }
    V s_full = S::times(val[c.root()], f_glob);
    ++ops;

    // Top-down with range increments (open/close ledgers so log-domain
    // semirings never see a negative intermediate). Seeding the root with
    // the global fill product makes every propagated derivative a
    // derivative of the full-universe value.
    std::vector<V> dval(c.num_gates(), S::zero());
    dval[c.root()] = f_glob;
    std::vector<V> d_open(n + 2, S::zero()), d_close(n + 2, S::zero());
    auto range_add = [&](const PosInterval& iv, const V& amount) {
        if (iv.empty()) return;
        d_open[iv.lo] = S::plus(d_open[iv.lo], amount);
        d_close[iv.hi + 1] = S::plus(d_close[iv.hi + 1], amount);
        ops += 2;
    };
    MarginalResult<S> res{s_full, std::vector<V>(n + 1, S::zero()),
                          std::vector<V>(n + 1, S::zero()), 0};

    for (GateId g = c.root() + 1; g-- > 0;) {
        if (S::is_zero(dval[g]) && g != c.root()) continue;
        switch (c.kind(g)) {
            case GateKind::Literal: {
                Literal lit = c.literal(g);
                auto& slot = lit.positive() ? res.d_pos[lit.var()] : res.d_neg[lit.var()];
                slot = S::plus(slot, dval[g]);
                ++ops;
                break;
            }
            case GateKind::And: {
                V m = S::times(dval[g], val[g]);
                ++ops;
                auto kids = c.children(g);
                for (std::uint32_t i = 0; i < kids.size(); ++i) {
                    if (S::is_zero(val[kids[i]]))
                        throw std::domain_error("all_marginals_direct: zero gate value under AND");
                    dval[kids[i]] = S::plus(dval[kids[i]], S::divide(m, val[kids[i]]));
                    ops += 2;
                }
                for (std::uint32_t si = site_begin[g]; si < site_begin[g + 1]; ++si) {
                    for (const auto& giv : ga.sites[si].gaps) range_add(giv, m);
                }
                break;
            }
            case GateKind::Or: {
                auto kids = c.children(g);
                for (std::uint32_t i = 0; i < kids.size(); ++i) {
                    const GapSite* site = nullptr;
                    for (std::uint32_t si = site_begin[g]; si < site_begin[g + 1]; ++si) {
                        if (ga.sites[si].child_index == i) { site = &ga.sites[si]; break; }
                    }
                    if (site == nullptr) {
                        dval[kids[i]] = S::plus(dval[kids[i]], dval[g]);
                        ++ops;
                        continue;
                    }
                    if (site->kind == GapSite::Kind::Replace) {
                        range_add(site->target, S::times(dval[g], fill(site->target)));
                        ++ops;
                        continue;
                    }
                    if (site->kind == GapSite::Kind::FalsePad) continue;  // term is zero
                    V fk = S::one();
                    for (const auto& giv : site->gaps) {
                        if (giv.empty()) continue;
                        fk = S::times(fk, fill(giv));
                        ++ops;
                    }
                    dval[kids[i]] = S::plus(dval[kids[i]], S::times(dval[g], fk));
                    ops += 2;
                    V inc = S::times(S::times(dval[g], val[kids[i]]), fk);
                    ops += 2;
                    for (const auto& giv : site->gaps) range_add(giv, inc);
                }
                break;
            }
            default: break;
        }
    }

    // Resolve range increments and fold in the per-position fill divisor.
    V open_acc = S::zero(), close_acc = S::zero();
    for (std::uint32_t p = 1; p <= n; ++p) {
        open_acc = S::plus(open_acc, d_open[p]);
        close_acc = S::plus(close_acc, d_close[p]);
        ops += 2;
        VarId x = v.var_at(p);
        if (!covered[p]) {
            V fv = S::plus(w.pos[x], w.neg[x]);
            V d = S::divide(s_full, fv);
            res.d_pos[x] = d;
            res.d_neg[x] = d;
            ops += 2;
            continue;
        }
        V scan = S::minus(open_acc, close_acc);
        ++ops;
        if (!S::is_zero(scan)) {
            V fv = S::plus(w.pos[x], w.neg[x]);
            V d = S::divide(scan, fv);
            res.d_pos[x] = S::plus(res.d_pos[x], d);
            res.d_neg[x] = S::plus(res.d_neg[x], d);
            ops += 4;
        }
    }
    res.op_count = ops;
    return res;
}

}  // namespace csmooth

#endif

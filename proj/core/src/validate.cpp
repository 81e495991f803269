#include "csmooth/validate.hpp"

#include <algorithm>
#include <stdexcept>

namespace csmooth {

namespace {

// Sorted-set union of children vars with an optional running budget.
// Returns false when the budget is exhausted.
bool vars_union(const Circuit& c, std::vector<std::vector<VarId>>& vars, std::size_t* budget) {
    std::vector<VarId> merged;
    for (GateId g = 0; g < c.num_gates(); ++g) {
        switch (c.kind(g)) {
            case GateKind::Literal: vars[g] = {c.literal(g).var()}; break;
            case GateKind::True:
            case GateKind::False: break;
            case GateKind::And:
            case GateKind::Or: {
                auto kids = c.children(g);
                if (kids.size() == 1) {
                    vars[g] = vars[kids[0]];
                    break;
                }
                merged.clear();
                for (GateId k : kids) {
                    if (vars[k].empty()) continue;
                    if (merged.empty()) {
                        merged = vars[k];
                        continue;
                    }
                    std::vector<VarId> next;
                    next.reserve(merged.size() + vars[k].size());
                    std::set_union(merged.begin(), merged.end(), vars[k].begin(), vars[k].end(),
                                   std::back_inserter(next));
                    merged.swap(next);
                }
                vars[g] = merged;
                break;
            }
        }
        if (budget != nullptr) {
            if (vars[g].size() > *budget) return false;
            *budget -= vars[g].size();
        }
    }
    return true;
}

}  // namespace

std::vector<std::vector<VarId>> compute_vars(const Circuit& c) {
    std::vector<std::vector<VarId>> vars(c.num_gates());
    vars_union(c, vars, nullptr);
    return vars;
}

std::optional<std::vector<std::vector<VarId>>> compute_vars_budgeted(const Circuit& c,
                                                                     std::size_t max_entries) {
    std::vector<std::vector<VarId>> vars(c.num_gates());
    std::size_t budget = max_entries;
    if (!vars_union(c, vars, &budget)) return std::nullopt;
    return vars;
}

DecomposabilityCheck check_decomposable(const Circuit& c) {
    auto vars = compute_vars(c);
    std::vector<VarId> seen;
    for (GateId g = 0; g < c.num_gates(); ++g) {
        if (c.kind(g) != GateKind::And || c.fanin(g) < 2) continue;
        seen.clear();
        for (GateId k : c.children(g)) {
            for (VarId v : vars[k]) {
                auto it = std::lower_bound(seen.begin(), seen.end(), v);
                if (it != seen.end() && *it == v) return {false, g, v};
                seen.insert(it, v);
            }
        }
    }
    return {};
}

namespace {

SmoothnessCheck smooth_from_vars(const Circuit& c, const std::vector<std::vector<VarId>>& vars) {
    for (GateId g = 0; g < c.num_gates(); ++g) {
        if (c.kind(g) != GateKind::Or || c.fanin(g) < 2) continue;
        auto kids = c.children(g);
        for (std::size_t i = 1; i < kids.size(); ++i) {
            if (vars[kids[i]] != vars[kids[0]]) return {false, g, kids[0], kids[i]};
        }
    }
    return {};
}

}  // namespace

SmoothnessCheck check_smooth(const Circuit& c) {
    auto vars = compute_vars(c);
    return smooth_from_vars(c, vars);
}

std::optional<SmoothnessCheck> check_smooth_budgeted(const Circuit& c, std::size_t max_entries) {
    auto vars = compute_vars_budgeted(c, max_entries);
    if (!vars) return std::nullopt;
    return smooth_from_vars(c, *vars);
}

namespace {

std::vector<bool> assignment_from_index(std::uint64_t index, std::uint32_t n) {
    std::vector<bool> a(n);
    for (std::uint32_t v = 0; v < n; ++v) a[v] = (index >> v) & 1;
    return a;
}

}  // namespace

DeterminismCheck check_deterministic(const Circuit& c) {
    const std::uint32_t n = c.num_vars();
    if (n > kMaxBruteForceVars)
        throw std::invalid_argument("check_deterministic: more than " +
                                    std::to_string(kMaxBruteForceVars) + " variables");
    const std::uint64_t blocks = n >= 6 ? (1ull << (n - 6)) : 1;
    const std::uint64_t live = n >= 6 ? ~0ull : (1ull << (1u << n)) - 1;

    std::vector<std::uint64_t> scratch(c.num_gates());
    for (std::uint64_t b = 0; b < blocks; ++b) {
        for (GateId g = 0; g < c.num_gates(); ++g) {
            // Same word-parallel walk as evaluate_block, but watching OR
            // gates for a second true child.
            switch (c.kind(g)) {
                case GateKind::Literal: {
                    Literal lit = c.literal(g);
                    VarId v = lit.var();
                    static constexpr std::uint64_t pat[6] = {
                        0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
                        0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull};
                    std::uint64_t m = v <= 6 ? pat[v - 1] : ((b >> (v - 7)) & 1 ? ~0ull : 0ull);
                    scratch[g] = lit.positive() ? m : ~m;
                    break;
                }
                case GateKind::True: scratch[g] = ~0ull; break;
                case GateKind::False: scratch[g] = 0ull; break;
                case GateKind::And: {
                    std::uint64_t m = ~0ull;
                    for (GateId k : c.children(g)) m &= scratch[k];
                    scratch[g] = m;
                    break;
                }
                case GateKind::Or: {
                    std::uint64_t any = 0ull, twice = 0ull;
                    for (GateId k : c.children(g)) {
                        twice |= any & scratch[k];
                        any |= scratch[k];
                    }
                    if (twice & live) {
                        std::uint64_t bit = static_cast<std::uint64_t>(
                            __builtin_ctzll(twice & live));
                        return {false, g, assignment_from_index(b * 64 + bit, n)};
                    }
                    scratch[g] = any;
                    break;
                }
            }
        }
    }
    return {};
}

EquivalenceCheck check_equivalent(const Circuit& a, const Circuit& b) {
    if (a.num_vars() != b.num_vars())
        throw std::invalid_argument("check_equivalent: variable counts differ");
    const std::uint32_t n = a.num_vars();
    if (n > kMaxBruteForceVars)
        throw std::invalid_argument("check_equivalent: more than " +
                                    std::to_string(kMaxBruteForceVars) + " variables");
    const std::uint64_t blocks = n >= 6 ? (1ull << (n - 6)) : 1;
    const std::uint64_t live = n >= 6 ? ~0ull : (1ull << (1u << n)) - 1;

    std::vector<std::uint64_t> sa, sb;
    for (std::uint64_t blk = 0; blk < blocks; ++blk) {
        std::uint64_t diff = (evaluate_block(a, blk, sa) ^ evaluate_block(b, blk, sb)) & live;
        if (diff) {
            std::uint64_t bit = static_cast<std::uint64_t>(__builtin_ctzll(diff));
            return {false, assignment_from_index(blk * 64 + bit, n)};
        }
    }
    return {};
}

}  // namespace csmooth

#include "csmooth/transform.hpp"

#include <vector>

namespace csmooth {

namespace {

void copy_gate(Circuit& out, GateId src) {
    switch (out.kind(src)) {
        case GateKind::Literal: out.add_literal(out.literal(src)); break;
        case GateKind::True: out.add_constant(true); break;
        case GateKind::False: out.add_constant(false); break;
        case GateKind::And:
        case GateKind::Or: {
            std::vector<GateId> kids(out.children(src).begin(), out.children(src).end());
            out.add_gate(out.kind(src), kids);
            break;
        }
    }
}

// The root must stay the last gate; when the original root collapsed into
// an earlier gate, append a copy of that gate.
void fix_root(Circuit& out, GateId mapped_root) {
    if (mapped_root != out.root()) copy_gate(out, mapped_root);
}

}  // namespace

Circuit normalize(const Circuit& c) {
    Circuit out;
    out.set_num_vars(c.num_vars());
    out.reserve(c.num_gates(), c.num_edges());
    std::vector<GateId> map(c.num_gates());
    std::vector<GateId> kids;
    for (GateId g = 0; g < c.num_gates(); ++g) {
        switch (c.kind(g)) {
            case GateKind::Literal: map[g] = out.add_literal(c.literal(g)); break;
            case GateKind::True: map[g] = out.add_constant(true); break;
            case GateKind::False: map[g] = out.add_constant(false); break;
            case GateKind::And: {
                auto ch = c.children(g);
                if (ch.empty()) {
                    map[g] = out.add_and({});
                } else if (ch.size() == 1) {
                    map[g] = map[ch[0]];
                } else {
                    // left-deep binarization
                    GateId acc = map[ch[0]];
                    for (std::size_t i = 1; i < ch.size(); ++i)
                        acc = out.add_and({acc, map[ch[i]]});
                    map[g] = acc;
                }
                break;
            }
            case GateKind::Or: {
                kids.clear();
                for (GateId k : c.children(g)) {
                    if (out.kind(map[k]) == GateKind::False) continue;
                    kids.push_back(map[k]);
                }
                map[g] = kids.empty() ? out.add_constant(false) : out.add_or(kids);
                break;
            }
        }
    }
    fix_root(out, map[c.root()]);
    return out;
}

Circuit edge_contract(const Circuit& c) {
    Circuit out;
    out.set_num_vars(c.num_vars());
    out.reserve(c.num_gates(), c.num_edges());
    std::vector<GateId> map(c.num_gates());
    std::vector<GateId> kids;
    for (GateId g = 0; g < c.num_gates(); ++g) {
        switch (c.kind(g)) {
            case GateKind::Literal: map[g] = out.add_literal(c.literal(g)); break;
            case GateKind::True: map[g] = out.add_constant(true); break;
            case GateKind::False: map[g] = out.add_constant(false); break;
            case GateKind::And:
            case GateKind::Or: {
                auto ch = c.children(g);
                if (ch.size() == 1) {
                    map[g] = map[ch[0]];
                    break;
                }
                kids.clear();
                for (GateId k : ch) kids.push_back(map[k]);
                map[g] = out.add_gate(c.kind(g), kids);
                break;
            }
        }
    }
    fix_root(out, map[c.root()]);
    return out;
}

}  // namespace csmooth

#include "csmooth/circuit_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace csmooth {

namespace {

bool is_comment_or_blank(const std::string& line) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) return true;
    if (line[i] == '#') return true;
    if (line[i] == 'c' && (i + 1 == line.size() || line[i + 1] == ' ' || line[i + 1] == '\t' ||
                           line[i + 1] == '\r'))
        return true;
    return false;
}

// Pulls the next payload line, tracking the 1-based physical line number.
bool next_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!is_comment_or_blank(line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return true;
        }
    }
    return false;
}

class TokenLine {
public:
    TokenLine(const std::string& line, std::size_t lineno) : stream_(line), lineno_(lineno) {}

    std::string word() {
        std::string w;
        if (!(stream_ >> w)) throw ParseError(lineno_, "unexpected end of line");
        return w;
    }
    long long integer() {
        const std::string w = word();
        long long value = 0;
        auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
        if (ec != std::errc() || p != w.data() + w.size())
            throw ParseError(lineno_, "expected integer, got '" + w + "'");
        return value;
    }
    void expect_end() {
        std::string w;
        if (stream_ >> w) throw ParseError(lineno_, "trailing token '" + w + "'");
    }

private:
    std::istringstream stream_;
    std::size_t lineno_;
};

}  // namespace

Circuit parse_circuit(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(in, line, lineno)) throw ParseError(lineno, "missing 'lc' header");
    TokenLine header(line, lineno);
    if (header.word() != "lc") throw ParseError(lineno, "expected 'lc' header");
    long long num_gates = header.integer();
    long long num_vars = header.integer();
    header.expect_end();
    if (num_gates < 1) throw ParseError(lineno, "circuit needs at least one gate");
    if (num_vars < 0) throw ParseError(lineno, "negative variable count");

    Circuit c;
    c.set_num_vars(static_cast<std::uint32_t>(num_vars));
    c.reserve(static_cast<std::size_t>(num_gates), 0);
    std::vector<GateId> kids;
    for (long long g = 0; g < num_gates; ++g) {
        if (!next_line(in, line, lineno))
            throw ParseError(lineno, "expected " + std::to_string(num_gates) + " gates, got " +
                                         std::to_string(g));
        TokenLine tok(line, lineno);
        const std::string kind = tok.word();
        if (kind == "L") {
            long long lit = tok.integer();
            long long var = lit < 0 ? -lit : lit;
            if (var < 1 || var > num_vars)
                throw ParseError(lineno, "variable " + std::to_string(var) + " out of [1, " +
                                             std::to_string(num_vars) + "]");
            c.add_literal(Literal{static_cast<std::int32_t>(lit)});
        } else if (kind == "T") {
            c.add_constant(true);
        } else if (kind == "F") {
            c.add_constant(false);
        } else if (kind == "A" || kind == "O") {
            long long k = tok.integer();
            if (k < 0) throw ParseError(lineno, "negative child count");
            kids.clear();
            for (long long i = 0; i < k; ++i) {
                long long id = tok.integer();
                if (id < 0 || id >= g)
                    throw ParseError(lineno, "child " + std::to_string(id) +
                                                 " must be a previously declared gate");
                kids.push_back(static_cast<GateId>(id));
            }
            c.add_gate(kind == "A" ? GateKind::And : GateKind::Or, kids);
        } else {
            throw ParseError(lineno, "unknown gate type '" + kind + "'");
        }
        tok.expect_end();
    }
    if (next_line(in, line, lineno)) throw ParseError(lineno, "trailing gate line");
    return c;
}

Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    return parse_circuit(in);
}

void serialize_circuit(const Circuit& c, std::ostream& out) {
    out << "lc " << c.num_gates() << ' ' << c.num_vars() << '\n';
    for (GateId g = 0; g < c.num_gates(); ++g) {
        switch (c.kind(g)) {
            case GateKind::Literal: out << "L " << c.literal(g).value << '\n'; break;
            case GateKind::True: out << "T\n"; break;
            case GateKind::False: out << "F\n"; break;
            case GateKind::And:
            case GateKind::Or: {
                out << (c.kind(g) == GateKind::And ? 'A' : 'O') << ' ' << c.fanin(g);
                for (GateId k : c.children(g)) out << ' ' << k;
                out << '\n';
                break;
            }
        }
    }
}

std::string serialize_circuit(const Circuit& c) {
    std::ostringstream out;
    serialize_circuit(c, out);
    return out.str();
}

Vtree parse_vtree(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!next_line(in, line, lineno)) throw ParseError(lineno, "missing 'vtree' header");
    TokenLine header(line, lineno);
    if (header.word() != "vtree") throw ParseError(lineno, "expected 'vtree' header");
    long long num_nodes = header.integer();
    header.expect_end();
    if (num_nodes < 1) throw ParseError(lineno, "vtree needs at least one node");

    // Nodes may be declared in any order; ids must form [0, num_nodes).
    struct Decl {
        bool seen = false;
        bool leaf = false;
        long long a = 0, b = 0;
        std::size_t lineno = 0;
    };
    std::vector<Decl> decls(static_cast<std::size_t>(num_nodes));
    long long last_id = -1;
    for (long long i = 0; i < num_nodes; ++i) {
        if (!next_line(in, line, lineno))
            throw ParseError(lineno, "expected " + std::to_string(num_nodes) + " nodes, got " +
                                         std::to_string(i));
        TokenLine tok(line, lineno);
        const std::string kind = tok.word();
        long long id = tok.integer();
        if (id < 0 || id >= num_nodes)
            throw ParseError(lineno, "node id " + std::to_string(id) + " out of range");
        if (decls[id].seen) throw ParseError(lineno, "duplicate node id " + std::to_string(id));
        decls[id].seen = true;
        decls[id].lineno = lineno;
        if (kind == "L") {
            decls[id].leaf = true;
            decls[id].a = tok.integer();
        } else if (kind == "I") {
            decls[id].leaf = false;
            decls[id].a = tok.integer();
            decls[id].b = tok.integer();
        } else {
            throw ParseError(lineno, "unknown vtree node type '" + kind + "'");
        }
        tok.expect_end();
        last_id = id;
    }
    if (next_line(in, line, lineno)) throw ParseError(lineno, "trailing vtree line");

    Vtree v;
    for (const Decl& d : decls) {
        if (d.leaf) {
            if (d.a < 1) throw ParseError(d.lineno, "variable must be >= 1");
            v.add_leaf(static_cast<VarId>(d.a));
        } else {
            if (d.a < 0 || d.a >= num_nodes || d.b < 0 || d.b >= num_nodes)
                throw ParseError(d.lineno, "dangling child node id");
            v.add_internal(static_cast<VtreeNodeId>(d.a), static_cast<VtreeNodeId>(d.b));
        }
    }
    v.set_root(static_cast<VtreeNodeId>(last_id));
    try {
        v.finalize();
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
    }
    return v;
}

Vtree parse_vtree(const std::string& text) {
    std::istringstream in(text);
    return parse_vtree(in);
}

void serialize_vtree(const Vtree& v, std::ostream& out) {
    out << "vtree " << v.num_nodes() << '\n';
    // Children before parents; the root comes out last as required.
    std::vector<char> done(v.num_nodes(), 0);
    std::vector<VtreeNodeId> stack{v.root()};
    while (!stack.empty()) {
        VtreeNodeId id = stack.back();
        const auto& nd = v.node(id);
        if (nd.leaf) {
            out << "L " << id << ' ' << nd.var << '\n';
            done[id] = 1;
            stack.pop_back();
            continue;
        }
        if (!done[nd.left]) { stack.push_back(nd.left); continue; }
        if (!done[nd.right]) { stack.push_back(nd.right); continue; }
        out << "I " << id << ' ' << nd.left << ' ' << nd.right << '\n';
        done[id] = 1;
        stack.pop_back();
    }
}

std::string serialize_vtree(const Vtree& v) {
    std::ostringstream out;
    serialize_vtree(v, out);
    return out.str();
}

Circuit load_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open circuit file: " + path);
    return parse_circuit(in);
}

Vtree load_vtree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vtree file: " + path);
    return parse_vtree(in);
}

void save_circuit_file(const Circuit& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write circuit file: " + path);
    serialize_circuit(c, out);
}

void save_vtree_file(const Vtree& v, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write vtree file: " + path);
    serialize_vtree(v, out);
}

}  // namespace csmooth

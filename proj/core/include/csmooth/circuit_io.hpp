#ifndef CSMOOTH_CIRCUIT_IO_HPP
#define CSMOOTH_CIRCUIT_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "csmooth/circuit.hpp"
#include "csmooth/vtree.hpp"

namespace csmooth {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// LC circuit format. Lines starting with '#' or 'c ' are comments.
//   lc <num_gates> <num_vars>
//   L <signed-int> | T | F | A <k> <id...> | O <k> <id...>
// Gate ids are implicit 0..num_gates-1 in declaration order; root is the
// last gate.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit(const std::string& text);
void serialize_circuit(const Circuit& c, std::ostream& out);
std::string serialize_circuit(const Circuit& c);

// VT vtree format.
//   vtree <num_nodes>
//   L <id> <var> | I <id> <left> <right>
// Root is the last declared node; ids must be a permutation of [0,num_nodes).
Vtree parse_vtree(std::istream& in);
Vtree parse_vtree(const std::string& text);
void serialize_vtree(const Vtree& v, std::ostream& out);
std::string serialize_vtree(const Vtree& v);

Circuit load_circuit_file(const std::string& path);
Vtree load_vtree_file(const std::string& path);
void save_circuit_file(const Circuit& c, const std::string& path);
void save_vtree_file(const Vtree& v, const std::string& path);

}  // namespace csmooth

#endif

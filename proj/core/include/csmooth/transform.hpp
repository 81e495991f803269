#ifndef CSMOOTH_TRANSFORM_HPP
#define CSMOOTH_TRANSFORM_HPP

#include "csmooth/circuit.hpp"

namespace csmooth {

// Makes every AND gate 0- or 2-ary (k-ary ANDs become left-deep binary
// chains, 1-ary ANDs collapse into their child), prunes False children of
// OR gates, and turns empty OR gates into False. Equivalence preserving;
// binary false-pruned circuits come back unchanged.
Circuit normalize(const Circuit& c);

// Removes every AND/OR gate with exactly one child, splicing the child into
// each parent. DAG sharing and equivalence are preserved.
Circuit edge_contract(const Circuit& c);

}  // namespace csmooth

#endif

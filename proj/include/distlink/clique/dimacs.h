#ifndef DISTLINK_CLIQUE_DIMACS_H_
#define DISTLINK_CLIQUE_DIMACS_H_

#include <iosfwd>

#include "distlink/clique/simple_graph.h"

namespace distlink::clique {

// DIMACS ascii graphs: `c` comment lines, one `p edge <n> <m>` line, then
// `e <u> <v>` lines with 1-based vertices. Duplicate edges are tolerated on
// input; self-loops and out-of-range vertices are rejected with InputError.
SimpleGraph read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const SimpleGraph& g);

}  // namespace distlink::clique

#endif  // DISTLINK_CLIQUE_DIMACS_H_

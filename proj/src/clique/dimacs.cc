#include "distlink/clique/dimacs.h"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "distlink/core/error.h"

namespace distlink::clique {

SimpleGraph read_dimacs(std::istream& in) {
  std::optional<SimpleGraph> g;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw InputError("dimacs line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string format;
      std::size_t n = 0;
      std::size_t m = 0;
      if (g) fail("duplicate problem line");
      if (!(ss >> format >> n >> m) || (format != "edge" && format != "col")) {
        fail("expected 'p edge <n> <m>'");
      }
      g.emplace(n);
    } else if (tag == "e") {
      if (!g) fail("edge before problem line");
      long long u = 0;
      long long v = 0;
      if (!(ss >> u >> v)) fail("expected 'e <u> <v>'");
      const auto n = static_cast<long long>(g->size());
      if (u < 1 || v < 1 || u > n || v > n) fail("vertex out of range");
      if (u == v) fail("self-loop");
      g->add_edge(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
    } else {
      fail("unknown line type '" + tag + "'");
    }
  }
  if (!g) throw InputError("dimacs: missing problem line");
  return std::move(*g);
}

void write_dimacs(std::ostream& out, const SimpleGraph& g) {
  out << "p edge " << g.size() << ' ' << g.edge_count() << '\n';
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v : g.neighbours(u)) {
      if (v > u) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    }
  }
}

}  // namespace distlink::clique

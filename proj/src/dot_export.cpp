#include "hardtsp/dot_export.hpp"

#include <sstream>
#include <stdexcept>

namespace hardtsp {

std::string export_dot(const TspInstance& inst, const EdgeVector& x, double tol) {
  if (inst.n() != x.n) throw std::invalid_argument("export_dot: dimension mismatch");
  const int n = inst.n();
  std::ostringstream os;
  os << "graph support {\n";
  os << "  layout=neato;\n";
  for (int v = 0; v < n; ++v) os << "  " << v << ";\n";
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double xe = x.at(i, j);
      if (xe <= tol) continue;
      os << "  " << i << " -- " << j << " [label=\"";
      if (inst.is_integer()) {
        os << inst.cost_i(i, j);
      } else {
        os << inst.cost(i, j);
      }
      os << "\"";
      if (xe < 1.0 - tol) os << ", style=dashed";
      os << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace hardtsp

#pragma once

#include <optional>
#include <vector>

#include "hardtsp/instance.hpp"

namespace hardtsp {

struct GlobalMinCut {
  std::vector<int> side;  // nodes on the S side, sorted; never contains node 0
  double value = 0.0;
  bool disconnected = false;  // support graph was disconnected (value 0)
};

// Global minimum cut of the support graph of x (edges with x_e > support_tol),
// weights x_e. All n nodes participate even when isolated. Deterministic:
// Stoer-Wagner grown from the lowest-index node with ties on maximum
// adjacency broken by lowest index; for a disconnected support graph the
// component with the smallest minimum node index among those not containing
// node 0 is returned with value 0. The returned side is canonicalized to the
// side not containing node 0.
GlobalMinCut global_min_cut(const EdgeVector& x, double support_tol = 1e-9);

}  // namespace hardtsp

#pragma once

#include <string>

#include "hardtsp/instance.hpp"

namespace hardtsp {

// Support graph of a subtour-relaxation point as DOT text: edges with
// x_e = 1 solid, fractional edges dashed, zero edges omitted; labels carry
// the instance cost. Node and edge emission order is deterministic.
std::string export_dot(const TspInstance& inst, const EdgeVector& x, double tol = 1e-6);

}  // namespace hardtsp

#pragma once

#include <cassert>
#include <utility>

namespace hardtsp {

// Edges of the complete graph K_n are stored in lexicographic order over
// unordered pairs {i,j} with i < j:
//   (0,1), (0,2), ..., (0,n-1), (1,2), ..., (n-2,n-1)
// Every vector over edges (costs, LP solutions, tour incidences, directions)
// shares this layout.

constexpr int num_edges(int n) { return n * (n - 1) / 2; }

constexpr int edge_index(int i, int j, int n) {
  assert(0 <= i && i < j && j < n);
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

// Index for an unordered pair given in any order.
constexpr int edge_index_u(int i, int j, int n) {
  return i < j ? edge_index(i, j, n) : edge_index(j, i, n);
}

// Inverse of edge_index. O(n) scan; fine for the sizes handled here.
inline std::pair<int, int> edge_endpoints(int index, int n) {
  assert(0 <= index && index < num_edges(n));
  int i = 0;
  int row = n - 1;
  while (index >= row) {
    index -= row;
    --row;
    ++i;
  }
  return {i, i + 1 + index};
}

}  // namespace hardtsp

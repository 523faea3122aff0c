#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hardtsp/edge_index.hpp"

namespace hardtsp {

// Plain vector over the edges of K_n in the shared lexicographic layout.
struct EdgeVector {
  int n = 0;
  std::vector<double> values;

  EdgeVector() = default;
  EdgeVector(int n_, double fill = 0.0)
      : n(n_), values(static_cast<std::size_t>(num_edges(n_)), fill) {}
  EdgeVector(int n_, std::vector<double> v) : n(n_), values(std::move(v)) {}

  int size() const { return static_cast<int>(values.size()); }
  double& operator[](int e) { return values[static_cast<std::size_t>(e)]; }
  double operator[](int e) const { return values[static_cast<std::size_t>(e)]; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(edge_index_u(i, j, n))]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(edge_index_u(i, j, n))]; }

  // Dense symmetric n-by-n expansion (zero diagonal), the layout the kernels
  // operate on.
  std::vector<double> to_dense() const;
};

double dot(const EdgeVector& a, const EdgeVector& b);

enum class CostKind { kFractional, kInteger };

// Symmetric nonnegative edge costs over K_n, one entry per unordered pair.
// Fractional instances carry doubles; integer instances carry int64 costs
// (mirrored exactly into the double view). The two flavors never mix:
// integer-only accessors throw on fractional instances.
class TspInstance {
 public:
  static TspInstance fractional(int n, std::vector<double> costs, std::string name = "");
  static TspInstance integer(int n, std::vector<std::int64_t> costs, std::string name = "");
  static TspInstance uniform(int n, double cost, std::string name = "");

  int n() const { return n_; }
  int edge_count() const { return num_edges(n_); }
  CostKind cost_kind() const { return kind_; }
  bool is_integer() const { return kind_ == CostKind::kInteger; }

  double cost(int i, int j) const { return costs_[static_cast<std::size_t>(edge_index_u(i, j, n_))]; }
  double cost(int e) const { return costs_[static_cast<std::size_t>(e)]; }
  std::int64_t cost_i(int e) const;
  std::int64_t cost_i(int i, int j) const;

  const std::vector<double>& costs() const { return costs_; }
  const std::vector<std::int64_t>& costs_i() const;
  EdgeVector cost_vector() const { return EdgeVector(n_, costs_); }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  TspInstance() = default;
  int n_ = 0;
  CostKind kind_ = CostKind::kFractional;
  std::vector<double> costs_;           // always populated
  std::vector<std::int64_t> icosts_;    // integer mode only
  std::string name_;
};

// Cyclic permutation of {0..n-1}. Immutable after construction.
class Tour {
 public:
  explicit Tour(std::vector<int> order);

  int n() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }
  int operator[](int pos) const { return order_[static_cast<std::size_t>(pos)]; }

  // 0/1 vector with exactly n ones, degree two at every node.
  EdgeVector incidence() const;
  // Consecutive (cyclic) node pairs, endpoints normalized i < j.
  std::vector<std::pair<int, int>> edges() const;

  // Rotated to start at node 0, oriented so the successor of 0 is the smaller
  // of its two neighbors. Unique representative of the cyclic equivalence class.
  Tour canonical() const;
  bool operator==(const Tour& other) const;

 private:
  std::vector<int> order_;
};

double tour_cost(const TspInstance& inst, const Tour& t);
std::int64_t tour_cost_i(const TspInstance& inst, const Tour& t);

// Simple undirected graph on nodes {0..n-1}; input of the Hamiltonian-cycle
// test-fixture reduction.
class UndirectedGraph {
 public:
  UndirectedGraph(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return n_; }
  bool has_edge(int i, int j) const { return adj_[static_cast<std::size_t>(edge_index_u(i, j, n_))]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<char> adj_;  // indexed by edge_index
};

}  // namespace hardtsp

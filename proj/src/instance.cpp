#include "hardtsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardtsp/kernels.hpp"

namespace hardtsp {

std::vector<double> EdgeVector::to_dense() const {
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  int e = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++e) {
      m[static_cast<std::size_t>(i) * n + j] = values[static_cast<std::size_t>(e)];
      m[static_cast<std::size_t>(j) * n + i] = values[static_cast<std::size_t>(e)];
    }
  }
  return m;
}

double dot(const EdgeVector& a, const EdgeVector& b) {
  if (a.n != b.n) throw std::invalid_argument("EdgeVector dot: dimension mismatch");
  return kernels::dot(a.values.data(), b.values.data(), a.values.size());
}

TspInstance TspInstance::fractional(int n, std::vector<double> costs, std::string name) {
  if (n < 3) throw std::invalid_argument("TspInstance: n must be >= 3");
  if (static_cast<int>(costs.size()) != num_edges(n))
    throw std::invalid_argument("TspInstance: cost vector has wrong length");
  for (double c : costs) {
    if (!(c >= 0.0)) throw std::invalid_argument("TspInstance: costs must be nonnegative");
  }
  TspInstance inst;
  inst.n_ = n;
  inst.kind_ = CostKind::kFractional;
  inst.costs_ = std::move(costs);
  inst.name_ = std::move(name);
  return inst;
}

TspInstance TspInstance::integer(int n, std::vector<std::int64_t> costs, std::string name) {
  if (n < 3) throw std::invalid_argument("TspInstance: n must be >= 3");
  if (static_cast<int>(costs.size()) != num_edges(n))
    throw std::invalid_argument("TspInstance: cost vector has wrong length");
  constexpr std::int64_t kMaxExact = std::int64_t{1} << 53;
  TspInstance inst;
  inst.n_ = n;
  inst.kind_ = CostKind::kInteger;
  inst.costs_.reserve(costs.size());
  for (std::int64_t c : costs) {
    if (c < 0) throw std::invalid_argument("TspInstance: costs must be nonnegative");
    if (c >= kMaxExact) throw std::overflow_error("TspInstance: integer cost exceeds exact double range");
    inst.costs_.push_back(static_cast<double>(c));
  }
  inst.icosts_ = std::move(costs);
  inst.name_ = std::move(name);
  return inst;
}

TspInstance TspInstance::uniform(int n, double cost, std::string name) {
  return fractional(n, std::vector<double>(static_cast<std::size_t>(num_edges(n)), cost),
                    std::move(name));
}

std::int64_t TspInstance::cost_i(int e) const {
  if (kind_ != CostKind::kInteger)
    throw std::logic_error("TspInstance: integer costs requested from a fractional instance");
  return icosts_[static_cast<std::size_t>(e)];
}

std::int64_t TspInstance::cost_i(int i, int j) const { return cost_i(edge_index_u(i, j, n_)); }

const std::vector<std::int64_t>& TspInstance::costs_i() const {
  if (kind_ != CostKind::kInteger)
    throw std::logic_error("TspInstance: integer costs requested from a fractional instance");
  return icosts_;
}

Tour::Tour(std::vector<int> order) : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  if (n < 3) throw std::invalid_argument("Tour: needs at least 3 nodes");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : order_) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("Tour: order is not a permutation");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

EdgeVector Tour::incidence() const {
  const int nn = n();
  EdgeVector z(nn);
  for (int pos = 0; pos < nn; ++pos) {
    int a = order_[static_cast<std::size_t>(pos)];
    int b = order_[static_cast<std::size_t>((pos + 1) % nn)];
    z.at(a, b) = 1.0;
  }
  return z;
}

std::vector<std::pair<int, int>> Tour::edges() const {
  const int nn = n();
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(nn));
  for (int pos = 0; pos < nn; ++pos) {
    int a = order_[static_cast<std::size_t>(pos)];
    int b = order_[static_cast<std::size_t>((pos + 1) % nn)];
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  return out;
}

Tour Tour::canonical() const {
  const int nn = n();
  int pos0 = 0;
  while (order_[static_cast<std::size_t>(pos0)] != 0) ++pos0;
  std::vector<int> fwd(static_cast<std::size_t>(nn));
  for (int t = 0; t < nn; ++t) fwd[static_cast<std::size_t>(t)] = order_[static_cast<std::size_t>((pos0 + t) % nn)];
  if (fwd[1] > fwd[static_cast<std::size_t>(nn - 1)]) {
    std::reverse(fwd.begin() + 1, fwd.end());
  }
  return Tour(std::move(fwd));
}

bool Tour::operator==(const Tour& other) const {
  if (n() != other.n()) return false;
  return canonical().order() == other.canonical().order();
}

double tour_cost(const TspInstance& inst, const Tour& t) {
  if (t.n() != inst.n()) throw std::invalid_argument("tour_cost: dimension mismatch");
  double total = 0.0;
  const auto& ord = t.order();
  const int nn = t.n();
  for (int pos = 0; pos < nn; ++pos) {
    total += inst.cost(ord[static_cast<std::size_t>(pos)], ord[static_cast<std::size_t>((pos + 1) % nn)]);
  }
  return total;
}

std::int64_t tour_cost_i(const TspInstance& inst, const Tour& t) {
  if (t.n() != inst.n()) throw std::invalid_argument("tour_cost_i: dimension mismatch");
  std::int64_t total = 0;
  const auto& ord = t.order();
  const int nn = t.n();
  for (int pos = 0; pos < nn; ++pos) {
    total += inst.cost_i(ord[static_cast<std::size_t>(pos)], ord[static_cast<std::size_t>((pos + 1) % nn)]);
  }
  return total;
}

UndirectedGraph::UndirectedGraph(int n, const std::vector<std::pair<int, int>>& edges)
    : n_(n), adj_(static_cast<std::size_t>(num_edges(n)), 0) {
  if (n < 2) throw std::invalid_argument("UndirectedGraph: n must be >= 2");
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a == b) throw std::invalid_argument("UndirectedGraph: self-loop");
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("UndirectedGraph: endpoint out of range");
    int e = edge_index_u(a, b, n);
    if (!adj_[static_cast<std::size_t>(e)]) {
      adj_[static_cast<std::size_t>(e)] = 1;
      edges_.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
}

}  // namespace hardtsp

#include "hardtsp/tsplib.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hardtsp {

namespace {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

int nint(double x) { return static_cast<int>(x + 0.5); }

std::int64_t euc2d(double xi, double yi, double xj, double yj) {
  const double xd = xi - xj, yd = yi - yj;
  return nint(std::sqrt(xd * xd + yd * yd));
}

std::int64_t att(double xi, double yi, double xj, double yj) {
  const double xd = xi - xj, yd = yi - yj;
  const double rij = std::sqrt((xd * xd + yd * yd) / 10.0);
  const int tij = nint(rij);
  return tij < rij ? tij + 1 : tij;
}

double geo_radians(double coord) {
  constexpr double kPi = 3.141592;
  const int deg = nint(coord);
  const double min = coord - deg;
  return kPi * (deg + 5.0 * min / 3.0) / 180.0;
}

std::int64_t geo(double xi, double yi, double xj, double yj) {
  constexpr double kEarthRadius = 6378.388;
  const double lat_i = geo_radians(xi), lon_i = geo_radians(yi);
  const double lat_j = geo_radians(xj), lon_j = geo_radians(yj);
  const double q1 = std::cos(lon_i - lon_j);
  const double q2 = std::cos(lat_i - lat_j);
  const double q3 = std::cos(lat_i + lat_j);
  return static_cast<std::int64_t>(
      kEarthRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

}  // namespace

TspInstance tsplib_parse(std::istream& in) {
  std::string name;
  int dimension = -1;
  std::string weight_type;
  std::string weight_format;
  std::vector<double> weights;
  std::vector<std::pair<double, double>> coords;
  bool have_weights = false;

  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    std::string key = t, value;
    const auto colon = t.find(':');
    if (colon != std::string::npos) {
      key = trim(t.substr(0, colon));
      value = trim(t.substr(colon + 1));
    }
    std::transform(key.begin(), key.end(), key.begin(), ::toupper);

    if (key == "EOF") break;
    if (key == "NAME") {
      name = value;
    } else if (key == "TYPE") {
      std::string v = value;
      std::transform(v.begin(), v.end(), v.begin(), ::toupper);
      if (v != "TSP") throw ParseError("tsplib: unsupported TYPE: " + value);
    } else if (key == "COMMENT" || key == "DISPLAY_DATA_TYPE") {
      // ignored
    } else if (key == "DIMENSION") {
      dimension = std::stoi(value);
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = value;
      std::transform(weight_type.begin(), weight_type.end(), weight_type.begin(), ::toupper);
      if (weight_type != "EXPLICIT" && weight_type != "EUC_2D" && weight_type != "ATT" &&
          weight_type != "GEO") {
        throw ParseError("tsplib: unsupported EDGE_WEIGHT_TYPE: " + value);
      }
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      weight_format = value;
      std::transform(weight_format.begin(), weight_format.end(), weight_format.begin(), ::toupper);
      if (weight_format != "FULL_MATRIX" && weight_format != "UPPER_ROW" &&
          weight_format != "LOWER_DIAG_ROW") {
        throw ParseError("tsplib: unsupported EDGE_WEIGHT_FORMAT: " + value);
      }
    } else if (key == "EDGE_WEIGHT_SECTION") {
      if (dimension <= 0) throw ParseError("tsplib: EDGE_WEIGHT_SECTION before DIMENSION");
      std::size_t need;
      const std::size_t nd = static_cast<std::size_t>(dimension);
      if (weight_format == "FULL_MATRIX") {
        need = nd * nd;
      } else if (weight_format == "UPPER_ROW") {
        need = nd * (nd - 1) / 2;
      } else if (weight_format == "LOWER_DIAG_ROW") {
        need = nd * (nd + 1) / 2;
      } else {
        throw ParseError("tsplib: EDGE_WEIGHT_SECTION without a supported EDGE_WEIGHT_FORMAT");
      }
      weights.reserve(need);
      double w;
      while (weights.size() < need && in >> w) weights.push_back(w);
      if (weights.size() < need) throw ParseError("tsplib: EDGE_WEIGHT_SECTION ended early");
      have_weights = true;
    } else if (key == "NODE_COORD_SECTION") {
      if (dimension <= 0) throw ParseError("tsplib: NODE_COORD_SECTION before DIMENSION");
      coords.assign(static_cast<std::size_t>(dimension), {0, 0});
      for (int i = 0; i < dimension; ++i) {
        int id;
        double x, y;
        if (!(in >> id >> x >> y)) throw ParseError("tsplib: NODE_COORD_SECTION ended early");
        if (id < 1 || id > dimension) throw ParseError("tsplib: node id out of range");
        coords[static_cast<std::size_t>(id - 1)] = {x, y};
      }
    } else if (key == "DISPLAY_DATA_SECTION") {
      if (dimension <= 0) throw ParseError("tsplib: DISPLAY_DATA_SECTION before DIMENSION");
      for (int i = 0; i < dimension; ++i) {
        int id;
        double x, y;
        if (!(in >> id >> x >> y)) throw ParseError("tsplib: DISPLAY_DATA_SECTION ended early");
      }
    } else {
      throw ParseError("tsplib: unsupported keyword: " + key);
    }
  }

  if (dimension < 3) throw ParseError("tsplib: missing or invalid DIMENSION");
  const int n = dimension;
  std::vector<std::int64_t> costs(static_cast<std::size_t>(num_edges(n)), 0);

  if (weight_type == "EXPLICIT") {
    if (!have_weights) throw ParseError("tsplib: EXPLICIT instance without EDGE_WEIGHT_SECTION");
    auto full_at = [&](int i, int j) -> double {
      const std::size_t nd = static_cast<std::size_t>(n);
      if (weight_format == "FULL_MATRIX") {
        return weights[static_cast<std::size_t>(i) * nd + static_cast<std::size_t>(j)];
      }
      if (weight_format == "UPPER_ROW") {
        if (i > j) std::swap(i, j);
        return weights[static_cast<std::size_t>(edge_index(i, j, n))];
      }
      // LOWER_DIAG_ROW: row i holds entries j = 0..i
      if (i < j) std::swap(i, j);
      return weights[static_cast<std::size_t>(i) * (static_cast<std::size_t>(i) + 1) / 2 +
                     static_cast<std::size_t>(j)];
    };
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        costs[static_cast<std::size_t>(edge_index(i, j, n))] = std::llround(full_at(i, j));
      }
    }
  } else {
    if (coords.empty()) throw ParseError("tsplib: coordinate instance without NODE_COORD_SECTION");
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const auto [xi, yi] = coords[static_cast<std::size_t>(i)];
        const auto [xj, yj] = coords[static_cast<std::size_t>(j)];
        std::int64_t d;
        if (weight_type == "EUC_2D") {
          d = euc2d(xi, yi, xj, yj);
        } else if (weight_type == "ATT") {
          d = att(xi, yi, xj, yj);
        } else if (weight_type == "GEO") {
          d = geo(xi, yi, xj, yj);
        } else {
          throw ParseError("tsplib: missing EDGE_WEIGHT_TYPE");
        }
        costs[static_cast<std::size_t>(edge_index(i, j, n))] = d;
      }
    }
  }

  return TspInstance::integer(n, std::move(costs), name);
}

TspInstance tsplib_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("tsplib_read: cannot open " + path);
  return tsplib_parse(in);
}

void tsplib_write(const TspInstance& inst, std::ostream& out) {
  if (!inst.is_integer())
    throw std::invalid_argument("tsplib_write: only integer instances are written");
  const int n = inst.n();
  out << "NAME: " << (inst.name().empty() ? "hardtsp" : inst.name()) << "\n";
  out << "TYPE: TSP\n";
  out << "DIMENSION: " << n << "\n";
  out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
  out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
  out << "EDGE_WEIGHT_SECTION\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << (i == j ? 0 : inst.cost_i(i, j));
    }
    out << "\n";
  }
  out << "EOF\n";
}

void tsplib_write(const TspInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("tsplib_write: cannot open " + path);
  tsplib_write(inst, out);
}

}  // namespace hardtsp

#pragma once
// Strip-like domains: the region between x_N = 0 and a positive Lipschitz
// graph eta over R^{N-1} (or a constant height b for the flat case), plus the
// function wrappers used everywhere (boundary data g on R^{N-1}, bulk data u
// on the strip) and tensor-grid storage with CSV round-trip.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracstrip/core.hpp"
#include "fracstrip/params.hpp"

namespace fracstrip {

// ---------------------------------------------------------------------------
// LipschitzProfile: eta : R^{N-1} -> R with a certified Lipschitz bound.
// Certification samples a fine mesh over the certification box and checks
// difference quotients against lip_bound (+eps slack) and, when the profile is
// used as a height/screen, positivity. Evaluation outside the box is allowed
// (profiles are globally defined closures).
// ---------------------------------------------------------------------------
class LipschitzProfile {
 public:
  using Fn = std::function<double(const Vec&)>;

  LipschitzProfile() = default;

  static LipschitzProfile certify(Fn fn, int dim, const Box& cert_box, double lip_bound,
                                  bool require_positive = true, int mesh_per_axis = 257,
                                  double eps = 1e-9) {
    if (dim < 1 || dim > kMaxDim - 1)
      throw std::invalid_argument("LipschitzProfile: boundary dim must be 1 or 2");
    LipschitzProfile out;
    out.fn_ = std::move(fn);
    out.dim_ = dim;
    out.lip_ = lip_bound;
    out.box_ = cert_box;
    out.positive_ = require_positive;

    // mesh check: difference quotients along each axis + positivity
    const int m = mesh_per_axis;
    double min_val = std::numeric_limits<double>::infinity();
    double max_val = -min_val;
    auto value_at = [&](int i, int j) {
      Vec x{0, 0, 0};
      x[0] = cert_box.lo[0] + cert_box.extent(0) * i / (m - 1);
      if (dim == 2) x[1] = cert_box.lo[1] + cert_box.extent(1) * j / (m - 1);
      return out.fn_(x);
    };
    const int jmax = dim == 2 ? m : 1;
    std::vector<double> prev_row;
    for (int j = 0; j < jmax; ++j) {
      std::vector<double> row(m);
      for (int i = 0; i < m; ++i) {
        row[i] = value_at(i, j);
        if (!std::isfinite(row[i]))
          throw std::domain_error("LipschitzProfile: non-finite sample");
        min_val = std::min(min_val, row[i]);
        max_val = std::max(max_val, row[i]);
        if (i > 0) {
          const double h = cert_box.extent(0) / (m - 1);
          if (std::abs(row[i] - row[i - 1]) > lip_bound * h + eps)
            throw std::domain_error("LipschitzProfile: Lipschitz bound violated on mesh");
        }
      }
      if (j > 0) {
        const double h = cert_box.extent(1) / (m - 1);
        for (int i = 0; i < m; ++i)
          if (std::abs(row[i] - prev_row[i]) > lip_bound * h + eps)
            throw std::domain_error("LipschitzProfile: Lipschitz bound violated on mesh");
      }
      prev_row = std::move(row);
    }
    if (require_positive && !(min_val > 0.0))
      throw std::domain_error("LipschitzProfile: positivity required but min sample <= 0");
    out.min_ = min_val;
    out.max_ = max_val;
    return out;
  }

  static LipschitzProfile constant(double c, int dim = 1) {
    if (!(c > 0.0)) throw std::domain_error("constant profile must be positive");
    Box b;
    b.dim = dim;
    for (int i = 0; i < dim; ++i) { b.lo[i] = -1; b.hi[i] = 1; }
    return certify([c](const Vec&) { return c; }, dim, b, 0.0, true, 17);
  }

  double operator()(const Vec& x) const { return fn_(x); }
  double operator()(double x) const { return fn_(vec1(x)); }
  int dim() const { return dim_; }
  double lip_bound() const { return lip_; }
  double min_certified() const { return min_; }
  double max_certified() const { return max_; }
  bool positive() const { return positive_; }
  const Box& certification_box() const { return box_; }
  bool valid() const { return static_cast<bool>(fn_); }

 private:
  Fn fn_;
  int dim_ = 1;
  double lip_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
  bool positive_ = true;
  Box box_;
};

// ---------------------------------------------------------------------------
// StripDomain: flat strip R^{N-1} x (0,b) or graph strip {0 < x_N < eta(x')},
// with the lateral truncation box for quadrature.
// ---------------------------------------------------------------------------
struct StripDomain {
  enum class Shape { flat, graph };

  Shape shape = Shape::flat;
  int space_dim = 2;       // N
  Box lateral;             // truncation box in R^{N-1}
  double height = 1.0;     // b, flat case
  LipschitzProfile profile;  // eta, graph case

  static StripDomain flat(int N, const Box& lateral_box, double b) {
    if (!(b > 0.0)) throw std::domain_error("StripDomain: height must be positive");
    if (N < 2 || N > 3) throw std::invalid_argument("StripDomain: N must be 2 or 3");
    if (lateral_box.dim != N - 1)
      throw std::invalid_argument("StripDomain: lateral box dim must be N-1");
    StripDomain d;
    d.shape = Shape::flat;
    d.space_dim = N;
    d.lateral = lateral_box;
    d.height = b;
    return d;
  }

  static StripDomain graph(int N, const Box& lateral_box, LipschitzProfile eta) {
    if (N != 2) throw std::invalid_argument("StripDomain: graph domains capped at N=2");
    if (lateral_box.dim != N - 1)
      throw std::invalid_argument("StripDomain: lateral box dim must be N-1");
    if (!eta.valid() || !eta.positive())
      throw std::domain_error("StripDomain: graph needs a positive certified profile");
    StripDomain d;
    d.shape = Shape::graph;
    d.space_dim = N;
    d.lateral = lateral_box;
    d.profile = std::move(eta);
    return d;
  }

  int boundary_dim() const { return space_dim - 1; }

  // local height above x'
  double top(const Vec& xp) const {
    return shape == Shape::flat ? height : profile(xp);
  }
  double max_height() const {
    return shape == Shape::flat ? height : profile.max_certified();
  }

  bool contains(const Vec& x) const {
    for (int i = 0; i < boundary_dim(); ++i)
      if (x[i] < lateral.lo[i] || x[i] > lateral.hi[i]) return false;
    const double xn = x[boundary_dim()];
    return xn > 0.0 && xn < top(x);
  }

  std::string describe() const {
    std::ostringstream os;
    os << (shape == Shape::flat ? "flat" : "graph") << " strip, N=" << space_dim
       << ", lateral [" << lateral.lo[0] << "," << lateral.hi[0] << "]";
    if (boundary_dim() == 2) os << "x[" << lateral.lo[1] << "," << lateral.hi[1] << "]";
    if (shape == Shape::flat) os << ", b=" << height;
    else os << ", eta in [" << profile.min_certified() << "," << profile.max_certified() << "]";
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Function wrappers. Evaluators are analytic closures; `breakpoints` lists
// jump/kink abscissae of 1-D boundary data so quadrature grids can split
// cells there (exactness for indicator-type data).
// ---------------------------------------------------------------------------
struct BoundaryFunction {
  std::string name;
  int dim = 1;  // N-1
  std::function<double(const Vec&)> eval;
  std::vector<double> breakpoints;  // 1-D only

  double operator()(const Vec& x) const { return eval(x); }
  double operator()(double x) const { return eval(vec1(x)); }
};

struct BulkFunction {
  std::string name;
  StripDomain domain;
  std::function<double(const Vec&)> eval;  // x = (x', x_N)

  double operator()(const Vec& x) const { return eval(x); }
  double operator()(double xp, double xn) const { return eval(vec2(xp, xn)); }
};

// ---------------------------------------------------------------------------
// GridFunction: values on a uniform tensor grid (node-centered), row-major
// with the last axis fastest. Masked nodes (outside a graph domain) carry
// quiet NaN in CSV and mask=false in memory.
// CSV layout:   line 1: dims,spacing,origin
//               line 2: d1 d2 ...,h1 h2 ...,o1 o2 ...
//               then one row per node: coord_1,...,coord_k,value
// ---------------------------------------------------------------------------
struct GridFunction {
  int dim = 1;
  std::array<int, kMaxDim> dims{1, 1, 1};
  Vec spacing{1, 1, 1};
  Vec origin{0, 0, 0};
  std::vector<double> values;
  std::vector<std::uint8_t> mask;  // 1 = valid

  std::size_t size() const {
    std::size_t n = 1;
    for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(dims[i]);
    return n;
  }
  std::size_t index(const std::array<int, kMaxDim>& id) const {
    std::size_t ix = 0;
    for (int i = 0; i < dim; ++i) ix = ix * dims[i] + static_cast<std::size_t>(id[i]);
    return ix;
  }
  Vec node(const std::array<int, kMaxDim>& id) const {
    Vec x{0, 0, 0};
    for (int i = 0; i < dim; ++i) x[i] = origin[i] + spacing[i] * id[i];
    return x;
  }

  static GridFunction sample(int dim, const std::array<int, kMaxDim>& dims, const Vec& origin,
                             const Vec& spacing, const std::function<double(const Vec&)>& f,
                             const std::function<bool(const Vec&)>& inside = nullptr) {
    GridFunction g;
    g.dim = dim;
    g.dims = dims;
    g.origin = origin;
    g.spacing = spacing;
    g.values.resize(g.size());
    g.mask.assign(g.size(), 1);
    std::array<int, kMaxDim> id{0, 0, 0};
    for (std::size_t k = 0; k < g.size(); ++k) {
      std::size_t rem = k;
      for (int i = dim - 1; i >= 0; --i) {
        id[i] = static_cast<int>(rem % dims[i]);
        rem /= dims[i];
      }
      const Vec x = g.node(id);
      if (inside && !inside(x)) {
        g.values[k] = std::numeric_limits<double>::quiet_NaN();
        g.mask[k] = 0;
      } else {
        g.values[k] = f(x);
        if (!std::isfinite(g.values[k]))
          throw std::domain_error("GridFunction: non-finite sample at a valid node");
      }
    }
    return g;
  }

  // Multilinear interpolation (clamped to the grid box); masked corners poison.
  double interpolate(const Vec& x) const {
    std::array<int, kMaxDim> base{0, 0, 0};
    Vec t{0, 0, 0};
    for (int i = 0; i < dim; ++i) {
      double u = (x[i] - origin[i]) / spacing[i];
      u = std::max(0.0, std::min(u, static_cast<double>(dims[i] - 1)));
      base[i] = std::min(static_cast<int>(u), dims[i] - 2 >= 0 ? dims[i] - 2 : 0);
      t[i] = u - base[i];
    }
    double acc = 0.0;
    const int corners = 1 << dim;
    for (int c = 0; c < corners; ++c) {
      std::array<int, kMaxDim> id = base;
      double w = 1.0;
      for (int i = 0; i < dim; ++i) {
        const int bit = (c >> i) & 1;
        id[i] = std::min(base[i] + bit, dims[i] - 1);
        w *= bit ? t[i] : (1.0 - t[i]);
      }
      const std::size_t k = index(id);
      if (!mask[k]) return std::numeric_limits<double>::quiet_NaN();
      acc += w * values[k];
    }
    return acc;
  }

  void write_csv(std::ostream& os) const {
    os << "dims,spacing,origin\n";
    auto join = [&](auto&& get) {
      std::ostringstream s;
      for (int i = 0; i < dim; ++i) {
        if (i) s << ' ';
        s << get(i);
      }
      return s.str();
    };
    os.precision(17);
    os << join([&](int i) { return dims[i]; }) << ',' << join([&](int i) { return spacing[i]; })
       << ',' << join([&](int i) { return origin[i]; }) << '\n';
    std::array<int, kMaxDim> id{0, 0, 0};
    for (std::size_t k = 0; k < size(); ++k) {
      std::size_t rem = k;
      for (int i = dim - 1; i >= 0; --i) {
        id[i] = static_cast<int>(rem % dims[i]);
        rem /= dims[i];
      }
      const Vec x = node(id);
      for (int i = 0; i < dim; ++i) os << x[i] << ',';
      if (mask[k]) os << values[k] << '\n';
      else os << "nan\n";
    }
  }

  void write_csv_file(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    write_csv(f);
  }

  static GridFunction read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "dims,spacing,origin")
      throw std::runtime_error("GridFunction CSV: bad header");
    if (!std::getline(is, line)) throw std::runtime_error("GridFunction CSV: missing meta row");
    GridFunction g;
    {
      std::istringstream meta(line);
      std::string field;
      std::vector<std::vector<double>> cols;
      while (std::getline(meta, field, ',')) {
        std::istringstream fs(field);
        std::vector<double> vals;
        double v;
        while (fs >> v) vals.push_back(v);
        cols.push_back(vals);
      }
      if (cols.size() != 3 || cols[0].empty() || cols[0].size() != cols[1].size() ||
          cols[0].size() != cols[2].size())
        throw std::runtime_error("GridFunction CSV: malformed meta row");
      g.dim = static_cast<int>(cols[0].size());
      if (g.dim > kMaxDim) throw std::runtime_error("GridFunction CSV: too many dims");
      for (int i = 0; i < g.dim; ++i) {
        g.dims[i] = static_cast<int>(cols[0][i]);
        g.spacing[i] = cols[1][i];
        g.origin[i] = cols[2][i];
        if (g.dims[i] < 1 || !(g.spacing[i] > 0))
          throw std::runtime_error("GridFunction CSV: bad dims/spacing");
      }
    }
    g.values.resize(g.size());
    g.mask.assign(g.size(), 1);
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!std::getline(is, line)) throw std::runtime_error("GridFunction CSV: truncated");
      std::istringstream row(line);
      std::string field;
      std::vector<std::string> fields;
      while (std::getline(row, field, ',')) fields.push_back(field);
      if (fields.size() != static_cast<std::size_t>(g.dim) + 1)
        throw std::runtime_error("GridFunction CSV: bad row width");
      const std::string& sval = fields.back();
      if (sval == "nan") {
        g.values[k] = std::numeric_limits<double>::quiet_NaN();
        g.mask[k] = 0;
      } else {
        g.values[k] = std::stod(sval);
      }
    }
    return g;
  }

  static GridFunction read_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for read: " + path);
    return read_csv(f);
  }
};

}  // namespace fracstrip

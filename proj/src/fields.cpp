#include "parafractal/fields.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "parafractal/io.hpp"
#include <json.hpp>

namespace parafractal {

namespace {

constexpr char kMagic[] = "PFLD1\n";

std::size_t axis_index(double u, int n, double& frac) {
  if (n == 1) {
    frac = 0.0;
    return 0;
  }
  int i = static_cast<int>(std::floor(u));
  i = std::clamp(i, 0, n - 2);
  frac = u - static_cast<double>(i);
  frac = std::clamp(frac, 0.0, 1.0);
  return static_cast<std::size_t>(i);
}

struct InterpStencil {
  std::size_t base[4];  // lower node per axis (x,y,z,t)
  double w[4];          // weight of the upper node per axis
};

InterpStencil locate(const GridSpec& g, const Eigen::Vector3d& x, double t) {
  const double ux = (x.x() - g.x0) / g.dx;
  const double uy = (x.y() - g.y0) / g.dy;
  const double uz = (x.z() - g.z0) / g.dz;
  const double ut = (t - g.t0) / g.dt;
  const double slack = 1e-9;
  if (ux < -slack || ux > g.nx - 1 + slack || uy < -slack ||
      uy > g.ny - 1 + slack || uz < -slack || uz > g.nz - 1 + slack ||
      ut < -slack || ut > g.nt - 1 + slack)
    throw OutOfDomain("gridded field: evaluation point outside grid");
  InterpStencil s;
  s.base[0] = axis_index(ux, g.nx, s.w[0]);
  s.base[1] = axis_index(uy, g.ny, s.w[1]);
  s.base[2] = axis_index(uz, g.nz, s.w[2]);
  s.base[3] = axis_index(ut, g.nt, s.w[3]);
  return s;
}

// 4-linear interpolation of `comps` consecutive values per node.
void interp(const GriddedField& f, const std::vector<double>& arr, int comps,
            const InterpStencil& s, double* out) {
  const GridSpec& g = f.grid;
  for (int c = 0; c < comps; ++c) out[c] = 0.0;
  for (int corner = 0; corner < 16; ++corner) {
    double w = 1.0;
    int o[4];
    for (int a = 0; a < 4; ++a) {
      o[a] = (corner >> a) & 1;
      const int n = a == 0 ? g.nx : a == 1 ? g.ny : a == 2 ? g.nz : g.nt;
      if (n == 1 && o[a] == 1) {
        w = 0.0;
        break;
      }
      w *= o[a] ? s.w[a] : 1.0 - s.w[a];
    }
    if (w == 0.0) continue;
    const std::size_t idx =
        g.node_index(static_cast<int>(s.base[0]) + o[0],
                     static_cast<int>(s.base[1]) + o[1],
                     static_cast<int>(s.base[2]) + o[2],
                     static_cast<int>(s.base[3]) + o[3]);
    for (int c = 0; c < comps; ++c)
      out[c] += w * arr[idx * static_cast<std::size_t>(comps) + c];
  }
}

void validate_grid(const GriddedField& f) {
  const GridSpec& g = f.grid;
  if (g.nx <= 0 || g.ny <= 0 || g.nz <= 0 || g.nt <= 0)
    throw FormatError("field: node counts must be positive");
  if (!(g.dx > 0) || !(g.dy > 0) || !(g.dz > 0) || !(g.dt > 0))
    throw FormatError("field: spacings must be positive");
  const std::size_t n = g.nodes();
  if (f.velocity.size() != 3 * n)
    throw FormatError("field: velocity array length mismatch");
  if (f.pressure.size() != n)
    throw FormatError("field: pressure array length mismatch");
  if (!f.grad_velocity.empty() && f.grad_velocity.size() != 9 * n)
    throw FormatError("field: velocity gradient array length mismatch");
  if (!f.grad_pressure.empty() && f.grad_pressure.size() != 3 * n)
    throw FormatError("field: pressure gradient array length mismatch");
}

// ---- generator registry -------------------------------------------------

double param(const std::map<std::string, double>& p, const std::string& key,
             double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

AnalyticField make_constant(const std::map<std::string, double>& params) {
  AnalyticField f;
  f.name = "constant";
  f.params = {{"vx", param(params, "vx", 1.0)},
              {"vy", param(params, "vy", 0.0)},
              {"vz", param(params, "vz", 0.0)},
              {"p", param(params, "p", 0.0)}};
  const Eigen::Vector3d v(f.params["vx"], f.params["vy"], f.params["vz"]);
  const double p0 = f.params["p"];
  f.no_slip = false;
  f.velocity = [v](const Eigen::Vector3d&, double) { return v; };
  f.pressure = [p0](const Eigen::Vector3d&, double) { return p0; };
  f.velocity_gradient = [](const Eigen::Vector3d&, double) {
    return Eigen::Matrix3d::Zero().eval();
  };
  f.pressure_gradient = [](const Eigen::Vector3d&, double) {
    return Eigen::Vector3d::Zero().eval();
  };
  return f;
}

AnalyticField make_shear(const std::map<std::string, double>& params) {
  AnalyticField f;
  f.name = "shear";
  f.params = {{"rate", param(params, "rate", 1.0)}};
  const double a = f.params["rate"];
  f.no_slip = true;
  f.velocity = [a](const Eigen::Vector3d& x, double) {
    return Eigen::Vector3d(a * x.z(), 0.0, 0.0);
  };
  f.pressure = [](const Eigen::Vector3d&, double) { return 0.0; };
  f.velocity_gradient = [a](const Eigen::Vector3d&, double) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 2) = a;
    return m;
  };
  f.pressure_gradient = [](const Eigen::Vector3d&, double) {
    return Eigen::Vector3d::Zero().eval();
  };
  return f;
}

// Compactly supported solenoidal field v = curl(g e1) with g a radial bump
// around an interior center; vanishes identically near {x3 = 0}, so the
// no-slip trace is exact.
struct BumpShape {
  Eigen::Vector3d c;
  double R;
  double amp;

  // eta(s) = exp(-1/(1-s)) on s < 1, extended by zero.
  static void eta(double s, double& e, double& e1, double& e2) {
    if (s >= 1.0 - 1e-8) {
      e = e1 = e2 = 0.0;
      return;
    }
    const double q = 1.0 - s;
    e = std::exp(-1.0 / q);
    e1 = -e / (q * q);
    e2 = e * (1.0 / (q * q * q * q) - 2.0 / (q * q * q));
  }

  void g_derivs(const Eigen::Vector3d& x, Eigen::Vector3d& grad,
                Eigen::Matrix3d& hess) const {
    const Eigen::Vector3d d = x - c;
    const double s = d.squaredNorm() / (R * R);
    double e, e1, e2;
    eta(s, e, e1, e2);
    if (e == 0.0) {
      grad.setZero();
      hess.setZero();
      return;
    }
    const double two_over_R2 = 2.0 / (R * R);
    grad = amp * e1 * two_over_R2 * d;
    hess = amp * (e2 * two_over_R2 * two_over_R2 * (d * d.transpose()) +
                  e1 * two_over_R2 * Eigen::Matrix3d::Identity());
  }
};

AnalyticField make_bump(const std::map<std::string, double>& params) {
  AnalyticField f;
  f.name = "bump";
  f.params = {{"amp", param(params, "amp", 0.4)},
              {"radius", param(params, "radius", 0.3)},
              {"cz", param(params, "cz", 0.5)},
              {"p_amp", param(params, "p_amp", 0.3)}};
  BumpShape shape{Eigen::Vector3d(0.0, 0.0, f.params["cz"]), f.params["radius"],
                  f.params["amp"]};
  const double p_amp = f.params["p_amp"];
  auto tfac = [](double t) { return 1.0 - t * (1.0 + t); };
  f.no_slip = true;
  f.velocity = [shape, tfac](const Eigen::Vector3d& x, double t) {
    Eigen::Vector3d grad;
    Eigen::Matrix3d hess;
    shape.g_derivs(x, grad, hess);
    // curl of (g,0,0) = (0, dg/dz, -dg/dy)
    return (tfac(t) * Eigen::Vector3d(0.0, grad.z(), -grad.y())).eval();
  };
  f.pressure = [p_amp](const Eigen::Vector3d& x, double) {
    return p_amp * x.x() * x.z();
  };
  f.velocity_gradient = [shape, tfac](const Eigen::Vector3d& x, double t) {
    Eigen::Vector3d grad;
    Eigen::Matrix3d hess;
    shape.g_derivs(x, grad, hess);
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (int j = 0; j < 3; ++j) {
      m(1, j) = hess(2, j);   // d v2 / dx_j = d2 g / dz dx_j
      m(2, j) = -hess(1, j);  // d v3 / dx_j = -d2 g / dy dx_j
    }
    return (tfac(t) * m).eval();
  };
  f.pressure_gradient = [p_amp](const Eigen::Vector3d& x, double) {
    return Eigen::Vector3d(p_amp * x.z(), 0.0, p_amp * x.x());
  };
  return f;
}

// Self-similar profile v = (-t)^(-1/2) Phi(x/sqrt(-t)) with a Gaussian-decay
// no-slip Phi; invariant under the scaling group, so every scaled functional
// at the origin is independent of the radius. Not a solution of anything:
// it is the canonical test pattern for scale-invariant criteria. Singular at
// the space-time origin only.
AnalyticField make_singular(const std::map<std::string, double>& params) {
  AnalyticField f;
  f.name = "singular";
  f.params = {{"amp", param(params, "amp", 1.0)},
              {"p_amp", param(params, "p_amp", 0.5)}};
  const double a = f.params["amp"];
  const double b = f.params["p_amp"];
  f.no_slip = true;
  f.singular_points = {make_point(0.0, 0.0, 0.0, 0.0)};
  f.velocity = [a](const Eigen::Vector3d& x, double t) {
    if (t >= 0.0) return Eigen::Vector3d::Zero().eval();
    const double u = -t;
    const Eigen::Vector3d xi = x / std::sqrt(u);
    const double e = std::exp(-xi.squaredNorm());
    if (e == 0.0) return Eigen::Vector3d::Zero().eval();
    return Eigen::Vector3d(a * xi.z() * e / std::sqrt(u), 0.0, 0.0);
  };
  f.pressure = [b](const Eigen::Vector3d& x, double t) {
    if (t >= 0.0) return 0.0;
    const double u = -t;
    const double e = std::exp(-x.squaredNorm() / u);
    return b * e / u;
  };
  f.velocity_gradient = [a](const Eigen::Vector3d& x, double t) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    if (t >= 0.0) return m;
    const double u = -t;
    const Eigen::Vector3d xi = x / std::sqrt(u);
    const double e = std::exp(-xi.squaredNorm());
    if (e == 0.0) return m;
    m(0, 0) = -2.0 * xi.x() * xi.z();
    m(0, 1) = -2.0 * xi.y() * xi.z();
    m(0, 2) = 1.0 - 2.0 * xi.z() * xi.z();
    m *= a * e / u;
    return m;
  };
  f.pressure_gradient = [b](const Eigen::Vector3d& x, double t) {
    if (t >= 0.0) return Eigen::Vector3d::Zero().eval();
    const double u = -t;
    const Eigen::Vector3d xi = x / std::sqrt(u);
    const double e = std::exp(-xi.squaredNorm());
    if (e == 0.0) return Eigen::Vector3d::Zero().eval();
    return (-2.0 * b * e / (u * std::sqrt(u)) * xi).eval();
  };
  return f;
}

}  // namespace

// ---- FieldSource ---------------------------------------------------------

FieldSource FieldSource::from_gridded(GriddedField grid) {
  validate_grid(grid);
  if (grid.grad_velocity.empty() || grid.grad_pressure.empty()) {
    GriddedField fd = finite_difference_gradients(grid);
    if (grid.grad_velocity.empty())
      grid.grad_velocity = std::move(fd.grad_velocity);
    if (grid.grad_pressure.empty())
      grid.grad_pressure = std::move(fd.grad_pressure);
  }
  FieldSource f;
  f.grid_ = std::make_shared<const GriddedField>(std::move(grid));
  return f;
}

FieldSource FieldSource::from_analytic(AnalyticField analytic) {
  FieldSource f;
  f.analytic_ = std::make_shared<const AnalyticField>(std::move(analytic));
  return f;
}

Eigen::Vector3d FieldSource::velocity(const Eigen::Vector3d& x, double t) const {
  const Eigen::Vector3d bx = scale_ * x;
  const double bt = scale_ * scale_ * t;
  if (analytic_) return scale_ * analytic_->velocity(bx, bt);
  const InterpStencil s = locate(grid_->grid, bx, bt);
  double v[3];
  interp(*grid_, grid_->velocity, 3, s, v);
  return scale_ * Eigen::Vector3d(v[0], v[1], v[2]);
}

double FieldSource::pressure(const Eigen::Vector3d& x, double t) const {
  const Eigen::Vector3d bx = scale_ * x;
  const double bt = scale_ * scale_ * t;
  const double s2 = scale_ * scale_;
  if (analytic_) return s2 * analytic_->pressure(bx, bt);
  const InterpStencil s = locate(grid_->grid, bx, bt);
  double p;
  interp(*grid_, grid_->pressure, 1, s, &p);
  return s2 * p;
}

Eigen::Matrix3d FieldSource::velocity_gradient(const Eigen::Vector3d& x,
                                               double t) const {
  const Eigen::Vector3d bx = scale_ * x;
  const double bt = scale_ * scale_ * t;
  const double s2 = scale_ * scale_;
  if (analytic_) return s2 * analytic_->velocity_gradient(bx, bt);
  const InterpStencil s = locate(grid_->grid, bx, bt);
  double g[9];
  interp(*grid_, grid_->grad_velocity, 9, s, g);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = g[3 * i + j];
  return s2 * m;
}

Eigen::Vector3d FieldSource::pressure_gradient(const Eigen::Vector3d& x,
                                               double t) const {
  const Eigen::Vector3d bx = scale_ * x;
  const double bt = scale_ * scale_ * t;
  const double s3 = scale_ * scale_ * scale_;
  if (analytic_) return s3 * analytic_->pressure_gradient(bx, bt);
  const InterpStencil s = locate(grid_->grid, bx, bt);
  double g[3];
  interp(*grid_, grid_->grad_pressure, 3, s, g);
  return s3 * Eigen::Vector3d(g[0], g[1], g[2]);
}

FieldDomain FieldSource::domain() const {
  FieldDomain d;
  if (grid_) {
    const GridSpec& g = grid_->grid;
    d.lo = Eigen::Vector3d(g.x0, g.y0, g.z0);
    d.hi = Eigen::Vector3d(g.x0 + (g.nx - 1) * g.dx, g.y0 + (g.ny - 1) * g.dy,
                           g.z0 + (g.nz - 1) * g.dz);
    d.t_lo = g.t0;
    d.t_hi = g.t0 + (g.nt - 1) * g.dt;
  }
  if (scale_ != 1.0) {
    d.lo /= scale_;
    d.hi /= scale_;
    d.t_lo /= scale_ * scale_;
    d.t_hi /= scale_ * scale_;
  }
  return d;
}

bool FieldSource::contains_halfball(const Eigen::Vector3d& center,
                                    double r) const {
  const FieldDomain d = domain();
  const double slack = 1e-12;
  return center.x() - r >= d.lo.x() - slack && center.x() + r <= d.hi.x() + slack &&
         center.y() - r >= d.lo.y() - slack && center.y() + r <= d.hi.y() + slack &&
         d.lo.z() <= slack && center.z() + r <= d.hi.z() + slack &&
         center.z() >= -slack;
}

bool FieldSource::contains_halfcylinder(const SpaceTimePoint& z, double r) const {
  const FieldDomain d = domain();
  const double slack = 1e-12;
  return contains_halfball(z.x, r) && z.t - r * r >= d.t_lo - slack &&
         z.t <= d.t_hi + slack;
}

void FieldSource::require_halfcylinder(const SpaceTimePoint& z, double r) const {
  if (!contains_halfcylinder(z, r))
    throw OutOfDomain("half-cylinder exceeds the field domain");
}

FieldSource ns_rescale(const FieldSource& f, double lambda) {
  if (!(lambda > 0.0))
    throw NonpositiveLambda("ns_rescale: lambda must be positive");
  FieldSource out = f;
  out.scale_ = f.scale_ * lambda;
  return out;
}

// ---- registry ------------------------------------------------------------

std::vector<std::string> generator_names() {
  return {"constant", "shear", "bump", "singular", "zero"};
}

AnalyticField make_generator(const std::string& name,
                             const std::map<std::string, double>& params) {
  if (name == "constant") return make_constant(params);
  if (name == "zero") {
    auto f = make_constant({{"vx", 0.0}, {"vy", 0.0}, {"vz", 0.0}, {"p", 0.0}});
    f.name = "zero";
    f.no_slip = true;
    return f;
  }
  if (name == "shear") return make_shear(params);
  if (name == "bump") return make_bump(params);
  if (name == "singular") return make_singular(params);
  throw UnknownGenerator("unknown generator: " + name);
}

// ---- sampling and derived arrays ------------------------------------------

GriddedField sample_analytic(const AnalyticField& field, const GridSpec& grid) {
  if (grid.nx <= 0 || grid.ny <= 0 || grid.nz <= 0 || grid.nt <= 0 ||
      !(grid.dx > 0) || !(grid.dy > 0) || !(grid.dz > 0) || !(grid.dt > 0))
    throw FormatError("sample_analytic: invalid grid spec");
  GriddedField out;
  out.grid = grid;
  const std::size_t n = grid.nodes();
  out.velocity.resize(3 * n);
  out.pressure.resize(n);
  out.grad_velocity.resize(9 * n);
  out.grad_pressure.resize(3 * n);
  for (int l = 0; l < grid.nt; ++l) {
    const double t = grid.t0 + l * grid.dt;
    for (int k = 0; k < grid.nz; ++k) {
      for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
          const Eigen::Vector3d x(grid.x0 + i * grid.dx, grid.y0 + j * grid.dy,
                                  grid.z0 + k * grid.dz);
          for (const SpaceTimePoint& s : field.singular_points) {
            if ((x - s.x).norm() <= 1e-12 && std::abs(t - s.t) <= 1e-12)
              throw SingularSample("sample_analytic: node hits a singular point");
          }
          const std::size_t idx = grid.node_index(i, j, k, l);
          const Eigen::Vector3d v = field.velocity(x, t);
          const Eigen::Matrix3d gv = field.velocity_gradient(x, t);
          const Eigen::Vector3d gp = field.pressure_gradient(x, t);
          for (int c = 0; c < 3; ++c) out.velocity[3 * idx + c] = v[c];
          out.pressure[idx] = field.pressure(x, t);
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              out.grad_velocity[9 * idx + 3 * a + b] = gv(a, b);
          for (int c = 0; c < 3; ++c) out.grad_pressure[3 * idx + c] = gp[c];
        }
      }
    }
  }
  return out;
}

GriddedField finite_difference_gradients(GriddedField field) {
  validate_grid(field);
  const GridSpec& g = field.grid;
  if (g.nx < 3 || g.ny < 3 || g.nz < 3)
    throw GridTooCoarse("finite_difference_gradients: need >= 3 nodes per spatial axis");
  const std::size_t n = g.nodes();
  field.grad_velocity.assign(9 * n, 0.0);
  field.grad_pressure.assign(3 * n, 0.0);

  // d/dx_axis of node value; central inside, one-sided first order at faces.
  auto derive = [&](const std::vector<double>& arr, int comps, int comp, int i,
                    int j, int k, int l, int axis) {
    int idx[3] = {i, j, k};
    const int nAxis = axis == 0 ? g.nx : axis == 1 ? g.ny : g.nz;
    const double h = axis == 0 ? g.dx : axis == 1 ? g.dy : g.dz;
    auto at = [&](int q) {
      int p[3] = {idx[0], idx[1], idx[2]};
      p[axis] = q;
      return arr[g.node_index(p[0], p[1], p[2], l) *
                     static_cast<std::size_t>(comps) +
                 static_cast<std::size_t>(comp)];
    };
    const int q = idx[axis];
    if (q == 0) return (at(1) - at(0)) / h;
    if (q == nAxis - 1) return (at(q) - at(q - 1)) / h;
    return (at(q + 1) - at(q - 1)) / (2.0 * h);
  };

  for (int l = 0; l < g.nt; ++l)
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          const std::size_t idx = g.node_index(i, j, k, l);
          for (int c = 0; c < 3; ++c)
            for (int axis = 0; axis < 3; ++axis)
              field.grad_velocity[9 * idx + 3 * c + axis] =
                  derive(field.velocity, 3, c, i, j, k, l, axis);
          for (int axis = 0; axis < 3; ++axis)
            field.grad_pressure[3 * idx + axis] =
                derive(field.pressure, 1, 0, i, j, k, l, axis);
        }
  return field;
}

// ---- binary format ---------------------------------------------------------

void store_field(const GriddedField& field, const std::string& path) {
  validate_grid(field);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("store_field: cannot open " + path);
  os.write(kMagic, 6);
  nlohmann::ordered_json header;
  header["nx"] = field.grid.nx;
  header["ny"] = field.grid.ny;
  header["nz"] = field.grid.nz;
  header["nt"] = field.grid.nt;
  header["x0"] = field.grid.x0;
  header["y0"] = field.grid.y0;
  header["z0"] = field.grid.z0;
  header["t0"] = field.grid.t0;
  header["dx"] = field.grid.dx;
  header["dy"] = field.grid.dy;
  header["dz"] = field.grid.dz;
  header["dt"] = field.grid.dt;
  header["has_grad_v"] = !field.grad_velocity.empty();
  header["has_grad_p"] = !field.grad_pressure.empty();
  const std::string line = header.dump() + "\n";
  os.write(line.data(), static_cast<std::streamsize>(line.size()));
  auto put = [&](const std::vector<double>& arr) {
    os.write(reinterpret_cast<const char*>(arr.data()),
             static_cast<std::streamsize>(arr.size() * sizeof(double)));
  };
  put(field.velocity);
  put(field.pressure);
  put(field.grad_velocity);
  put(field.grad_pressure);
  if (!os) throw IoError("store_field: write failed for " + path);
}

GriddedField load_field(const std::string& path) {
  static_assert(std::endian::native == std::endian::little,
                "field files are little-endian");
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("load_field: cannot open " + path);
  char magic[6];
  is.read(magic, 6);
  if (is.gcount() != 6 || std::string(magic, 6) != kMagic)
    throw FormatError("load_field: bad magic");
  std::string line;
  if (!std::getline(is, line)) throw FormatError("load_field: missing header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw FormatError("load_field: unparsable header");
  }
  GriddedField f;
  try {
    f.grid.nx = header.at("nx").get<int>();
    f.grid.ny = header.at("ny").get<int>();
    f.grid.nz = header.at("nz").get<int>();
    f.grid.nt = header.at("nt").get<int>();
    f.grid.x0 = header.at("x0").get<double>();
    f.grid.y0 = header.at("y0").get<double>();
    f.grid.z0 = header.at("z0").get<double>();
    f.grid.t0 = header.at("t0").get<double>();
    f.grid.dx = header.at("dx").get<double>();
    f.grid.dy = header.at("dy").get<double>();
    f.grid.dz = header.at("dz").get<double>();
    f.grid.dt = header.at("dt").get<double>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError("load_field: header misses grid keys");
  }
  if (f.grid.nx <= 0 || f.grid.ny <= 0 || f.grid.nz <= 0 || f.grid.nt <= 0)
    throw FormatError("load_field: nonpositive node count");
  const bool has_gv = header.value("has_grad_v", false);
  const bool has_gp = header.value("has_grad_p", false);
  const std::size_t n = f.grid.nodes();
  auto get = [&](std::vector<double>& arr, std::size_t count) {
    arr.resize(count);
    is.read(reinterpret_cast<char*>(arr.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (static_cast<std::size_t>(is.gcount()) != count * sizeof(double))
      throw IncompleteData("load_field: array shorter than the header claims");
  };
  get(f.velocity, 3 * n);
  get(f.pressure, n);
  if (has_gv) get(f.grad_velocity, 9 * n);
  if (has_gp) get(f.grad_pressure, 3 * n);
  is.peek();
  if (!is.eof()) throw FormatError("load_field: trailing bytes after arrays");
  validate_grid(f);
  return f;
}

void write_slice_csv(const GriddedField& field, int t_index, std::ostream& os) {
  const GridSpec& g = field.grid;
  if (t_index < 0 || t_index >= g.nt)
    throw FormatError("write_slice_csv: time index out of range");
  const double t = g.t0 + t_index * g.dt;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const std::size_t idx = g.node_index(i, j, k, t_index);
        os << csv_row({g17(g.x0 + i * g.dx), g17(g.y0 + j * g.dy),
                       g17(g.z0 + k * g.dz), g17(t),
                       g17(field.velocity[3 * idx]),
                       g17(field.velocity[3 * idx + 1]),
                       g17(field.velocity[3 * idx + 2]),
                       g17(field.pressure[idx])})
           << "\n";
      }
}

FieldSource open_field_source(const std::string& spec) {
  if (spec.rfind("gen:", 0) == 0) {
    std::string rest = spec.substr(4);
    std::string name = rest;
    std::map<std::string, double> params;
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      name = rest.substr(0, colon);
      std::stringstream ss(rest.substr(colon + 1));
      std::string item;
      while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
          throw FormatError("field spec: expected key=value in " + spec);
        params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      }
    }
    return FieldSource::from_analytic(make_generator(name, params));
  }
  return FieldSource::from_gridded(load_field(spec));
}

}  // namespace parafractal

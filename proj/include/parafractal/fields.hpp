#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "parafractal/errors.hpp"
#include "parafractal/geometry.hpp"

namespace parafractal {

/// Uniform node grid over a space-time box. nx..nt are node counts; node
/// (i,j,k,l) sits at (x0+i*dx, y0+j*dy, z0+k*dz, t0+l*dt). Arrays are stored
/// t-major, then z, y, x, components interleaved innermost.
struct GridSpec {
  int nx = 0, ny = 0, nz = 0, nt = 0;
  double x0 = 0, y0 = 0, z0 = 0, t0 = 0;
  double dx = 0, dy = 0, dz = 0, dt = 0;

  std::size_t nodes() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
           static_cast<std::size_t>(nz) * static_cast<std::size_t>(nt);
  }
  std::size_t node_index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(l) * static_cast<std::size_t>(nz) + k) *
                static_cast<std::size_t>(ny) +
            j) *
               static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(i);
  }
};

struct GriddedField {
  GridSpec grid;
  std::vector<double> velocity;       // 3 per node
  std::vector<double> pressure;       // 1 per node
  std::vector<double> grad_velocity;  // 9 per node (dv_i/dx_j at 3*i+j) or empty
  std::vector<double> grad_pressure;  // 3 per node or empty
};

/// Closed-form field with analytic gradients, built by the generator registry.
struct AnalyticField {
  std::string name;
  std::map<std::string, double> params;
  bool no_slip = false;
  std::vector<SpaceTimePoint> singular_points;
  std::function<Eigen::Vector3d(const Eigen::Vector3d&, double)> velocity;
  std::function<double(const Eigen::Vector3d&, double)> pressure;
  std::function<Eigen::Matrix3d(const Eigen::Vector3d&, double)> velocity_gradient;
  std::function<Eigen::Vector3d(const Eigen::Vector3d&, double)> pressure_gradient;
};

/// Axis box the field can be evaluated on.
struct FieldDomain {
  Eigen::Vector3d lo{-1.0, -1.0, 0.0};
  Eigen::Vector3d hi{1.0, 1.0, 1.0};
  double t_lo = -1.0;
  double t_hi = 0.0;
};

/// Uniform evaluation front end over a gridded or analytic field, composed
/// with the scaling group v_l(y,s) = l v(l y, l^2 s). Values are immutable
/// after construction; evaluation is pure.
class FieldSource {
 public:
  static FieldSource from_gridded(GriddedField grid);
  static FieldSource from_analytic(AnalyticField analytic);

  Eigen::Vector3d velocity(const Eigen::Vector3d& x, double t) const;
  double pressure(const Eigen::Vector3d& x, double t) const;
  Eigen::Matrix3d velocity_gradient(const Eigen::Vector3d& x, double t) const;
  Eigen::Vector3d pressure_gradient(const Eigen::Vector3d& x, double t) const;

  FieldDomain domain() const;
  bool contains_halfball(const Eigen::Vector3d& center, double r) const;
  bool contains_halfcylinder(const SpaceTimePoint& z, double r) const;
  void require_halfcylinder(const SpaceTimePoint& z, double r) const;

  double scale() const { return scale_; }
  bool analytic() const { return analytic_ != nullptr; }
  const AnalyticField* generator() const { return analytic_.get(); }
  const GriddedField* gridded() const { return grid_.get(); }

  friend FieldSource ns_rescale(const FieldSource& f, double lambda);

 private:
  FieldSource() = default;
  std::shared_ptr<const GriddedField> grid_;
  std::shared_ptr<const AnalyticField> analytic_;
  double scale_ = 1.0;
};

/// v_l(y,s) = l v(l y, l^2 s), p_l = l^2 p(l y, l^2 s); gradients pick up
/// l^2 and l^3. Successive rescalings compose multiplicatively.
FieldSource ns_rescale(const FieldSource& f, double lambda);

/// Registry of shipped generators: constant, shear, bump, singular.
std::vector<std::string> generator_names();
AnalyticField make_generator(const std::string& name,
                             const std::map<std::string, double>& params = {});

/// Pointwise evaluation of a generator (values and analytic gradients) onto
/// a grid. Throws SingularSample if a node hits a declared singular point.
GriddedField sample_analytic(const AnalyticField& field, const GridSpec& grid);

/// Populates grad arrays by central differences, one-sided at faces.
/// Throws GridTooCoarse if any axis has fewer than 3 nodes.
GriddedField finite_difference_gradients(GriddedField field);

/// Binary field file: "PFLD1\n", one JSON header line, then little-endian
/// float64 arrays (velocity interleaved, pressure, optional gradients).
void store_field(const GriddedField& field, const std::string& path);
GriddedField load_field(const std::string& path);

/// One time slice as "x,y,z,t,v1,v2,v3,p" rows for plotting.
void write_slice_csv(const GriddedField& field, int t_index, std::ostream& os);

/// Parses "gen:name" or "gen:name:key=value,..." into an analytic source, or
/// loads a field file from any other string.
FieldSource open_field_source(const std::string& spec);

}  // namespace parafractal

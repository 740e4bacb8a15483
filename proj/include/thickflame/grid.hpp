#ifndef THICKFLAME_GRID_HPP
#define THICKFLAME_GRID_HPP

#include <Eigen/Dense>
#include <array>
#include <memory>

#include "thickflame/chebyshev.hpp"
#include "thickflame/fourier.hpp"
#include "thickflame/params.hpp"

namespace thickflame {

// Affine map between the reference interval [-1,1] and one of the three
// physical subdomains. Node index 0 (x = +1) is the right end of the
// subdomain, index n_x (x = -1) the left end.
struct SubdomainMap {
  int id = 0;  // 1: [-A,0], 2: [0,R], 3: [R,B]
  double xi_left = 0.0, xi_right = 0.0;

  double length() const { return xi_right - xi_left; }
  double jac() const { return 0.5 * length(); }  // d xi / d x
  double xi_of_x(double x) const { return xi_left + 0.5 * (x + 1.0) * length(); }
  double x_of_xi(double xi) const { return 2.0 * (xi - xi_left) / length() - 1.0; }
};

// Collocation grid shared by all fields: CGL nodes and differentiation
// matrices in x, uniform Fourier grid in y, and the three subdomain maps.
// Immutable after construction apart from the FFT scratch in `fy`.
struct Grid {
  int n_x = 0, n_y = 0;
  Eigen::VectorXd nodes_x;
  Eigen::MatrixXd d1, d2;
  std::array<SubdomainMap, 3> maps;
  std::unique_ptr<FourierTransform> fy;

  static Grid make(const Params& p, int n_x, int n_y) {
    if (n_x < 4) throw validation_error("Grid: n_x must be >= 4");
    Grid g;
    g.n_x = n_x;
    g.n_y = n_y;
    g.nodes_x = cgl_nodes(n_x);
    g.d1 = diff_matrix(n_x, 1);
    g.d2 = diff_matrix(n_x, 2);
    g.maps[0] = {1, -p.a_ext, 0.0};
    g.maps[1] = {2, 0.0, p.r};
    g.maps[2] = {3, p.r, p.b_ext};
    g.fy = std::make_unique<FourierTransform>(n_y);
    return g;
  }

  const SubdomainMap& map(int id) const { return maps[id - 1]; }

  double y_node(int j) const { return fy->y_node(j); }

  // physical xi of node i in subdomain id
  double xi_node(int id, int i) const { return map(id).xi_of_x(nodes_x[i]); }
};

}  // namespace thickflame

#endif

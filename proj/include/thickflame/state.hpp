#ifndef THICKFLAME_STATE_HPP
#define THICKFLAME_STATE_HPP

#include <Eigen/Dense>

#include "thickflame/grid.hpp"

namespace thickflame {

// The six unknown fields on the mapped subdomains at one time instant
// (w on the left subdomain is identically zero and is not stored).
// Row i = collocation node i, column j = y node j.
struct State {
  double t = 0.0;
  Eigen::MatrixXd u1, u2, u3;  // temperature perturbation on the three pieces
  Eigen::MatrixXd w2, w3;      // x-derivative of the concentration perturbation

  static State zero(const Grid& g) {
    State s;
    const int rows = g.n_x + 1, cols = g.n_y;
    s.u1 = Eigen::MatrixXd::Zero(rows, cols);
    s.u2 = Eigen::MatrixXd::Zero(rows, cols);
    s.u3 = Eigen::MatrixXd::Zero(rows, cols);
    s.w2 = Eigen::MatrixXd::Zero(rows, cols);
    s.w3 = Eigen::MatrixXd::Zero(rows, cols);
    return s;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto* f : {&u1, &u2, &u3, &w2, &w3})
      m = std::max(m, f->cwiseAbs().maxCoeff());
    return m;
  }
};

}  // namespace thickflame

#endif

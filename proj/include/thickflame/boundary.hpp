#ifndef THICKFLAME_BOUNDARY_HPP
#define THICKFLAME_BOUNDARY_HPP

#include <Eigen/Dense>
#include <string>

#include "thickflame/errors.hpp"
#include "thickflame/grid.hpp"
#include "thickflame/params.hpp"
#include "thickflame/state.hpp"

namespace thickflame {

// Indices of the ten boundary values solved jointly each step. "p" refers to
// reference node 0 (x = +1, right end of the subdomain), "m" to node n_x
// (x = -1, left end).
enum BoundarySlot {
  U1p = 0, U1m, U2p, U2m, U3p, U3m, W2p, W2m, W3p, W3m,
  kNumSlots
};

// The coupled interface/boundary system. Ten linear relations per y line
// (or per Fourier mode; the system has no y dependence):
//   outer Dirichlet:  u1(-A) = u3(B) = w3(B) = 0
//   continuity:       u at 0 and at R
//   flux/ignition:    the jump relations at xi = 0 and xi = R; the rows for
//                     Le*w(0+) + w_xi(0+) and Le*[w]_R + [w_xi]_R carry the
//                     nonlinear data H4/H7 (zero in the linearized problem).
// Value rows and collocation-derivative rows mix the ten boundary unknowns
// with weighted sums over interior nodes, assembled here once and reused.
class InterfaceSystem {
public:
  InterfaceSystem(const Grid& g, const Params& p)
      : n_(g.n_x), le_(p.le), theta_i_(p.theta_i), r_(p.r) {
    sa_ = 2.0 / g.map(1).length();   // d/dxi = s * d/dx on [-A,0]
    sr_ = 2.0 / g.map(2).length();   // on [0,R]
    sb_ = 2.0 / g.map(3).length();   // on [R,B]
    const Eigen::MatrixXd& d = g.d1;
    drow_p_ = d.row(0);
    drow_m_ = d.row(n_);

    Eigen::Matrix<double, kNumSlots, kNumSlots> A;
    A.setZero();
    const double dp0 = d(0, 0), dpN = d(0, n_), dm0 = d(n_, 0), dmN = d(n_, n_);

    A(0, U1m) = 1.0;
    A(1, U3p) = 1.0;
    A(2, W3p) = 1.0;
    A(3, U1p) = 1.0; A(3, U2m) = -1.0;
    A(4, U3m) = 1.0; A(4, U2p) = -1.0;
    // Le [u_xi]_0 + w(0+) = 0
    A(5, U2p) = le_ * sr_ * dm0;
    A(5, U2m) = le_ * sr_ * dmN;
    A(5, U1p) = -le_ * sa_ * dp0;
    A(5, U1m) = -le_ * sa_ * dpN;
    A(5, W2m) = 1.0;
    // Le w(0+) + w_xi(0+) = H4
    A(6, W2m) = le_ + sr_ * dmN;
    A(6, W2p) = sr_ * dm0;
    // u(R) + theta_i R [u_xi]_R = 0
    A(7, U2p) = 1.0 - theta_i_ * r_ * sr_ * dp0;
    A(7, U2m) = -theta_i_ * r_ * sr_ * dpN;
    A(7, U3m) = theta_i_ * r_ * sb_ * dmN;
    A(7, U3p) = theta_i_ * r_ * sb_ * dm0;
    // Le [u_xi]_R + [w]_R = 0
    A(8, U3m) = le_ * sb_ * dmN;
    A(8, U3p) = le_ * sb_ * dm0;
    A(8, U2p) = -le_ * sr_ * dp0;
    A(8, U2m) = -le_ * sr_ * dpN;
    A(8, W3m) = 1.0; A(8, W2p) = -1.0;
    // Le [w]_R + [w_xi]_R = H7
    A(9, W3m) = le_ + sb_ * dmN;
    A(9, W3p) = sb_ * dm0;
    A(9, W2p) = -(le_ + sr_ * dp0);
    A(9, W2m) = -sr_ * dpN;

    lu_.compute(A);
    const double det = std::abs(lu_.determinant());
    if (!(det > 1e-300))
      throw numerical_error("interface system is singular (det ~ " +
                            std::to_string(det) + ")");
    matrix_ = A;
  }

  // Interior-weighted derivative sums entering the right-hand sides: each is
  // a row vector over y (or over modes).
  template <typename Mat>
  struct Sums {
    Mat u1_p, u2_m, u2_p, u3_m, w2_m, w2_p, w3_m;
  };

  // Solves the ten boundary values for every column of the field matrices
  // and writes them in place. h4/h7 may be empty (treated as zero).
  void apply(Eigen::MatrixXd& u1, Eigen::MatrixXd& u2, Eigen::MatrixXd& u3,
             Eigen::MatrixXd& w2, Eigen::MatrixXd& w3,
             const Eigen::RowVectorXd* h4 = nullptr,
             const Eigen::RowVectorXd* h7 = nullptr) const {
    const auto seg = [&](const Eigen::RowVectorXd& drow) {
      return drow.segment(1, n_ - 1);
    };
    const auto interior = [&](const Eigen::MatrixXd& f) {
      return f.middleRows(1, n_ - 1);
    };
    // weighted interior sums of d/dx rows at both ends
    Eigen::RowVectorXd su1_p = seg(drow_p_) * interior(u1);
    Eigen::RowVectorXd su2_m = seg(drow_m_) * interior(u2);
    Eigen::RowVectorXd su2_p = seg(drow_p_) * interior(u2);
    Eigen::RowVectorXd su3_m = seg(drow_m_) * interior(u3);
    Eigen::RowVectorXd sw2_m = seg(drow_m_) * interior(w2);
    Eigen::RowVectorXd sw2_p = seg(drow_p_) * interior(w2);
    Eigen::RowVectorXd sw3_m = seg(drow_m_) * interior(w3);

    const int cols = static_cast<int>(u1.cols());
    Eigen::Matrix<double, kNumSlots, Eigen::Dynamic> rhs(kNumSlots, cols);
    rhs.setZero();
    rhs.row(5) = -le_ * (sr_ * su2_m - sa_ * su1_p);
    rhs.row(6) = -sr_ * sw2_m;
    if (h4) rhs.row(6) += *h4;
    rhs.row(7) = -theta_i_ * r_ * (sb_ * su3_m - sr_ * su2_p);
    rhs.row(8) = -le_ * (sb_ * su3_m - sr_ * su2_p);
    rhs.row(9) = -(sb_ * sw3_m - sr_ * sw2_p);
    if (h7) rhs.row(9) += *h7;

    Eigen::Matrix<double, kNumSlots, Eigen::Dynamic> sol = lu_.solve(rhs);

    u1.row(0) = sol.row(U1p);
    u1.row(n_) = sol.row(U1m);
    u2.row(0) = sol.row(U2p);
    u2.row(n_) = sol.row(U2m);
    u3.row(0) = sol.row(U3p);
    u3.row(n_) = sol.row(U3m);
    w2.row(0) = sol.row(W2p);
    w2.row(n_) = sol.row(W2m);
    w3.row(0) = sol.row(W3p);
    w3.row(n_) = sol.row(W3m);
  }

  void apply(State& s, const Eigen::RowVectorXd* h4 = nullptr,
             const Eigen::RowVectorXd* h7 = nullptr) const {
    apply(s.u1, s.u2, s.u3, s.w2, s.w3, h4, h7);
  }

  // Residuals of the ten relations for every column; rows in the same order
  // as the assembled system. Used by tests and the state invariant check.
  Eigen::MatrixXd residuals(const State& s,
                            const Eigen::RowVectorXd* h4 = nullptr,
                            const Eigen::RowVectorXd* h7 = nullptr) const {
    const int cols = static_cast<int>(s.u1.cols());
    Eigen::MatrixXd res(kNumSlots, cols);
    Eigen::RowVectorXd du1_p = sa_ * (drow_p_ * s.u1);
    Eigen::RowVectorXd du2_m = sr_ * (drow_m_ * s.u2);
    Eigen::RowVectorXd du2_p = sr_ * (drow_p_ * s.u2);
    Eigen::RowVectorXd du3_m = sb_ * (drow_m_ * s.u3);
    Eigen::RowVectorXd dw2_m = sr_ * (drow_m_ * s.w2);
    Eigen::RowVectorXd dw2_p = sr_ * (drow_p_ * s.w2);
    Eigen::RowVectorXd dw3_m = sb_ * (drow_m_ * s.w3);

    res.row(0) = s.u1.row(n_);
    res.row(1) = s.u3.row(0);
    res.row(2) = s.w3.row(0);
    res.row(3) = s.u1.row(0) - s.u2.row(n_);
    res.row(4) = s.u3.row(n_) - s.u2.row(0);
    res.row(5) = le_ * (du2_m - du1_p) + s.w2.row(n_);
    res.row(6) = le_ * s.w2.row(n_) + dw2_m;
    if (h4) res.row(6) -= *h4;
    res.row(7) = s.u2.row(0) + theta_i_ * r_ * (du3_m - du2_p);
    res.row(8) = le_ * (du3_m - du2_p) + s.w3.row(n_) - s.w2.row(0);
    res.row(9) = le_ * (s.w3.row(n_) - s.w2.row(0)) + dw3_m - dw2_p;
    if (h7) res.row(9) -= *h7;
    return res;
  }

  const Eigen::Matrix<double, kNumSlots, kNumSlots>& matrix() const {
    return matrix_;
  }

private:
  int n_;
  double le_, theta_i_, r_, sa_, sr_, sb_;
  Eigen::RowVectorXd drow_p_, drow_m_;
  Eigen::Matrix<double, kNumSlots, kNumSlots> matrix_;
  Eigen::PartialPivLU<Eigen::Matrix<double, kNumSlots, kNumSlots>> lu_;
};

}  // namespace thickflame

#endif

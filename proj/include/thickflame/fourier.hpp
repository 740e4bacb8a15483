#ifndef THICKFLAME_FOURIER_HPP
#define THICKFLAME_FOURIER_HPP

#include <fftw3.h>

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "thickflame/errors.hpp"

namespace thickflame {

// Discrete Fourier transform machinery on the uniform grid y_j = 2 pi j / n,
// with the convention u(y) = sum_k u_hat_k e^{i k y}. Real fields are stored
// through the half spectrum k = 0..n/2 (conjugate symmetry); the Nyquist
// coefficient is treated as real and is annihilated by odd derivatives.
//
// Owns its FFTW plans and scratch buffers; not safe for concurrent use of a
// single instance.
class FourierTransform {
public:
  explicit FourierTransform(int n) : n_(n), nh_(n / 2 + 1) {
    if (n < 4 || n % 2 != 0)
      throw validation_error("FourierTransform: n_y must be even and >= 4");
    real_ = fftw_alloc_real(n_);
    cplx_ = fftw_alloc_complex(nh_);
    plan_r2c_ = fftw_plan_dft_r2c_1d(n_, real_, cplx_, FFTW_ESTIMATE);
    plan_c2r_ = fftw_plan_dft_c2r_1d(n_, cplx_, real_, FFTW_ESTIMATE);
    zin_ = fftw_alloc_complex(n_);
    zout_ = fftw_alloc_complex(n_);
    plan_fwd_ = fftw_plan_dft_1d(n_, zin_, zout_, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(n_, zin_, zout_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~FourierTransform() {
    fftw_destroy_plan(plan_r2c_);
    fftw_destroy_plan(plan_c2r_);
    fftw_destroy_plan(plan_fwd_);
    fftw_destroy_plan(plan_bwd_);
    fftw_free(real_);
    fftw_free(cplx_);
    fftw_free(zin_);
    fftw_free(zout_);
    release_batch();
  }

  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  int size() const { return n_; }
  int half_size() const { return nh_; }

  double y_node(int j) const { return 2.0 * M_PI * j / n_; }

  // wavenumber of slot i in full-spectrum (FFTW) ordering: 0..n/2-1, -n/2..-1
  int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }

  // real field -> half spectrum, normalized so that coefficients are the
  // u_hat_k of the expansion above
  Eigen::VectorXcd to_modes(const Eigen::Ref<const Eigen::VectorXd>& u) {
    check_len(u.size());
    for (int j = 0; j < n_; ++j) real_[j] = u[j];
    fftw_execute(plan_r2c_);
    Eigen::VectorXcd out(nh_);
    for (int k = 0; k < nh_; ++k)
      out[k] = std::complex<double>(cplx_[k][0], cplx_[k][1]) / double(n_);
    return out;
  }

  Eigen::VectorXd from_modes(const Eigen::Ref<const Eigen::VectorXcd>& uh) {
    if (uh.size() != nh_)
      throw validation_error("from_modes: coefficient length mismatch");
    for (int k = 0; k < nh_; ++k) {
      cplx_[k][0] = uh[k].real();
      cplx_[k][1] = uh[k].imag();
    }
    fftw_execute(plan_c2r_);
    Eigen::VectorXd out(n_);
    for (int j = 0; j < n_; ++j) out[j] = real_[j];
    return out;
  }

  // full complex spectrum (FFTW ordering), normalized the same way
  Eigen::VectorXcd to_modes_full(const Eigen::Ref<const Eigen::VectorXcd>& u) {
    check_len(u.size());
    for (int j = 0; j < n_; ++j) {
      zin_[j][0] = u[j].real();
      zin_[j][1] = u[j].imag();
    }
    fftw_execute(plan_fwd_);
    Eigen::VectorXcd out(n_);
    for (int k = 0; k < n_; ++k)
      out[k] = std::complex<double>(zout_[k][0], zout_[k][1]) / double(n_);
    return out;
  }

  Eigen::VectorXcd from_modes_full(const Eigen::Ref<const Eigen::VectorXcd>& uh) {
    check_len(uh.size());
    for (int k = 0; k < n_; ++k) {
      zin_[k][0] = uh[k].real();
      zin_[k][1] = uh[k].imag();
    }
    fftw_execute(plan_bwd_);
    Eigen::VectorXcd out(n_);
    for (int j = 0; j < n_; ++j)
      out[j] = std::complex<double>(zout_[j][0], zout_[j][1]);
    return out;
  }

  // d/dy of a real field; the Nyquist mode maps to zero
  Eigen::VectorXd dy(const Eigen::Ref<const Eigen::VectorXd>& u) {
    Eigen::VectorXcd uh = to_modes(u);
    for (int k = 0; k < nh_; ++k) {
      const double kk = (k == n_ / 2) ? 0.0 : double(k);
      uh[k] *= std::complex<double>(0.0, kk);
    }
    return from_modes(uh);
  }

  // d2/dy2 of a real field
  Eigen::VectorXd dyy(const Eigen::Ref<const Eigen::VectorXd>& u) {
    Eigen::VectorXcd uh = to_modes(u);
    for (int k = 0; k < nh_; ++k) uh[k] *= -double(k) * double(k);
    return from_modes(uh);
  }

  // rows of M are x-lines; applies dy / dyy along each row
  Eigen::MatrixXd dy_rows(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) out.row(i) = dy(m.row(i).transpose());
    return out;
  }

  Eigen::MatrixXd dyy_rows(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) out.row(i) = dyy(m.row(i).transpose());
    return out;
  }

  // both derivatives of every row with one batched transform set; plans and
  // buffers are cached for the row count of the first call
  void dy_dyy_rows(const Eigen::Ref<const Eigen::MatrixXd>& m,
                   Eigen::MatrixXd& out_dy, Eigen::MatrixXd& out_dyy) {
    check_len(m.cols());
    const int rows = static_cast<int>(m.rows());
    ensure_batch(rows);
    out_dy.resize(rows, n_);
    out_dyy.resize(rows, n_);

    std::copy(m.data(), m.data() + rows * n_, breal_);
    fftw_execute(plan_many_r2c_);
    // spectra live column-major as (rows x nh); scale and transform back
    const double inv = 1.0 / n_;
    for (int k = 0; k < nh_; ++k) {
      const double kk = (k == n_ / 2) ? 0.0 : double(k);
      const double k2 = -double(k) * double(k) * inv;
      for (int i = 0; i < rows; ++i) {
        const auto& c = bcplx_[i + k * rows];
        bc1_[i + k * rows][0] = -kk * c[1] * inv;
        bc1_[i + k * rows][1] = kk * c[0] * inv;
        bc2_[i + k * rows][0] = k2 * c[0];
        bc2_[i + k * rows][1] = k2 * c[1];
      }
    }
    fftw_execute(plan_many_c2r_1_);
    std::copy(breal_, breal_ + rows * n_, out_dy.data());
    fftw_execute(plan_many_c2r_2_);
    std::copy(breal_, breal_ + rows * n_, out_dyy.data());
  }

private:
  void check_len(Eigen::Index len) const {
    if (len != n_) throw validation_error("fourier transform: length mismatch");
  }

  // batched row-transform machinery: the matrix is column-major with the
  // transform direction along rows, so strides are the row count
  void ensure_batch(int rows) {
    if (rows == batch_rows_) return;
    release_batch();
    batch_rows_ = rows;
    breal_ = fftw_alloc_real(static_cast<size_t>(rows) * n_);
    bcplx_ = fftw_alloc_complex(static_cast<size_t>(rows) * nh_);
    bc1_ = fftw_alloc_complex(static_cast<size_t>(rows) * nh_);
    bc2_ = fftw_alloc_complex(static_cast<size_t>(rows) * nh_);
    plan_many_r2c_ = fftw_plan_many_dft_r2c(1, &n_, rows, breal_, nullptr,
                                            rows, 1, bcplx_, nullptr, rows, 1,
                                            FFTW_ESTIMATE);
    plan_many_c2r_1_ = fftw_plan_many_dft_c2r(1, &n_, rows, bc1_, nullptr,
                                              rows, 1, breal_, nullptr, rows,
                                              1, FFTW_ESTIMATE);
    plan_many_c2r_2_ = fftw_plan_many_dft_c2r(1, &n_, rows, bc2_, nullptr,
                                              rows, 1, breal_, nullptr, rows,
                                              1, FFTW_ESTIMATE);
  }

  void release_batch() {
    if (batch_rows_ == 0) return;
    fftw_destroy_plan(plan_many_r2c_);
    fftw_destroy_plan(plan_many_c2r_1_);
    fftw_destroy_plan(plan_many_c2r_2_);
    fftw_free(breal_);
    fftw_free(bcplx_);
    fftw_free(bc1_);
    fftw_free(bc2_);
    batch_rows_ = 0;
  }

  int n_, nh_;
  double* real_;
  fftw_complex* cplx_;
  fftw_complex* zin_;
  fftw_complex* zout_;
  fftw_plan plan_r2c_, plan_c2r_, plan_fwd_, plan_bwd_;
  int batch_rows_ = 0;
  double* breal_ = nullptr;
  fftw_complex* bcplx_ = nullptr;
  fftw_complex* bc1_ = nullptr;
  fftw_complex* bc2_ = nullptr;
  fftw_plan plan_many_r2c_{}, plan_many_c2r_1_{}, plan_many_c2r_2_{};
};

}  // namespace thickflame

#endif

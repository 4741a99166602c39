#include "vps/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace vps {

struct SpectralBox::Impl {
  double L;
  int n;
  std::size_t nreal, ncplx;
  double* real;
  fftw_complex* cplx;
  fftw_plan fwd, bwd;
  std::vector<double> k, k2;  // derivative and Laplacian wavenumbers per index

  Impl(double L_, int n_) : L(L_), n(n_) {
    nreal = static_cast<std::size_t>(n) * n * n;
    ncplx = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    real = fftw_alloc_real(nreal);
    cplx = fftw_alloc_complex(ncplx);
    if (!real || !cplx) throw std::bad_alloc();
    fwd = fftw_plan_dft_r2c_3d(n, n, n, real, cplx, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_3d(n, n, n, cplx, real, FFTW_ESTIMATE);
    if (!fwd || !bwd) throw std::runtime_error("SpectralBox: FFTW planning failed");
    k.resize(n);
    k2.resize(n);
    const double dk = 2.0 * M_PI / L;
    for (int i = 0; i < n; ++i) {
      const int f = (i <= n / 2) ? i : i - n;
      k2[i] = (dk * f) * (dk * f);
      // first derivatives drop the (sign-ambiguous) Nyquist mode
      k[i] = (2 * i == n) ? 0.0 : dk * f;
    }
  }
  ~Impl() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real);
    fftw_free(cplx);
  }

  void check(const ScalarField& f) const {
    if (f.n != n || f.box_size != L)
      throw std::invalid_argument("SpectralBox: field grid does not match the planned grid");
  }
  void forward(const ScalarField& src) {
    check(src);
    std::memcpy(real, src.values.data(), nreal * sizeof(double));
    fftw_execute(fwd);
  }
  void backward(ScalarField& dst) {
    fftw_execute(bwd);
    const double scale = 1.0 / static_cast<double>(nreal);
    dst.values.resize(nreal);
    for (std::size_t i = 0; i < nreal; ++i) dst.values[i] = real[i] * scale;
  }
};

SpectralBox::SpectralBox(double box_size, int n) {
  if (!(box_size > 0.0) || n < 2) throw std::invalid_argument("SpectralBox: need L > 0, n >= 2");
  impl_ = std::make_unique<Impl>(box_size, n);
}

SpectralBox::~SpectralBox() = default;

double SpectralBox::box_size() const { return impl_->L; }
int SpectralBox::n() const { return impl_->n; }

ScalarField SpectralBox::solve_helmholtz(double sigma, const ScalarField& rhs) const {
  if (!(sigma > 0.0)) throw std::invalid_argument("solve_helmholtz: sigma must be positive");
  auto& im = *impl_;
  im.forward(rhs);
  const int n = im.n, nc = n / 2 + 1;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < nc; ++kk, ++idx) {
        const double f = 1.0 / (sigma + im.k2[i] + im.k2[j] + im.k2[kk]);
        im.cplx[idx][0] *= f;
        im.cplx[idx][1] *= f;
      }
  ScalarField out = ScalarField::zeros(im.L, n);
  im.backward(out);
  return out;
}

ScalarField SpectralBox::solve_poisson_zero_mean(const ScalarField& rhs, double* removed_mean) const {
  auto& im = *impl_;
  im.forward(rhs);
  if (removed_mean) *removed_mean = im.cplx[0][0] / static_cast<double>(im.nreal);
  const int n = im.n, nc = n / 2 + 1;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < nc; ++kk, ++idx) {
        const double k2 = im.k2[i] + im.k2[j] + im.k2[kk];
        const double f = (k2 > 0.0) ? 1.0 / k2 : 0.0;  // zero mode removed
        im.cplx[idx][0] *= f;
        im.cplx[idx][1] *= f;
      }
  ScalarField out = ScalarField::zeros(im.L, n);
  im.backward(out);
  return out;
}

ScalarField SpectralBox::apply_helmholtz(double sigma, const ScalarField& u) const {
  auto& im = *impl_;
  im.forward(u);
  const int n = im.n, nc = n / 2 + 1;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < nc; ++kk, ++idx) {
        const double f = sigma + im.k2[i] + im.k2[j] + im.k2[kk];
        im.cplx[idx][0] *= f;
        im.cplx[idx][1] *= f;
      }
  ScalarField out = ScalarField::zeros(im.L, n);
  im.backward(out);
  return out;
}

std::array<ScalarField, 3> SpectralBox::gradient(const ScalarField& u) const {
  auto& im = *impl_;
  const int n = im.n, nc = n / 2 + 1;
  std::array<ScalarField, 3> out;
  std::vector<fftw_complex> hat(im.ncplx);
  im.forward(u);
  std::memcpy(hat.data(), im.cplx, im.ncplx * sizeof(fftw_complex));
  for (int d = 0; d < 3; ++d) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int kk = 0; kk < nc; ++kk, ++idx) {
          const double kd = (d == 0) ? im.k[i] : (d == 1) ? im.k[j] : im.k[kk];
          // multiply by i*kd
          im.cplx[idx][0] = -kd * hat[idx][1];
          im.cplx[idx][1] = kd * hat[idx][0];
        }
    out[d] = ScalarField::zeros(im.L, n);
    im.backward(out[d]);
  }
  return out;
}

}  // namespace vps

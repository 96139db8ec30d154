#include "rcl/series.hpp"

#include <fftw3.h>

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rcl::series {
namespace {

// One cached r2c/c2r plan pair per transform size. FFTW planning is not
// thread safe, and executing a plan on its original buffers isn't either,
// so the whole engine runs under a single lock. Buffers come from
// fftw_malloc so alignment (and thus the chosen codelets) is stable across
// runs, keeping results bit-reproducible.
class FftEngine {
 public:
  static FftEngine& instance() {
    static FftEngine e;
    return e;
  }

  // out = a (*) b, full linear convolution truncated to cap coefficients.
  std::vector<double> convolve(std::span<const double> a,
                               std::span<const double> b, std::size_t cap) {
    const std::size_t full = a.size() + b.size() - 1;
    const std::size_t want = std::min(full, cap);
    std::size_t n = 1;
    while (n < full) n <<= 1;

    std::lock_guard<std::mutex> lock(mu_);
    Plan& plan = plan_for(n);

    std::memcpy(plan.real, a.data(), a.size() * sizeof(double));
    std::memset(plan.real + a.size(), 0, (n - a.size()) * sizeof(double));
    fftw_execute_dft_r2c(plan.fwd, plan.real, plan.spec);
    std::memcpy(plan.spec2, plan.spec, (n / 2 + 1) * sizeof(fftw_complex));

    std::memcpy(plan.real, b.data(), b.size() * sizeof(double));
    std::memset(plan.real + b.size(), 0, (n - b.size()) * sizeof(double));
    fftw_execute_dft_r2c(plan.fwd, plan.real, plan.spec);

    const double scale = 1.0 / static_cast<double>(n);
    auto* x = reinterpret_cast<std::complex<double>*>(plan.spec);
    auto* y = reinterpret_cast<std::complex<double>*>(plan.spec2);
    for (std::size_t i = 0; i <= n / 2; ++i) x[i] *= y[i] * scale;

    fftw_execute_dft_c2r(plan.bwd, plan.spec, plan.real);
    return std::vector<double>(plan.real, plan.real + want);
  }

 private:
  struct Plan {
    fftw_plan fwd = nullptr, bwd = nullptr;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_complex* spec2 = nullptr;
  };

  Plan& plan_for(std::size_t n) {
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    Plan p;
    p.real = fftw_alloc_real(n);
    p.spec = fftw_alloc_complex(n / 2 + 1);
    p.spec2 = fftw_alloc_complex(n / 2 + 1);
    p.fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), p.real, p.spec,
                                 FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), p.spec, p.real,
                                 FFTW_ESTIMATE);
    return plans_.emplace(n, p).first->second;
  }

  std::mutex mu_;
  std::map<std::size_t, Plan> plans_;
};

std::vector<double> multiply_schoolbook(std::span<const double> a,
                                        std::span<const double> b,
                                        std::size_t cap) {
  const std::size_t want = std::min(a.size() + b.size() - 1, cap);
  std::vector<double> out(want, 0.0);
  for (std::size_t i = 0; i < a.size() && i < want; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    const std::size_t jmax = std::min(b.size(), want - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += ai * b[j];
  }
  return out;
}

std::span<const double> trimmed(std::span<const double> a) {
  std::size_t n = a.size();
  while (n > 0 && a[n - 1] == 0.0) --n;
  return a.first(n);
}

}  // namespace

std::vector<double> multiply(std::span<const double> a,
                             std::span<const double> b, std::size_t cap) {
  if (cap == 0) return {};
  a = a.subspan(0, std::min(a.size(), cap));
  b = b.subspan(0, std::min(b.size(), cap));
  a = trimmed(a);
  b = trimmed(b);
  if (a.empty() || b.empty()) return std::vector<double>(1, 0.0);
  // Schoolbook wins below ~64k scalar ops.
  if (a.size() * b.size() <= (1u << 16))
    return multiply_schoolbook(a, b, cap);
  return FftEngine::instance().convolve(a, b, cap);
}

std::vector<double> inverse(std::span<const double> a, std::size_t n) {
  if (n == 0) return {};
  if (a.empty() || a[0] == 0.0)
    throw std::invalid_argument("series::inverse: constant term is zero");
  std::vector<double> v{1.0 / a[0]};
  std::size_t k = 1;
  while (k < n) {
    k = std::min(2 * k, n);
    // v <- v * (2 - a v) mod s^k
    std::vector<double> av = multiply(a.subspan(0, std::min(a.size(), k)), v, k);
    for (double& x : av) x = -x;
    av[0] += 2.0;
    v = multiply(v, av, k);
  }
  v.resize(n, 0.0);
  return v;
}

std::vector<double> compose(std::span<const double> outer,
                            std::span<const double> inner, std::size_t cap) {
  if (cap == 0) return {};
  if (!inner.empty() && inner[0] != 0.0)
    throw std::invalid_argument("series::compose: inner constant term must be 0");
  outer = outer.subspan(0, std::min(outer.size(), cap));
  std::vector<double> result(cap, 0.0);
  if (outer.empty()) return result;
  if (outer.size() == 1 || trimmed(inner).empty()) {
    result[0] = outer[0];
    return result;
  }

  const std::size_t la = outer.size();
  const std::size_t m = static_cast<std::size_t>(std::ceil(std::sqrt(
      static_cast<double>(la))));
  const std::size_t groups = (la + m - 1) / m;

  // Baby steps: rows of Z are inner^0 .. inner^{m-1}, each cap wide.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> Z(
      static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(cap));
  Z.setZero();
  Z(0, 0) = 1.0;
  std::vector<double> pw{1.0};
  for (std::size_t j = 1; j < m; ++j) {
    pw = multiply(pw, inner, cap);
    for (std::size_t i = 0; i < pw.size(); ++i)
      Z(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = pw[i];
  }
  std::vector<double> giant = multiply(pw, inner, cap);  // inner^m

  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> A(
      static_cast<Eigen::Index>(groups), static_cast<Eigen::Index>(m));
  A.setZero();
  for (std::size_t i = 0; i < groups; ++i)
    for (std::size_t j = 0; j < m && i * m + j < la; ++j)
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          outer[i * m + j];

  // G_i(s) = sum_j outer[i*m+j] inner^j; one dense product does them all.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> G =
      A * Z;

  // Horner over giant steps: R = (..(G_{g-1} B + G_{g-2}) B + ..) + G_0.
  std::vector<double> r(cap, 0.0);
  for (std::size_t i = 0; i < cap; ++i)
    r[i] = G(static_cast<Eigen::Index>(groups - 1), static_cast<Eigen::Index>(i));
  for (std::size_t i = groups; i-- > 1;) {
    r = multiply(r, giant, cap);
    r.resize(cap, 0.0);
    for (std::size_t j = 0; j < cap; ++j)
      r[j] += G(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j));
  }
  return r;
}

double evaluate(std::span<const double> a, double x) {
  double acc = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

}  // namespace rcl::series

#include "tumorbim/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "tumorbim/error.hpp"

namespace tumorbim {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW planning is not thread safe; execution with the new-array interface is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  const PlanPair& get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    auto* scratch_in = fftw_alloc_complex(n);
    auto* scratch_out = fftw_alloc_complex(n);
    const int size = static_cast<int>(n);
    PlanPair pair;
    pair.forward = fftw_plan_dft_1d(size, scratch_in, scratch_out, FFTW_FORWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
    pair.backward = fftw_plan_dft_1d(size, scratch_in, scratch_out, FFTW_BACKWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch_in);
    fftw_free(scratch_out);
    return plans_.emplace(n, pair).first->second;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [n, pair] : plans_) {
      fftw_destroy_plan(pair.forward);
      fftw_destroy_plan(pair.backward);
    }
  }

  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace

long wavenumber(std::size_t j, std::size_t n) {
  return j <= n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

Spectrum fft(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw DomainError("fft: empty input");
  Spectrum in(values.begin(), values.end());
  Spectrum out(n);
  fftw_execute_dft(PlanCache::instance().get(n).forward, as_fftw(in.data()),
                   as_fftw(out.data()));
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<double> ifft(const Spectrum& coeffs) {
  const std::size_t n = coeffs.size();
  if (n == 0) throw DomainError("ifft: empty input");
  Spectrum in = coeffs;
  Spectrum out(n);
  fftw_execute_dft(PlanCache::instance().get(n).backward, as_fftw(in.data()),
                   as_fftw(out.data()));
  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j) values[j] = out[j].real();
  return values;
}

Spectrum derivative(const Spectrum& coeffs, int order) {
  const std::size_t n = coeffs.size();
  Spectrum out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (n % 2 == 0 && j == n / 2) continue;
    const std::complex<double> ik(0.0, static_cast<double>(wavenumber(j, n)));
    out[j] = coeffs[j] * std::pow(ik, order);
  }
  return out;
}

std::vector<double> spectral_derivative(std::span<const double> values, int order) {
  return ifft(derivative(fft(values), order));
}

Spectrum hilbert(const Spectrum& coeffs) {
  const std::size_t n = coeffs.size();
  Spectrum out(n);
  for (std::size_t j = 1; j < n; ++j) {
    if (n % 2 == 0 && j == n / 2) continue;
    const double sign = wavenumber(j, n) > 0 ? 1.0 : -1.0;
    out[j] = std::complex<double>(0.0, -sign) * coeffs[j];
  }
  return out;
}

Spectrum fourier_filter(const Spectrum& coeffs, const FilterParams& params) {
  const std::size_t n = coeffs.size();
  const double half = 0.5 * static_cast<double>(n);
  Spectrum out(coeffs);
  for (std::size_t j = 0; j < n; ++j) {
    const double ratio = std::abs(static_cast<double>(wavenumber(j, n))) / half;
    out[j] *= std::exp(-params.strength * std::pow(ratio, params.order));
  }
  return out;
}

Spectrum krasny_filter(const Spectrum& coeffs, double threshold) {
  Spectrum out(coeffs);
  for (auto& c : out) {
    if (std::abs(c) < threshold) c = 0.0;
  }
  return out;
}

std::vector<double> mean_free_antiderivative(std::span<const double> values) {
  const std::size_t n = values.size();
  Spectrum c = fft(values);
  Spectrum anti(n);
  for (std::size_t j = 1; j < n; ++j) {
    if (n % 2 == 0 && j == n / 2) continue;
    anti[j] = c[j] / std::complex<double>(0.0, static_cast<double>(wavenumber(j, n)));
  }
  std::vector<double> p = ifft(anti);
  const double p0 = p[0];
  for (auto& v : p) v -= p0;
  return p;
}

double fourier_eval(const Spectrum& coeffs, double alpha) {
  const std::size_t n = coeffs.size();
  const std::size_t top = (n - 1) / 2;  // highest k with a conjugate partner
  const std::complex<double> step = std::polar(1.0, alpha);
  std::complex<double> rot = 1.0;
  double sum = coeffs[0].real();
  for (std::size_t k = 1; k <= top; ++k) {
    // Reseed the rotation now and then so rounding does not build up.
    rot = (k % 64 == 0) ? std::polar(1.0, static_cast<double>(k) * alpha) : rot * step;
    sum += 2.0 * (coeffs[k] * rot).real();
  }
  if (n % 2 == 0 && n >= 2) {
    sum += coeffs[n / 2].real() * std::cos(0.5 * static_cast<double>(n) * alpha);
  }
  return sum;
}

Spectrum resample(const Spectrum& coeffs, std::size_t m) {
  const std::size_t n = coeffs.size();
  Spectrum out(m);
  if (m >= n) {
    for (std::size_t j = 0; j < n; ++j) {
      const long k = wavenumber(j, n);
      if (n % 2 == 0 && j == n / 2 && m > n) {
        out[n / 2] += 0.5 * coeffs[j];
        out[m - n / 2] += 0.5 * coeffs[j];
        continue;
      }
      out[k >= 0 ? static_cast<std::size_t>(k) : m - static_cast<std::size_t>(-k)] += coeffs[j];
    }
    return out;
  }
  for (std::size_t j = 0; j < m; ++j) {
    const long k = wavenumber(j, m);
    const std::size_t src = k >= 0 ? static_cast<std::size_t>(k) : n - static_cast<std::size_t>(-k);
    out[j] = coeffs[src];
  }
  return out;
}

double periodic_mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace tumorbim

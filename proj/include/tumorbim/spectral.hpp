#pragma once

// Fourier tools for real 2*pi-periodic grid functions sampled at
// alpha_j = 2*pi*j/N. Coefficients are normalized, c_k = (1/N) sum_j f_j e^{-ik alpha_j},
// and stored in standard FFT order (k = 0..N/2, then -N/2+1..-1). The Nyquist
// slot (j = N/2) carries wavenumber N/2 for even symbols and is dropped by odd
// operations (derivatives of odd order, Hilbert transform).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tumorbim {

using Spectrum = std::vector<std::complex<double>>;

/// Signed wavenumber stored in slot j of an N-point spectrum.
long wavenumber(std::size_t j, std::size_t n);

bool is_power_of_two(std::size_t n);

Spectrum fft(std::span<const double> values);
std::vector<double> ifft(const Spectrum& coeffs);

/// Multiply by (ik)^order. Nyquist coefficient zeroed.
Spectrum derivative(const Spectrum& coeffs, int order = 1);
std::vector<double> spectral_derivative(std::span<const double> values, int order = 1);

/// Periodic Hilbert transform, symbol -i sgn(k); mean and Nyquist modes map to 0.
Spectrum hilbert(const Spectrum& coeffs);

/// Exponential filter exp(-strength (|k|/(N/2))^order).
struct FilterParams {
  double strength = 10.0;
  int order = 25;
};
Spectrum fourier_filter(const Spectrum& coeffs, const FilterParams& params = {});

inline constexpr double kDefaultKrasnyThreshold = 1e-13;

/// Zero every coefficient whose modulus is below threshold.
Spectrum krasny_filter(const Spectrum& coeffs,
                       double threshold = kDefaultKrasnyThreshold);

/// Grid values of int_0^alpha (f - mean f) d alpha', by spectral antiderivative.
std::vector<double> mean_free_antiderivative(std::span<const double> values);

/// Trigonometric interpolant of the spectrum at an arbitrary alpha.
double fourier_eval(const Spectrum& coeffs, double alpha);

/// Zero-pad (or truncate) a spectrum to m points, splitting the Nyquist
/// coefficient symmetrically so the interpolant is unchanged.
Spectrum resample(const Spectrum& coeffs, std::size_t m);

/// Grid mean, i.e. (1/2pi) times the trapezoid integral over a period.
double periodic_mean(std::span<const double> values);

}  // namespace tumorbim

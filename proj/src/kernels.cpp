#include "twoctl/kernels.hpp"

#include <cmath>
#include <complex>
#include <exception>

namespace twoctl::kernels {

std::vector<double> magnitude_on_grid(const RationalFunction& tf, std::span<const double> omegas,
                                      Exec exec) {
  const auto n = static_cast<std::ptrdiff_t>(omegas.size());
  std::vector<double> out(omegas.size());
  const auto body = [&](std::ptrdiff_t i) {
    const std::complex<double> s(0.0, omegas[i]);
    out[i] = std::abs(tf.num()(s)) / std::abs(tf.den()(s));
  };
  if (exec == Exec::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  }
  return out;
}

std::vector<double> log_magnitude_on_grid(const RationalFunction& tf, std::span<const double> omegas,
                                          Exec exec) {
  auto out = magnitude_on_grid(tf, omegas, exec);
  for (double& v : out) v = std::log(v);
  return out;
}

double static_gain_abscissa(const RationalFunction& plant, double k, double well_posed) {
  const Polynomial closed = plant.den() + k * plant.num();
  if (closed.degree() < plant.den().degree()) return HUGE_VAL;
  if (std::abs(closed.leading() / plant.den().leading()) < well_posed) return HUGE_VAL;
  return closed.degree() == 0 ? -HUGE_VAL : spectral_abscissa(closed);
}

std::vector<double> static_gain_abscissae(const RationalFunction& plant, std::span<const double> gains,
                                          Exec exec) {
  const auto n = static_cast<std::ptrdiff_t>(gains.size());
  std::vector<double> out(gains.size());
  const auto body = [&](std::ptrdiff_t i) {
    try {
      out[i] = static_gain_abscissa(plant, gains[i]);
    } catch (const std::exception&) {
      out[i] = std::nan("");
    }
  };
  if (exec == Exec::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  }
  return out;
}

std::size_t first_argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best] || std::isnan(values[best])) best = i;
  return best;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace twoctl::kernels

#pragma once

// Data-parallel inner loops. Each kernel has a serial reference path and an
// OpenMP path; both write element i from input i alone, so their outputs
// are bit-identical and any reduction over them is done serially afterwards.

#include <cstddef>
#include <span>
#include <vector>

#include "twoctl/rational.hpp"

namespace twoctl::kernels {

enum class Exec { serial, parallel };

/// |tf(j w)| for every w in `omegas`.
std::vector<double> magnitude_on_grid(const RationalFunction& tf, std::span<const double> omegas,
                                      Exec exec = Exec::parallel);

/// Spectral abscissa of den(P) + k num(P); +inf when the loop is ill-posed,
/// i.e. the leading coefficient drops below `well_posed` times that of
/// den(P) (equivalently |1 + k P(inf)| < well_posed).
double static_gain_abscissa(const RationalFunction& plant, double k, double well_posed = 1e-6);

/// static_gain_abscissa for every gain k.
std::vector<double> static_gain_abscissae(const RationalFunction& plant, std::span<const double> gains,
                                          Exec exec = Exec::parallel);

/// ln|tf(j w)| at every w; -inf where tf vanishes.
std::vector<double> log_magnitude_on_grid(const RationalFunction& tf, std::span<const double> omegas,
                                          Exec exec = Exec::parallel);

/// Index of the first maximum (NaN never wins); values must be non-empty.
std::size_t first_argmax(std::span<const double> values);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace twoctl::kernels

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rcl::series {

// Truncated power-series arithmetic on double coefficient vectors. Index i
// holds the coefficient of s^i. All results are truncated to `cap`
// coefficients. Large products go through FFTW; small ones are schoolbook.

// c = a * b, first cap coefficients.
std::vector<double> multiply(std::span<const double> a, std::span<const double> b,
                             std::size_t cap);

// v = 1 / a mod s^n by Newton iteration; requires a[0] != 0.
std::vector<double> inverse(std::span<const double> a, std::size_t n);

// c = outer(inner(s)) mod s^cap by Brent-Kung baby-step/giant-step;
// requires inner[0] == 0.
std::vector<double> compose(std::span<const double> outer,
                            std::span<const double> inner, std::size_t cap);

// Horner evaluation of sum_i a[i] x^i.
double evaluate(std::span<const double> a, double x);

}  // namespace rcl::series

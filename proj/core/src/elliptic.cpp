#include "lindblad/elliptic.hpp"

#include <cmath>
#include <stdexcept>

namespace lindblad {

namespace {

constexpr int kAgmMaxIter = 200;

struct AgmResult {
  Complex mean;        // common limit of the two sequences
  Complex c_sum;       // sum_{j>=0} 2^{j-1} c_j^2 with c_0^2 = m
};

// Arithmetic-geometric mean of (1, sqrt(1-m)) with principal square
// roots; the sign of each geometric mean is chosen to keep |a - g| <=
// |a + g|, which selects the principal branch for m off [1, inf).
AgmResult agm(Complex m) {
  Complex a(1.0, 0.0);
  Complex g = std::sqrt(Complex(1.0, 0.0) - m);
  Complex c_sum = 0.5 * m;  // j = 0 term: 2^{-1} c_0^2
  double pow2 = 1.0;        // 2^{j-1} for the term added at each step
  for (int iter = 0; iter < kAgmMaxIter; ++iter) {
    const Complex c = 0.5 * (a - g);  // c_{iter+1}
    c_sum += pow2 * c * c;
    // AGM converges quadratically, so |c| falls through any relative
    // threshold; 4 eps leaves the doubling weight no time to amplify
    // roundoff.
    if (std::abs(c) <= 1e-15 * std::abs(a)) break;
    const Complex a_next = 0.5 * (a + g);
    Complex g_next = std::sqrt(a * g);
    if (std::abs(a_next - g_next) > std::abs(a_next + g_next)) g_next = -g_next;
    a = a_next;
    g = g_next;
    pow2 *= 2.0;
  }
  return {a, c_sum};
}

}  // namespace

Complex elliptic_K(Complex m) {
  if (m == Complex(1.0, 0.0))
    throw std::domain_error("elliptic_K: pole at m = 1");
  return M_PI / (2.0 * agm(m).mean);
}

Complex elliptic_E(Complex m) {
  if (m == Complex(1.0, 0.0)) return Complex(1.0, 0.0);
  const AgmResult r = agm(m);
  return M_PI / (2.0 * r.mean) * (Complex(1.0, 0.0) - r.c_sum);
}

double elliptic_K(double m) { return elliptic_K(Complex(m, 0.0)).real(); }
double elliptic_E(double m) { return elliptic_E(Complex(m, 0.0)).real(); }

namespace {

using LComplex = std::complex<long double>;

// Gamma(n/2 + 1) for the Maclaurin series of w.
long double half_gamma(int n) {
  static long double table[256];
  static bool ready = false;
  if (!ready) {
    table[0] = 1.0L;                                   // Gamma(1)
    table[1] = 0.88622692545275801364908374167057L;    // Gamma(3/2)
    for (int k = 2; k < 256; ++k)
      table[k] = (0.5L * k) * table[k - 2];
    ready = true;
  }
  return table[n];
}

// Maclaurin series w(z) = sum (iz)^n / Gamma(n/2 + 1), extended
// precision to absorb the cancellation near |z| = 4.
Complex faddeeva_series(Complex z) {
  const LComplex iz(-static_cast<long double>(z.imag()),
                    static_cast<long double>(z.real()));
  LComplex term(1.0L, 0.0L);
  LComplex sum(1.0L, 0.0L);
  LComplex power = iz;
  for (int n = 1; n < 250; ++n) {
    term = power / half_gamma(n);
    sum += term;
    power *= iz;
    if (std::abs(term) < 1e-22L * std::abs(sum) && n > 8) break;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Laplace continued fraction, adequate for |z| >= 4 with Im z >= 0.
Complex faddeeva_cf(Complex z) {
  constexpr int depth = 64;
  Complex t(0.0, 0.0);
  for (int k = depth; k >= 1; --k) t = (0.5 * k) / (z - t);
  const Complex inv_sqrt_pi(0.5641895835477562869480794515608, 0.0);
  return Complex(0.0, 1.0) * inv_sqrt_pi / (z - t);
}

}  // namespace

Complex faddeeva_w(Complex z) {
  if (z.imag() < 0.0) {
    // w(z) = 2 exp(-z^2) - w(-z); the reflection can overflow for large
    // |Im z|, which is outside this library's use.
    return 2.0 * std::exp(-z * z) - faddeeva_w(-z);
  }
  return std::abs(z) < 4.0 ? faddeeva_series(z) : faddeeva_cf(z);
}

Complex erfi(Complex z) {
  // erfi(z) = -i erf(iz); erf via erf(q) = 1 - exp(-q^2) w(iq), Re q >= 0.
  const Complex q = Complex(0.0, 1.0) * z;
  const bool flip = q.real() < 0.0;
  const Complex qr = flip ? -q : q;
  const Complex erf_qr = 1.0 - std::exp(-qr * qr) * faddeeva_w(Complex(0.0, 1.0) * qr);
  const Complex erf_q = flip ? -erf_qr : erf_qr;
  return Complex(0.0, -1.0) * erf_q;
}

}  // namespace lindblad

#include "regge/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "regge/errors.hpp"

namespace regge::specfun {

namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Neumaier summation, one accumulator per component.
class CompensatedSum {
 public:
  void add(cplx v) {
    add_one(re_, cre_, v.real());
    add_one(im_, cim_, v.imag());
  }
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_one(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

bool is_integer(cplx z) { return z.imag() == 0.0 && z.real() == std::round(z.real()); }

bool is_nonpositive_integer(cplx z) { return is_integer(z) && z.real() <= 0.0; }

double parity(double n) { return std::fmod(std::abs(n), 2.0) == 0.0 ? 1.0 : -1.0; }

void check_domain(cplx nu, double r) {
  if (!(r > 0.0) || r > kRMax) {
    throw DomainError("bessel: argument r=" + std::to_string(r) + " outside (0, " +
                      std::to_string(kRMax) + "]");
  }
  if (!std::isfinite(nu.real()) || !std::isfinite(nu.imag()) || std::abs(nu) > kNuMax) {
    throw DomainError("bessel: order |nu| exceeds " + std::to_string(kNuMax));
  }
}

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re z >= 1/2, up to a multiple of 2 pi i.
cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    x += kLanczos[i] / (z + static_cast<double>(i));
  }
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Ascending series for J_nu(r) and its r-derivative; no domain checks.
std::pair<cplx, cplx> j_series(cplx nu, double r) {
  if (is_integer(nu) && nu.real() < 0.0) {
    const auto [j, dj] = j_series(-nu, r);
    const double s = parity(nu.real());
    return {s * j, s * dj};
  }
  const double x = 0.5 * r;
  const double x2 = x * x;
  const cplx log_x = std::log(x);
  const cplx a = nu + 1.0;
  cplx t;
  if (a.real() >= 0.5) {
    t = std::exp(nu * log_x - log_gamma_right(a));
  } else {
    // 1/Gamma(a) = sin(pi a) Gamma(1 - a) / pi
    t = sin_pi(a) / pi * std::exp(nu * log_x + log_gamma_right(1.0 - a));
  }

  CompensatedSum sum, dsum;
  sum.add(t);
  dsum.add(t * nu / r);
  double max_term = std::abs(t);
  for (int k = 1; k <= kKMax; ++k) {
    const cplx kn = static_cast<double>(k) + nu;
    t *= -x2 / (static_cast<double>(k) * kn);
    sum.add(t);
    dsum.add(t * (nu + 2.0 * k) / r);
    const double at = std::abs(t);
    max_term = std::max(max_term, at);
    const double ratio = x2 / (static_cast<double>(k) * std::abs(kn));
    if (ratio <= 0.5 && at <= 1e-18 * max_term) {
      return {sum.value(), dsum.value()};
    }
  }
  throw ConvergenceError("bessel_j: series did not converge within K_MAX terms");
}

struct HankelPair {
  cplx J, dJ, Y, dY, H1, dH1, H2, dH2;
};

// Non-integer order: J_{+-nu} combinations.
HankelPair hankel_from_j(cplx nu, double r) {
  const auto [jp, djp] = j_series(nu, r);
  const auto [jm, djm] = j_series(-nu, r);
  const cplx s = sin_pi(nu);
  const cplx c = cos_pi(nu);
  const cplx e_minus = c - kI * s;  // e^{-i pi nu}
  const cplx e_plus = c + kI * s;   // e^{+i pi nu}
  HankelPair h;
  h.J = jp;
  h.dJ = djp;
  h.Y = (jp * c - jm) / s;
  h.dY = (djp * c - djm) / s;
  h.H1 = (jm - e_minus * jp) / (kI * s);
  h.dH1 = (djm - e_minus * djp) / (kI * s);
  h.H2 = (e_plus * jp - jm) / (kI * s);
  h.dH2 = (e_plus * djp - djm) / (kI * s);
  return h;
}

// Y and dY near the integer n from a Cauchy integral over |mu - n| = rho.
std::pair<cplx, cplx> y_near_integer(double n, cplx eps, double r) {
  constexpr int kPoints = 16;
  constexpr double kRho = 0.25;
  CompensatedSum y, dy;
  for (int k = 0; k < kPoints; ++k) {
    const cplx w = std::polar(1.0, 2.0 * pi * (k + 0.5) / kPoints);
    const cplx mu = n + kRho * w;
    const auto [jp, djp] = j_series(mu, r);
    const auto [jm, djm] = j_series(-mu, r);
    const cplx s = sin_pi(mu);
    const cplx c = cos_pi(mu);
    const cplx z = eps / (kRho * w);
    // sum_{j<kPoints} z^j = (1 - z^kPoints) / (1 - z)
    const cplx geom = (1.0 - std::pow(z, kPoints)) / (1.0 - z);
    y.add((jp * c - jm) / s * geom);
    dy.add((djp * c - djm) / s * geom);
  }
  return {y.value() / static_cast<double>(kPoints), dy.value() / static_cast<double>(kPoints)};
}

// Y_n(x) for n >= 0 from the limiting series.
double y_integer_nonneg(int n, double x) {
  const double h = 0.5 * x;
  const double log_h = std::log(h);
  CompensatedSum finite;
  // (n-k-1)!/k! (x/2)^{2k-n}, k = 0..n-1, built by recurrence from k = 0
  if (n > 0) {
    double term = std::exp(std::lgamma(static_cast<double>(n)) - n * log_h);
    for (int k = 0; k < n; ++k) {
      finite.add(term);
      if (k + 1 < n) {
        term *= h * h / (static_cast<double>(k + 1) * static_cast<double>(n - k - 1));
      }
    }
  }
  const double jn = j_series(cplx(n, 0.0), x).first.real();

  // sum_k [psi(k+1) + psi(n+k+1)] (-h^2)^k h^n / (k! (n+k)!)
  CompensatedSum tail;
  double harm_k = 0.0;  // H_k
  double harm_nk = 0.0; // H_{n+k}
  for (int m = 1; m <= n; ++m) harm_nk += 1.0 / m;
  double t = std::exp(n * log_h - std::lgamma(static_cast<double>(n) + 1.0));
  double max_term = 0.0;
  for (int k = 0; k <= kKMax; ++k) {
    if (k > 0) {
      t *= -h * h / (static_cast<double>(k) * static_cast<double>(n + k));
      harm_k += 1.0 / k;
      harm_nk += 1.0 / (n + k);
    }
    const double psi_sum = (harm_k - kEulerGamma) + (harm_nk - kEulerGamma);
    const double term = psi_sum * t;
    tail.add(term);
    max_term = std::max(max_term, std::abs(term));
    const double ratio = h * h / (static_cast<double>(k + 1) * static_cast<double>(n + k + 1));
    if (k > 0 && ratio <= 0.5 && std::abs(term) <= 1e-18 * max_term) {
      return (-finite.value().real() + 2.0 * log_h * jn - tail.value().real()) / pi;
    }
  }
  throw ConvergenceError("bessel_y_integer: series did not converge within K_MAX terms");
}

}  // namespace

cplx sin_pi(cplx z) {
  const double n = std::round(z.real());
  const double f = z.real() - n;
  return parity(n) * std::sin(cplx(pi * f, pi * z.imag()));
}

cplx cos_pi(cplx z) {
  const double n = std::round(z.real());
  const double f = z.real() - n;
  return parity(n) * std::cos(cplx(pi * f, pi * z.imag()));
}

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at nonpositive integer");
  if (z.real() >= 0.5) return log_gamma_right(z);
  return std::log(pi / sin_pi(z)) - log_gamma_right(1.0 - z);
}

cplx gamma_complex(cplx z) {
  if (is_nonpositive_integer(z)) {
    throw PoleError("gamma_complex: pole at z = " + std::to_string(z.real()));
  }
  if (z.real() >= 0.5) return std::exp(log_gamma_right(z));
  return pi / (sin_pi(z) * std::exp(log_gamma_right(1.0 - z)));
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() >= 0.5) return std::exp(-log_gamma_right(z));
  return sin_pi(z) / pi * std::exp(log_gamma_right(1.0 - z));
}

cplx bessel_j(cplx nu, double r) {
  check_domain(nu, r);
  return j_series(nu, r).first;
}

std::pair<cplx, cplx> bessel_j_with_derivative(cplx nu, double r) {
  check_domain(nu, r);
  return j_series(nu, r);
}

std::pair<double, double> bessel_y_integer(int n, double r) {
  check_domain(cplx(n, 0.0), r);
  const int m = std::abs(n);
  const double y = y_integer_nonneg(m, r);
  // dY_m = Y_{m-1} - (m/r) Y_m, with Y_{-1} = -Y_1
  const double y_prev = m == 0 ? -y_integer_nonneg(1, r) : y_integer_nonneg(m - 1, r);
  const double dy = y_prev - (m / r) * y;
  const double s = n < 0 ? parity(m) : 1.0;
  return {s * y, s * dy};
}

BesselValue bessel_h(cplx nu, double r) {
  check_domain(nu, r);
  const double n = std::round(nu.real());
  const cplx eps = nu - n;
  BesselValue b;
  if (std::abs(eps) >= kIntegerThreshold) {
    const HankelPair h = hankel_from_j(nu, r);
    b.J = h.J;
    b.dJ = h.dJ;
    b.Y = h.Y;
    b.dY = h.dY;
    b.H1 = h.H1;
    b.dH1 = h.dH1;
    b.H2 = h.H2;
    b.dH2 = h.dH2;
    return b;
  }
  const auto [j, dj] = j_series(nu, r);
  b.J = j;
  b.dJ = dj;
  if (eps == 0.0) {
    const auto [y, dy] = bessel_y_integer(static_cast<int>(n), r);
    b.Y = y;
    b.dY = dy;
  } else {
    const auto [y, dy] = y_near_integer(n, eps, r);
    b.Y = y;
    b.dY = dy;
  }
  b.H1 = b.J + kI * b.Y;
  b.H2 = b.J - kI * b.Y;
  b.dH1 = b.dJ + kI * b.dY;
  b.dH2 = b.dJ - kI * b.dY;
  return b;
}

cplx hankel_asymptotic_large_nu(cplx nu, double r) {
  constexpr double kSectorMargin = 0.1;
  if (std::abs(nu) < 5.0 || std::abs(std::arg(nu)) > pi / 2.0 - kSectorMargin) {
    throw DomainError("hankel_asymptotic_large_nu: nu outside |Arg nu| <= pi/2 - 0.1, |nu| >= 5");
  }
  if (!(r > 0.0)) throw DomainError("hankel_asymptotic_large_nu: r must be positive");
  return -kI / pi * std::exp(log_gamma(nu) - nu * std::log(0.5 * r));
}

std::pair<double, double> hankel_imaginary_axis_check(double y, double r) {
  if (std::abs(y) < 5.0) throw DomainError("hankel_imaginary_axis_check: requires |y| >= 5");
  const BesselValue b = bessel_h(cplx(0.0, y), r);
  const double prefactor = std::sqrt(2.0 / (pi * std::abs(y)));
  const double ref1 = prefactor * std::exp(0.5 * pi * y);
  const double ref2 = prefactor * std::exp(-0.5 * pi * y);
  return {std::abs(b.H1) / ref1, std::abs(b.H2) / ref2};
}

}  // namespace regge::specfun

#include "pvszeta/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace pvs {

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640562;

// B_{2k} / (2k (2k-1)) for k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

Complex stirling_log_gamma(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (double coef : kStirling) {
    series += coef * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + kLogSqrtTwoPi + series;
}

// log Gamma for Re z >= 0.5 via upward recurrence into the Stirling region.
Complex log_gamma_right(Complex z) {
  Complex product = 1.0;
  Complex w = z;
  while (std::abs(w) < 20.0) {
    product *= w;
    w += 1.0;
  }
  return stirling_log_gamma(w) - std::log(product);
}

Complex gamma_right(Complex z) {
  Complex product = 1.0;
  Complex w = z;
  while (std::abs(w) < 20.0) {
    product *= w;
    w += 1.0;
  }
  return std::exp(stirling_log_gamma(w)) / product;
}

Complex sin_pi(Complex z) {
  // Reduce the real part so sin(pi x) is exact at integers and half-integers.
  const double shift = std::round(z.real());
  const Complex r{z.real() - shift, z.imag()};
  Complex s = std::sin(kPi * r);
  if (static_cast<long long>(shift) % 2 != 0) s = -s;
  return s;
}

}  // namespace

double distance_to_nonpositive_integer(Complex z) {
  const double nearest = std::min(0.0, std::round(z.real()));
  return std::abs(z - Complex(nearest, 0.0));
}

Complex complex_gamma(Complex z) {
  if (distance_to_nonpositive_integer(z) < 1e-12) {
    throw PoleError("Gamma has a pole at " + format_complex(z), z);
  }
  if (z.real() < 0.5) {
    return kPi / (sin_pi(z) * gamma_right(1.0 - z));
  }
  return gamma_right(z);
}

Complex log_gamma(Complex z) {
  if (distance_to_nonpositive_integer(z) < 1e-12) {
    throw PoleError("log Gamma has a pole at " + format_complex(z), z);
  }
  if (z.real() < 0.5) {
    return std::log(kPi) - std::log(sin_pi(z)) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

Complex reciprocal_gamma(Complex z) {
  const double nearest = std::round(z.real());
  if (nearest <= 0.0 && z == Complex(nearest, 0.0)) return 0.0;
  if (z.real() < 0.5) {
    return sin_pi(z) * gamma_right(1.0 - z) / kPi;
  }
  return 1.0 / gamma_right(z);
}

Complex beta(Complex a, Complex b) {
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

Complex half_line_beta(Complex a, Complex b) {
  const Complex u = (a + 1.0) / 2.0;
  return 0.5 * beta(u, b - u);
}

Complex gamma_n(Complex t, const GammaFactorSpec& spec) {
  Complex result = 1.0;
  for (int j = 0; j < spec.n; ++j) {
    const Complex arg = (t - j * spec.d.value()) / 2.0;
    if (distance_to_nonpositive_integer(arg) < 1e-12) {
      throw PoleError("Gamma_n factor j=" + std::to_string(j) + " has a pole (Gamma(" +
                          format_complex(arg) + "))",
                      t);
    }
    result *= complex_gamma(arg);
  }
  return result;
}

Complex reciprocal_gamma_n(Complex t, const GammaFactorSpec& spec) {
  Complex result = 1.0;
  for (int j = 0; j < spec.n; ++j) result *= reciprocal_gamma((t - j * spec.d.value()) / 2.0);
  return result;
}

double gamma_n_pole_distance(Complex t, const GammaFactorSpec& spec) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < spec.n; ++j) {
    const double base = j * spec.d.value();
    // Poles at base - 2k, k >= 0: nearest k to (base - Re t)/2.
    const double kf = std::max(0.0, std::round((base - t.real()) / 2.0));
    for (double k : {kf - 1.0, kf, kf + 1.0}) {
      if (k < 0.0) continue;
      best = std::min(best, std::abs(t - Complex(base - 2.0 * k, 0.0)));
    }
  }
  return best;
}

ExactPolynomial::ExactPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ExactPolynomial ExactPolynomial::constant(Rational c) { return ExactPolynomial({std::move(c)}); }

ExactPolynomial ExactPolynomial::linear(Rational shift) { return ExactPolynomial({std::move(shift), Rational(1)}); }

void ExactPolynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(Rational(0));
}

ExactPolynomial ExactPolynomial::operator*(const ExactPolynomial& other) const {
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return ExactPolynomial(std::move(out));
}

ExactPolynomial ExactPolynomial::operator*(const Rational& scalar) const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c *= scalar;
  return ExactPolynomial(std::move(out));
}

bool ExactPolynomial::operator==(const ExactPolynomial& other) const { return coeffs_ == other.coeffs_; }

ExactPolynomial ExactPolynomial::shifted(const Rational& delta) const {
  // Horner in the polynomial ring: p(t - delta).
  ExactPolynomial result = constant(Rational(0));
  const ExactPolynomial lin = linear(-delta);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    result = result * lin;
    std::vector<Rational> c = result.coeffs_;
    c[0] += *it;
    result = ExactPolynomial(std::move(c));
  }
  return result;
}

Complex ExactPolynomial::eval(Complex t) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + static_cast<double>(*it);
  return acc;
}

Rational ExactPolynomial::eval(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

ExactPolynomial bernstein_b(const StructureConstants& c) {
  switch (c.invariant_kind) {
    case InvariantKind::EuclideanNorm: {
      const int m = c.m();
      return ExactPolynomial::linear(0) * ExactPolynomial::linear(m - 2);
    }
    case InvariantKind::AbsDet: {
      ExactPolynomial b = ExactPolynomial::constant(1);
      for (int j = 0; j < c.n; ++j) b = b * ExactPolynomial::linear(j) * ExactPolynomial::linear(j - 1);
      return b;
    }
    case InvariantKind::QuadraticForm: {
      const Rational half_dim(c.m(), 2);
      return ExactPolynomial::linear(0) * ExactPolynomial::linear(-1) * ExactPolynomial::linear(half_dim - 1) *
             ExactPolynomial::linear(half_dim - 2);
    }
    default:
      throw UnsupportedError("no b-function for invariant kind " + to_string(c.invariant_kind));
  }
}

ExactPolynomial bernstein_bk_polynomial(const StructureConstants& c, int k) {
  if (k < 0) throw ValidationError("b_k requires k >= 0");
  const ExactPolynomial b = bernstein_b(c);
  ExactPolynomial out = ExactPolynomial::constant(1);
  for (int r = 0; r < k; ++r) out = out * b.shifted(Rational(2 * r));
  return out;
}

Complex bernstein_bk(InvariantKind kind, Complex t, int k, const StructureConstants& c) {
  if (kind != c.invariant_kind) {
    throw ValidationError("invariant kind does not match the structure constants");
  }
  if (k == 0) {
    bernstein_b(c);  // kind check
    return 1.0;
  }
  const ExactPolynomial b = bernstein_b(c);
  Complex acc = 1.0;
  for (int r = 0; r < k; ++r) acc *= b.eval(t - 2.0 * r);
  return acc;
}

std::vector<double> bernstein_bk_roots(const StructureConstants& c, int k) {
  std::vector<double> base;
  switch (c.invariant_kind) {
    case InvariantKind::EuclideanNorm: base = {0.0, 2.0 - c.m()}; break;
    case InvariantKind::AbsDet:
      for (int j = 0; j < c.n; ++j) {
        base.push_back(-j);
        base.push_back(1.0 - j);
      }
      break;
    case InvariantKind::QuadraticForm: {
      const double h = c.m() / 2.0;
      base = {0.0, 1.0, 1.0 - h, 2.0 - h};
      break;
    }
    default: throw UnsupportedError("no b-function for invariant kind " + to_string(c.invariant_kind));
  }
  std::vector<double> roots;
  for (int r = 0; r < k; ++r) {
    for (double z : base) roots.push_back(z + 2.0 * r);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace pvs

#include "pvszeta/polar_symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pvs {

namespace {

constexpr double kExpTol = 1e-12;

bool same(Complex a, Complex b) { return std::abs(a - b) <= kExpTol * (1.0 + std::abs(a)); }

bool same_exponents(const SymTerm& a, const SymTerm& b) {
  for (std::size_t j = 0; j < a.p.size(); ++j) {
    if (!same(a.p[j], b.p[j]) || !same(a.w[j], b.w[j])) return false;
  }
  return true;
}

double log1p_sq(double x) { return x > 1e150 ? 2.0 * std::log(x) : std::log1p(x * x); }

std::vector<SymTerm> merge(std::vector<SymTerm> in) {
  std::vector<SymTerm> out;
  for (auto& t : in) {
    if (t.coeff == Complex(0.0)) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const SymTerm& o) { return same_exponents(o, t); });
    if (it == out.end()) {
      out.push_back(std::move(t));
    } else {
      it->coeff += t.coeff;
    }
  }
  std::erase_if(out, [](const SymTerm& t) { return t.coeff == Complex(0.0); });
  return out;
}

}  // namespace

PolarSymbolicFunction::PolarSymbolicFunction(int n) : n_(n) {
  if (n < 1) throw ValidationError("symbolic function rank must be positive");
}

PolarSymbolicFunction PolarSymbolicFunction::constant(int n, Complex c) {
  PolarSymbolicFunction f(n);
  f.add({c, std::vector<Complex>(static_cast<std::size_t>(n)), std::vector<Complex>(static_cast<std::size_t>(n))});
  return f;
}

PolarSymbolicFunction PolarSymbolicFunction::spherical(const SphericalVector& h) {
  const int n = h.constants.n;
  return term(1.0, std::vector<Complex>(static_cast<std::size_t>(n)),
              std::vector<Complex>(static_cast<std::size_t>(n), -h.half_exponent()));
}

PolarSymbolicFunction PolarSymbolicFunction::term(Complex coeff, std::vector<Complex> p, std::vector<Complex> w) {
  if (p.size() != w.size() || p.empty()) throw ValidationError("exponent vectors must have equal positive length");
  PolarSymbolicFunction f(static_cast<int>(p.size()));
  f.add({coeff, std::move(p), std::move(w)});
  return f;
}

void PolarSymbolicFunction::check(int j) const {
  if (j < 0 || j >= n_) throw ValidationError("variable index out of range");
}

void PolarSymbolicFunction::add(const SymTerm& t) {
  if (static_cast<int>(t.p.size()) != n_ || static_cast<int>(t.w.size()) != n_) {
    throw ValidationError("term rank does not match");
  }
  if (t.coeff == Complex(0.0)) return;
  for (auto& o : terms_) {
    if (same_exponents(o, t)) {
      o.coeff += t.coeff;
      return;
    }
  }
  terms_.push_back(t);
}

PolarSymbolicFunction PolarSymbolicFunction::operator+(const PolarSymbolicFunction& o) const {
  if (o.n_ != n_) throw ValidationError("rank mismatch");
  PolarSymbolicFunction out = *this;
  for (const auto& t : o.terms_) out.add(t);
  out.terms_ = merge(std::move(out.terms_));
  return out;
}

PolarSymbolicFunction PolarSymbolicFunction::operator-(const PolarSymbolicFunction& o) const { return *this + o * -1.0; }

PolarSymbolicFunction PolarSymbolicFunction::operator*(Complex c) const {
  PolarSymbolicFunction out(n_);
  if (c == Complex(0.0)) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

PolarSymbolicFunction PolarSymbolicFunction::operator*(const PolarSymbolicFunction& o) const {
  if (o.n_ != n_) throw ValidationError("rank mismatch");
  PolarSymbolicFunction out(n_);
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      SymTerm t{a.coeff * b.coeff, a.p, a.w};
      for (int j = 0; j < n_; ++j) {
        t.p[static_cast<std::size_t>(j)] += b.p[static_cast<std::size_t>(j)];
        t.w[static_cast<std::size_t>(j)] += b.w[static_cast<std::size_t>(j)];
      }
      out.add(t);
    }
  }
  return out;
}

PolarSymbolicFunction PolarSymbolicFunction::derivative(int j) const {
  check(j);
  const auto k = static_cast<std::size_t>(j);
  PolarSymbolicFunction out(n_);
  for (const auto& t : terms_) {
    // d/dx x^p (1+x^2)^w = p x^{p-1}(1+x^2)^w + 2w x^{p+1}(1+x^2)^{w-1}
    if (t.p[k] != Complex(0.0)) {
      SymTerm a = t;
      a.coeff *= t.p[k];
      a.p[k] -= 1.0;
      out.add(a);
    }
    if (t.w[k] != Complex(0.0)) {
      SymTerm b = t;
      b.coeff *= 2.0 * t.w[k];
      b.p[k] += 1.0;
      b.w[k] -= 1.0;
      out.add(b);
    }
  }
  out.terms_ = merge(std::move(out.terms_));
  return out;
}

PolarSymbolicFunction PolarSymbolicFunction::times_power(int j, Complex k) const {
  check(j);
  PolarSymbolicFunction out = *this;
  for (auto& t : out.terms_) t.p[static_cast<std::size_t>(j)] += k;
  return out;
}

PolarSymbolicFunction PolarSymbolicFunction::times_one_plus_sq(int j, Complex k) const {
  check(j);
  PolarSymbolicFunction out = *this;
  for (auto& t : out.terms_) t.w[static_cast<std::size_t>(j)] += k;
  return out;
}

PolarSymbolicFunction PolarSymbolicFunction::restrict(int j, double y) const {
  check(j);
  if (!(y > 0.0)) throw ValidationError("restriction point must be positive");
  const auto k = static_cast<std::size_t>(j);
  PolarSymbolicFunction out(n_);
  for (auto t : terms_) {
    t.coeff *= std::exp(t.p[k] * std::log(y) + t.w[k] * log1p_sq(y));
    t.p[k] = 0.0;
    t.w[k] = 0.0;
    out.add(t);
  }
  return out;
}

PolarSymbolicFunction PolarSymbolicFunction::merge_variable(int from, int to) const {
  check(from);
  check(to);
  if (from == to) return *this;
  const auto f = static_cast<std::size_t>(from);
  const auto t = static_cast<std::size_t>(to);
  PolarSymbolicFunction out(n_);
  for (auto term : terms_) {
    term.p[t] += term.p[f];
    term.w[t] += term.w[f];
    term.p[f] = 0.0;
    term.w[f] = 0.0;
    out.add(term);
  }
  return out;
}

bool PolarSymbolicFunction::is_bounded() const {
  for (const auto& t : canonical().terms_) {
    for (int j = 0; j < n_; ++j) {
      const auto k = static_cast<std::size_t>(j);
      if (t.p[k].real() < -kExpTol || (t.p[k] + 2.0 * t.w[k]).real() > kExpTol) return false;
    }
  }
  return true;
}

Complex PolarSymbolicFunction::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ValidationError("point rank does not match");
  Complex acc = 0.0;
  for (const auto& t : terms_) {
    Complex log_mag = 0.0;
    bool zero = false;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (t.p[j] != Complex(0.0)) {
        if (x[j] == 0.0) {
          if (t.p[j].real() > 0.0) {
            zero = true;
            break;
          }
          return Complex(std::numeric_limits<double>::infinity(), 0.0);
        }
        log_mag += t.p[j] * std::log(x[j]);
      }
      if (t.w[j] != Complex(0.0)) log_mag += t.w[j] * log1p_sq(x[j]);
    }
    if (!zero) acc += t.coeff * std::exp(log_mag);
  }
  return acc;
}

PolarSymbolicFunction PolarSymbolicFunction::canonical() const {
  // Per variable, choose for each class of (1+x^2) exponents (equal modulo
  // integers) the smallest member as base and expand the integer excess.
  std::vector<std::vector<Complex>> bases(static_cast<std::size_t>(n_));
  for (const auto& t : terms_) {
    for (int j = 0; j < n_; ++j) {
      auto& list = bases[static_cast<std::size_t>(j)];
      const Complex w = t.w[static_cast<std::size_t>(j)];
      bool placed = false;
      for (auto& b : list) {
        const Complex diff = w - b;
        if (std::abs(diff.imag()) < kExpTol && std::abs(diff.real() - std::round(diff.real())) < kExpTol) {
          if (w.real() < b.real()) b = w;
          placed = true;
          break;
        }
      }
      if (!placed) list.push_back(w);
    }
  }
  std::vector<SymTerm> work = terms_;
  for (int j = 0; j < n_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    std::vector<SymTerm> next;
    for (const auto& t : work) {
      Complex base = t.w[k];
      for (const auto& b : bases[k]) {
        const Complex diff = t.w[k] - b;
        if (std::abs(diff.imag()) < kExpTol && std::abs(diff.real() - std::round(diff.real())) < kExpTol) base = b;
      }
      const int excess = static_cast<int>(std::lround((t.w[k] - base).real()));
      // (1+x^2)^excess = sum_i C(excess, i) x^{2i}
      double binom = 1.0;
      for (int i = 0; i <= excess; ++i) {
        SymTerm e = t;
        e.coeff *= binom;
        e.p[k] += 2.0 * i;
        e.w[k] = base;
        next.push_back(std::move(e));
        binom = binom * (excess - i) / (i + 1.0);
      }
    }
    work = merge(std::move(next));
  }
  PolarSymbolicFunction out(n_);
  out.terms_ = std::move(work);
  return out;
}

double PolarSymbolicFunction::max_coeff() const {
  double best = 0.0;
  for (const auto& t : canonical().terms_) best = std::max(best, std::abs(t.coeff));
  return best;
}

double symbolic_distance(const PolarSymbolicFunction& a, const PolarSymbolicFunction& b) {
  const double scale = std::max({a.max_coeff(), b.max_coeff(), 1e-300});
  return (a - b).max_coeff() / scale;
}

}  // namespace pvs

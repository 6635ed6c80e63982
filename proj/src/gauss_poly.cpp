#include "pvszeta/gauss_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pvs {

GaussPoly::GaussPoly(int dim) : dim_(dim) {
  if (dim < 1) throw ValidationError("GaussPoly dimension must be positive");
}

GaussPoly GaussPoly::gaussian(int dim) { return monomial(dim, std::vector<int>(static_cast<std::size_t>(dim), 0)); }

GaussPoly GaussPoly::monomial(int dim, std::vector<int> alpha, GaussRational coeff, int pi_pow) {
  GaussPoly f(dim);
  f.add_term(std::move(alpha), pi_pow, coeff);
  return f;
}

int GaussPoly::degree() const {
  int deg = 0;
  for (const auto& [key, c] : terms_) deg = std::max(deg, std::accumulate(key.alpha.begin(), key.alpha.end(), 0));
  return deg;
}

void GaussPoly::add_term(std::vector<int> alpha, int pi_pow, const GaussRational& coeff) {
  if (static_cast<int>(alpha.size()) != dim_) throw ValidationError("multi-index length does not match dimension");
  for (int a : alpha) {
    if (a < 0) throw ValidationError("negative exponent in multi-index");
  }
  if (coeff.is_zero()) return;
  Key key{std::move(alpha), pi_pow};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

void GaussPoly::check_index(int j) const {
  if (j < 0 || j >= dim_) throw ValidationError("coordinate index out of range");
}

GaussPoly GaussPoly::operator+(const GaussPoly& other) const {
  if (other.dim_ != dim_) throw ValidationError("dimension mismatch");
  GaussPoly out = *this;
  for (const auto& [key, c] : other.terms_) out.add_term(key.alpha, key.pi_pow, c);
  return out;
}

GaussPoly GaussPoly::operator-(const GaussPoly& other) const { return *this + other.scaled(-1); }

GaussPoly GaussPoly::scaled(const GaussRational& c, int pi_shift) const {
  GaussPoly out(dim_);
  for (const auto& [key, v] : terms_) out.add_term(key.alpha, key.pi_pow + pi_shift, v * c);
  return out;
}

GaussPoly GaussPoly::times_coordinate(int j) const {
  check_index(j);
  GaussPoly out(dim_);
  for (const auto& [key, v] : terms_) {
    auto alpha = key.alpha;
    ++alpha[static_cast<std::size_t>(j)];
    out.add_term(std::move(alpha), key.pi_pow, v);
  }
  return out;
}

GaussPoly GaussPoly::times_polynomial(const GaussPoly& poly) const {
  if (poly.dim_ != dim_) throw ValidationError("dimension mismatch");
  GaussPoly out(dim_);
  for (const auto& [ka, va] : terms_) {
    for (const auto& [kb, vb] : poly.terms_) {
      std::vector<int> alpha(ka.alpha.size());
      for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] = ka.alpha[i] + kb.alpha[i];
      out.add_term(std::move(alpha), ka.pi_pow + kb.pi_pow, va * vb);
    }
  }
  return out;
}

GaussPoly GaussPoly::reflected() const {
  GaussPoly out(dim_);
  for (const auto& [key, v] : terms_) {
    const int deg = std::accumulate(key.alpha.begin(), key.alpha.end(), 0);
    out.add_term(key.alpha, key.pi_pow, deg % 2 == 0 ? v : -v);
  }
  return out;
}

GaussPoly gp_differentiate(const GaussPoly& f, int idx) {
  if (idx < 0 || idx >= f.dim()) throw ValidationError("coordinate index out of range");
  const auto j = static_cast<std::size_t>(idx);
  GaussPoly out(f.dim());
  for (const auto& [key, v] : f.terms()) {
    if (key.alpha[j] > 0) {
      auto lower = key.alpha;
      --lower[j];
      out.add_term(std::move(lower), key.pi_pow, v * GaussRational(key.alpha[j]));
    }
    auto upper = key.alpha;
    ++upper[j];
    out.add_term(std::move(upper), key.pi_pow + 1, v * GaussRational(-2));
  }
  return out;
}

int full_space_dim(const StructureConstants& c) {
  switch (c.invariant_kind) {
    case InvariantKind::EuclideanNorm:
    case InvariantKind::QuadraticForm: return c.m();
    case InvariantKind::AbsDet: return c.n * c.n;
    default: throw UnsupportedError("no full-space model for invariant kind " + to_string(c.invariant_kind));
  }
}

namespace {

std::vector<std::pair<std::vector<int>, int>> permutations_with_sign(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> out;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    }
    out.emplace_back(perm, inversions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// sum_j sign_j d_j^2 with sign + for the first `positive` coordinates.
GaussPoly signed_laplacian(const GaussPoly& f, int positive) {
  GaussPoly out(f.dim());
  for (int j = 0; j < f.dim(); ++j) {
    const GaussPoly d2 = gp_differentiate(gp_differentiate(f, j), j);
    out = out + (j < positive ? d2 : d2.scaled(-1));
  }
  return out;
}

GaussPoly det_operator(const GaussPoly& f, int n) {
  GaussPoly out(f.dim());
  for (const auto& [perm, sign] : permutations_with_sign(n)) {
    GaussPoly g = f;
    for (int i = 0; i < n; ++i) g = gp_differentiate(g, i * n + perm[static_cast<std::size_t>(i)]);
    out = out + g.scaled(sign);
  }
  return out;
}

GaussPoly polynomial_one(int dim) { return GaussPoly::gaussian(dim); }

}  // namespace

GaussPoly invariant_square_polynomial(const StructureConstants& c) {
  const int dim = full_space_dim(c);
  switch (c.invariant_kind) {
    case InvariantKind::EuclideanNorm: {
      GaussPoly out(dim);
      for (int j = 0; j < dim; ++j) {
        std::vector<int> a(static_cast<std::size_t>(dim), 0);
        a[static_cast<std::size_t>(j)] = 2;
        out.add_term(std::move(a), 0, 1);
      }
      return out;
    }
    case InvariantKind::AbsDet: {
      GaussPoly det(dim);
      for (const auto& [perm, sign] : permutations_with_sign(c.n)) {
        std::vector<int> a(static_cast<std::size_t>(dim), 0);
        for (int i = 0; i < c.n; ++i) ++a[static_cast<std::size_t>(i * c.n + perm[static_cast<std::size_t>(i)])];
        det.add_term(std::move(a), 0, sign);
      }
      return det.times_polynomial(det);
    }
    case InvariantKind::QuadraticForm: {
      const int positive = c.p.value() - 1;
      GaussPoly q(dim);
      for (int j = 0; j < dim; ++j) {
        std::vector<int> a(static_cast<std::size_t>(dim), 0);
        a[static_cast<std::size_t>(j)] = 2;
        q.add_term(std::move(a), 0, j < positive ? 1 : -1);
      }
      return q.times_polynomial(q).scaled(GaussRational(Rational(1, 4)));
    }
    default: throw UnsupportedError("no full-space model for invariant kind " + to_string(c.invariant_kind));
  }
}

GaussPoly gp_apply_invariant_operator(const GaussPoly& f, const StructureConstants& c, int k) {
  if (k < 0) throw ValidationError("operator power must be nonnegative");
  const int dim = full_space_dim(c);
  if (f.dim() != dim) throw ValidationError("function dimension does not match the invariant's space");
  GaussPoly g = f;
  for (int r = 0; r < k; ++r) {
    switch (c.invariant_kind) {
      case InvariantKind::EuclideanNorm: g = signed_laplacian(g, dim); break;
      case InvariantKind::AbsDet: g = det_operator(det_operator(g, c.n), c.n); break;
      case InvariantKind::QuadraticForm: {
        const int positive = c.p.value() - 1;
        g = signed_laplacian(signed_laplacian(g, positive), positive).scaled(GaussRational(Rational(1, 4)));
        break;
      }
      default: throw UnsupportedError("unsupported invariant kind");
    }
  }
  return g;
}

GaussPoly gp_fourier(const GaussPoly& f) {
  // (x^alpha G)^ = (i / 2 pi)^{|alpha|} d^alpha G.
  std::map<std::vector<int>, GaussPoly> cache;
  GaussPoly out(f.dim());
  for (const auto& [key, v] : f.terms()) {
    auto it = cache.find(key.alpha);
    if (it == cache.end()) {
      GaussPoly g = polynomial_one(f.dim());
      int total = 0;
      for (int j = 0; j < f.dim(); ++j) {
        for (int r = 0; r < key.alpha[static_cast<std::size_t>(j)]; ++r) g = gp_differentiate(g, j);
        total += key.alpha[static_cast<std::size_t>(j)];
      }
      GaussRational factor = 1;
      for (int r = 0; r < total; ++r) factor = factor * GaussRational(0, Rational(1, 2));
      it = cache.emplace(key.alpha, g.scaled(factor, -total)).first;
    }
    out = out + it->second.scaled(v, key.pi_pow);
  }
  return out;
}

Complex gp_eval_polynomial(const GaussPoly& f, std::span<const double> point) {
  if (static_cast<int>(point.size()) != f.dim()) throw ValidationError("point dimension does not match");
  Complex acc = 0.0;
  for (const auto& [key, v] : f.terms()) {
    double mono = std::pow(kPi, key.pi_pow);
    for (std::size_t j = 0; j < point.size(); ++j) {
      if (key.alpha[j] != 0) mono *= std::pow(point[j], key.alpha[j]);
    }
    acc += v.to_complex() * mono;
  }
  return acc;
}

Complex gp_eval(const GaussPoly& f, std::span<const double> point) {
  double r2 = 0.0;
  for (double x : point) r2 += x * x;
  const double g = std::exp(-kPi * r2);
  // Past underflow the polynomial may overflow; the product is zero.
  if (g == 0.0) return 0.0;
  return gp_eval_polynomial(f, point) * g;
}

}  // namespace pvs

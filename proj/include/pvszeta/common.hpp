#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pvs {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Invalid input: parameters outside a declared range, wrong kinds, bad shapes.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A gamma factor, b-function or shift constant vanishes / blows up at the
/// requested point. `root` is the offending location in the caller's variable.
class PoleError : public std::domain_error {
 public:
  PoleError(const std::string& what, Complex root)
      : std::domain_error(what), root_(root) {}
  Complex root() const { return root_; }

 private:
  Complex root_;
};

/// Evaluation point outside the region where an integral converges.
class RegionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested feature is not available for this invariant kind / rank.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

std::string format_complex(Complex z);

}  // namespace pvs

#ifndef CHI2LOSS_ERRORS_HPP
#define CHI2LOSS_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chi2loss {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario/configuration. Carries every violation found, not just the first.
class ConfigError : public Error {
public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}
  explicit ConfigError(const std::string& violation)
      : ConfigError(std::vector<std::string>{violation}) {}

  const std::vector<std::string>& violations() const { return violations_; }

private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out.empty() ? std::string("invalid configuration") : out;
  }
  std::vector<std::string> violations_;
};

class InvalidParameterError : public Error {
public:
  using Error::Error;
};

/// Process tag does not match the supplied inputs.
class InvalidProcessError : public Error {
public:
  using Error::Error;
};

/// A sampled integrand value was not finite.
class NumericalDomainError : public Error {
public:
  NumericalDomainError(const std::string& what, double abscissa)
      : Error(what), abscissa_(abscissa) {}
  double abscissa() const { return abscissa_; }

private:
  double abscissa_;
};

/// Quadrature refinement exhausted without reaching tolerance. Carries the best estimate.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, std::complex<double> best, double achieved)
      : Error(what), best_(best), achieved_(achieved) {}
  std::complex<double> best_estimate() const { return best_; }
  double achieved_tolerance() const { return achieved_; }

private:
  std::complex<double> best_;
  double achieved_;
};

/// Ratio denominator (pair density) below the defined floor.
class UndefinedRatioError : public Error {
public:
  using Error::Error;
};

/// Signal and idler bins coincide; the ratio definitions assume distinct bins.
class DegenerateBinError : public Error {
public:
  using Error::Error;
};

/// Fock-space truncation lost more norm than allowed.
class TruncationError : public Error {
public:
  using Error::Error;
};

class ResourceLimitError : public Error {
public:
  using Error::Error;
};

}  // namespace chi2loss

#endif

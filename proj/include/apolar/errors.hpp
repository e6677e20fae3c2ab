#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace apolar {

/// Malformed or out-of-contract input: wrong shapes, degrees, variable counts.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed certificate did not hold (Hilbert profile, fit residual, dimension check).
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The graded pieces do not cut out an Artinian Gorenstein quotient with
/// one-dimensional socle in the top degree.
class SocleError : public CertificateError {
 public:
  SocleError(const std::string& what, std::vector<long> hilbert, std::vector<long> socle)
      : CertificateError(what), hilbert_(std::move(hilbert)), socle_(std::move(socle)) {}

  const std::vector<long>& hilbert() const noexcept { return hilbert_; }
  const std::vector<long>& socle() const noexcept { return socle_; }

 private:
  std::vector<long> hilbert_;
  std::vector<long> socle_;
};

}  // namespace apolar

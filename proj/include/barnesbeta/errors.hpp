#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace barnesbeta {

// Argument or parameter outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
  using std::domain_error::domain_error;
};

// Requested tolerance was not met; carries the best available estimate.
class accuracy_error : public std::runtime_error {
public:
  accuracy_error(const std::string& msg, std::complex<double> best, double err)
      : std::runtime_error(msg), best_estimate(best), est_error(err) {}
  std::complex<double> best_estimate;
  double est_error;
};

// Combinatorial size limit exceeded (e.g. subset enumeration width).
class capacity_error : public std::length_error {
  using std::length_error::length_error;
};

// Pole of the function hit exactly.
class pole_error : public domain_error {
  using domain_error::domain_error;
};

}  // namespace barnesbeta

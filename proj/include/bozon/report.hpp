#pragma once

#include <complex>
#include <string>

#include "json.hpp"

namespace bozon {

// One identity check: both sides, their errors and the verdict.
struct IdentityReport {
  std::string identity;
  std::complex<double> lhs;
  std::complex<double> rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// rel_err is measured against max(|lhs|, |rhs|); two exact zeros agree.
IdentityReport compare(std::string identity, std::complex<double> lhs, std::complex<double> rhs, double tolerance);

// Passes when |lhs - rhs| <= tolerance regardless of magnitude.
IdentityReport compare_absolute(std::string identity, std::complex<double> lhs, std::complex<double> rhs,
                                double tolerance);

// Throws IdentityViolation carrying both values when the report failed.
void require(const IdentityReport& report);

nlohmann::json complex_json(std::complex<double> z);
nlohmann::json to_json(const IdentityReport& report);

}  // namespace bozon

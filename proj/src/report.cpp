#include "bozon/report.hpp"

#include <algorithm>
#include <sstream>

#include "bozon/error.hpp"

namespace bozon {

IdentityReport compare(std::string identity, std::complex<double> lhs, std::complex<double> rhs, double tolerance) {
  IdentityReport r{std::move(identity), lhs, rhs};
  r.tolerance = tolerance;
  r.abs_err = std::abs(lhs - rhs);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  r.rel_err = scale > 0.0 ? r.abs_err / scale : 0.0;
  r.pass = r.rel_err <= tolerance;
  return r;
}

IdentityReport compare_absolute(std::string identity, std::complex<double> lhs, std::complex<double> rhs,
                                double tolerance) {
  IdentityReport r = compare(std::move(identity), lhs, rhs, tolerance);
  r.pass = r.abs_err <= tolerance;
  return r;
}

void require(const IdentityReport& report) {
  if (report.pass) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << report.identity << ": lhs = " << report.lhs << ", rhs = " << report.rhs << ", rel_err = " << report.rel_err
      << " > " << report.tolerance;
  throw Error(ErrorKind::identity_violation, msg.str());
}

nlohmann::json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json to_json(const IdentityReport& r) {
  return {{"identity", r.identity}, {"lhs", complex_json(r.lhs)}, {"rhs", complex_json(r.rhs)},
          {"abs_err", r.abs_err},   {"rel_err", r.rel_err},       {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

}  // namespace bozon

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace km {

using cplx = std::complex<double>;
using RealVec = std::vector<double>;
using ComplexVec = std::vector<cplx>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad user-supplied input (parameter ranges, shape mismatches, parse errors).
struct InvalidParameterError : Error {
  using Error::Error;
};

/// A coefficient or weight denominator came too close to a zero of sh/ch or
/// of a q-shifted factorial.  The message names the offending factor.
struct NearPoleError : Error {
  using Error::Error;
};

/// Least-squares expansion did not reach the requested fit residual.
struct NotInSpanError : Error {
  NotInSpanError(const std::string& what, double resid) : Error(what), residual(resid) {}
  double residual;
};

/// A linear system was numerically singular; carries the condition estimate.
struct ConditioningError : Error {
  ConditioningError(const std::string& what, double cond) : Error(what), condition(cond) {}
  double condition;
};

/// Two eigenvalues that must stay separated collided (non-generic input).
struct DegenerateSpectrumError : Error {
  using Error::Error;
};

inline ComplexVec to_complex(const RealVec& v) {
  ComplexVec out(v.size());
  for (size_t j = 0; j < v.size(); ++j) out[j] = cplx(v[j], 0.0);
  return out;
}

}  // namespace km

//========================================================================================
// qlm: a quasi-local mass verification toolkit
// Copyright(C) 2026 the qlm contributors
// Licensed under the 3-clause BSD License (the "LICENSE")
//========================================================================================
//! \file error.hpp
//  \brief exception hierarchy shared by all modules

#ifndef QLM_CORE_ERROR_HPP_
#define QLM_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qlm {

//! base class for all toolkit errors
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! grid/configuration misuse (odd interval count, bad bounds, bad options)
class ConfigError : public Error {
 public:
  using Error::Error;
};

//! input data violates a precondition (non-spacelike boundary, horizon present, ...)
class DataError : public Error {
 public:
  using Error::Error;
};

//! a theorem-backed margin came out negative beyond slack; indicates an assembly bug
//! or corrupted inputs rather than a legitimate input rejection
class ViolationError : public Error {
 public:
  using Error::Error;
};

//! a discretized linear system lost invertibility (zero pivot, bad residual)
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

//! iterative solver exhausted its budget
class NonconvergenceError : public Error {
 public:
  using Error::Error;
};

//! adaptive integration collapsed; carries the last radius that was still good
class FlowBreakdownError : public Error {
 public:
  FlowBreakdownError(const std::string& what, double last_r)
      : Error(what + " (last good r = " + std::to_string(last_r) + ")"), last_r_(last_r) {}
  double last_r() const { return last_r_; }

 private:
  double last_r_;
};

}  // namespace qlm

#endif  // QLM_CORE_ERROR_HPP_

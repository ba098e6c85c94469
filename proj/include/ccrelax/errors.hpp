/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, ccrelax developers
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <stdexcept>
#include <string>

namespace ccrelax {

// Error hierarchy. The C API maps each class onto a status code, and the CLI
// onto its exit code (usage 2, infeasible 3, numerical 4).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: dimension mismatch, out-of-range parameter, malformed file.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Domain error on a real-valued parameter (e.g. beta outside (0.5, 1)).
class DomainError : public UsageError {
 public:
  using UsageError::UsageError;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccrelax

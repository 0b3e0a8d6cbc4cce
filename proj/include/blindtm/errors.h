/*
 * Copyright 2026 The blindtm Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef BLINDTM_ERRORS_H_
#define BLINDTM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace blindtm {

// Root of the library's exception hierarchy. Each branch maps to one CLI
// exit code (see cli.h).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad command-line usage.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Structural problems: malformed hex/JSON, elements outside the subgroup,
// invalid parameters, DSL parse failures, fingerprint mismatches.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class FingerprintMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A decryption returned bottom or an equality test could not be evaluated.
class CryptoError : public Error {
 public:
  using Error::Error;
};

// Plaintext and blind pipelines disagreed.
class VerificationMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace blindtm

#endif  // BLINDTM_ERRORS_H_

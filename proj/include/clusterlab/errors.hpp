#pragma once

#include <stdexcept>
#include <string>

namespace clusterlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotFullRank : public Error {
 public:
  using Error::Error;
};

class ExactDivisionFailure : public Error {
 public:
  using Error::Error;
};

class NotLaurent : public Error {
 public:
  using Error::Error;
};

class OddDimension : public Error {
 public:
  using Error::Error;
};

class CompletionFailed : public Error {
 public:
  using Error::Error;
};

class DimensionCap : public Error {
 public:
  using Error::Error;
};

class NotConnected : public Error {
 public:
  using Error::Error;
};

class CertificateMismatch : public Error {
 public:
  using Error::Error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class NoFit : public Error {
 public:
  using Error::Error;
};

class NonIntegerSum : public Error {
 public:
  using Error::Error;
};

}  // namespace clusterlab

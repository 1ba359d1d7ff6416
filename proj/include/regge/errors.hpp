#pragma once

#include <stdexcept>
#include <string>

namespace regge {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public Error { using Error::Error; };
class ConvergenceError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class QuadratureError : public Error { using Error::Error; };
class IntegrationError : public Error { using Error::Error; };
class NoConvergence : public Error { using Error::Error; };
class DivisionByNearZero : public Error { using Error::Error; };
class BetaZero : public Error { using Error::Error; };
class InsufficientTail : public Error { using Error::Error; };
class FluxMismatch : public Error { using Error::Error; };
class IllConditioned : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };

}  // namespace regge

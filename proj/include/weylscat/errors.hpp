#ifndef WEYLSCAT_ERRORS_HPP
#define WEYLSCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace weylscat {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- linear algebra ---
class NonHermitianInput : public Error { using Error::Error; };
class ConvergenceFailure : public Error { using Error::Error; };
class IndefiniteInput : public Error { using Error::Error; };
class SingularMatrix : public Error { using Error::Error; };

// --- special functions ---
class DomainError : public Error { using Error::Error; };
class OrderCapExceeded : public Error { using Error::Error; };

// --- Weyl / boundary-value machinery ---
class UnsupportedBoundaryPoint : public Error { using Error::Error; };
class ModelDomainError : public Error { using Error::Error; };
class ExclusionSetHit : public Error { using Error::Error; };
class ExtrapolationDiverged : public Error { using Error::Error; };

// --- scattering assembly ---
class SingularWeylValue : public Error { using Error::Error; };
class SingularRobinPencil : public Error { using Error::Error; };
class NonUnitarySample : public Error { using Error::Error; };

// --- verification helpers ---
class ResolventUnavailable : public Error { using Error::Error; };
class OracleUnavailable : public Error { using Error::Error; };
class TruncationTooSmall : public Error { using Error::Error; };
class ModelNotDiagonal : public Error { using Error::Error; };

}  // namespace weylscat

#endif

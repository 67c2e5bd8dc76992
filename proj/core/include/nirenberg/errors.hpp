#pragma once

#include <stdexcept>
#include <string>

namespace nirenberg {

// Domain failures map to exit code 1 in the CLI, configuration failures to 2.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error("ConfigError: " + what) {}
};

#define NIRENBERG_DOMAIN_ERROR(Name)                                         \
  class Name : public DomainError {                                          \
   public:                                                                   \
    explicit Name(const std::string& what) : DomainError(#Name, what) {}     \
  };

NIRENBERG_DOMAIN_ERROR(InvalidPoint)
NIRENBERG_DOMAIN_ERROR(PoleSingularity)
NIRENBERG_DOMAIN_ERROR(NonPositiveField)
NIRENBERG_DOMAIN_ERROR(BoundaryPoint)
NIRENBERG_DOMAIN_ERROR(ToleranceNotMet)
NIRENBERG_DOMAIN_ERROR(InvalidConfiguration)
NIRENBERG_DOMAIN_ERROR(NotInWSet)
NIRENBERG_DOMAIN_ERROR(IndexNotBoundary)
NIRENBERG_DOMAIN_ERROR(IndexNotInterior)
NIRENBERG_DOMAIN_ERROR(DegenerateCriticalPoint)
NIRENBERG_DOMAIN_ERROR(AmbiguousSign)
NIRENBERG_DOMAIN_ERROR(LevelInsideBand)
NIRENBERG_DOMAIN_ERROR(AssumptionViolation)
NIRENBERG_DOMAIN_ERROR(OutsideNeighborhood)
NIRENBERG_DOMAIN_ERROR(UnclassifiableState)
NIRENBERG_DOMAIN_ERROR(StepFailure)

#undef NIRENBERG_DOMAIN_ERROR

}  // namespace nirenberg

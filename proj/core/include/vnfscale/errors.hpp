#pragma once

#include <stdexcept>
#include <string>

namespace vnfscale {

// Which model constraint a rejected configuration violated.
enum class Constraint {
  kArrivalRatePositive,
  kServiceRatePositive,
  kSetupRatePositive,
  kLegacyAtLeastOne,
  kInstancesNonNegative,
  kCapacityAtLeastServers,
  kSimulationWindow,
  kReplications,
  kDistribution,
  kCostSpec,
  kSweepSpec,
  kUnknownField,
};

const char* constraint_name(Constraint c);

/// Invalid input configuration. what() names the violated constraint.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(Constraint constraint, const std::string& detail);

  Constraint constraint() const noexcept { return constraint_; }

 private:
  Constraint constraint_;
};

/// (level, jobs) pair that is not a state of the chain.
class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A recursion denominator or coefficient left its provable range.
class NumericalFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense oracle refused a state space above its size guard.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Comparison between results computed on different configurations.
class MismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vnfscale

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace hamsim {

/// Why a trial stopped. Phase causes are probabilistic failures of the
/// strategy; CycleNotFound is a search failure of the cycle engine.
enum class FailureCause {
  Phase1Edges,
  Phase1Blue,
  Phase2TooManyPaths,
  Phase3EndTooLarge,
  Phase4Fanout,
  Phase5Unresolved,
  MPhase4Fanout,
  MPhase5Unresolved,
  CycleNotFound,
};

std::string_view to_string(FailureCause cause);
FailureCause parse_failure_cause(std::string_view text);
/// 1..5 for phase causes, 0 for CycleNotFound.
int failure_phase(FailureCause cause);

struct Failure {
  FailureCause cause;
  std::string detail;
};

using PhaseStatus = std::optional<Failure>;

/// Value or Failure.
template <typename T>
class Outcome {
 public:
  Outcome(T value) : data_(std::move(value)) {}
  Outcome(Failure failure) : data_(std::move(failure)) {}

  bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  T& value() {
    if (!ok()) throw std::logic_error("Outcome holds a failure");
    return std::get<T>(data_);
  }
  const T& value() const {
    if (!ok()) throw std::logic_error("Outcome holds a failure");
    return std::get<T>(data_);
  }
  const Failure& failure() const { return std::get<Failure>(data_); }

 private:
  std::variant<T, Failure> data_;
};

}  // namespace hamsim

#pragma once

#include <stdexcept>
#include <string>

namespace cgl {

struct NonPhysical : std::runtime_error {
  explicit NonPhysical(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateField : std::runtime_error {
  explicit DegenerateField(const std::string& what) : std::runtime_error(what) {}
};

struct NotHyperbolic : std::runtime_error {
  explicit NotHyperbolic(const std::string& what) : std::runtime_error(what) {}
};

struct IllConditioned : std::runtime_error {
  explicit IllConditioned(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownProblem : std::runtime_error {
  explicit UnknownProblem(const std::string& what) : std::runtime_error(what) {}
};

struct NoExactSolution : std::runtime_error {
  explicit NoExactSolution(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// numerical failure annotated with where/when it happened in a run
struct ZoneFailure : std::runtime_error {
  int zone;
  double time;
  ZoneFailure(const std::string& what, int zone_, double time_)
      : std::runtime_error(what + " [zone " + std::to_string(zone_) +
                           ", t=" + std::to_string(time_) + "]"),
        zone(zone_), time(time_) {}
};

}  // namespace cgl

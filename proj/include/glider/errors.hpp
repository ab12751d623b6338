#pragma once

#include <stdexcept>
#include <string>

namespace glider {

// Root of every error the engine throws. Callers that only care about
// "the simulation refused" catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Pitch reached the Euler-angle singularity band.
class GimbalLock : public Error {
 public:
  using Error::Error;
};

// A lifting surface sees no usable forward flow.
class DegenerateAirflow : public Error {
 public:
  using Error::Error;
};

class NoTrimFound : public Error {
 public:
  using Error::Error;
};

class InfeasibleScenario : public Error {
 public:
  using Error::Error;
};

class StepAfterTermination : public Error {
 public:
  using Error::Error;
};

class NotVisible : public Error {
 public:
  using Error::Error;
};

class AllEpisodesFailed : public Error {
 public:
  using Error::Error;
};

// Scenario / glider document problems. `key` is the dotted path of the
// offending entry when one is known.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : Error(key.empty() ? message : key + ": " + message), key_(key), message_(message) {}

  const std::string& key() const noexcept { return key_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string key_;
  std::string message_;
};

}  // namespace glider

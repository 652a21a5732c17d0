#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stochfv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a function argument was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or incomplete configuration (missing boundary function, bad key, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The request is well formed but outside what is implemented (e.g. non-periodic GRF synthesis).
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A finite-volume update produced a non-finite value.
class NumericalBlowup : public Error {
 public:
  NumericalBlowup(double time, std::size_t cell, std::size_t component);

  double time() const noexcept { return time_; }
  std::size_t cell() const noexcept { return cell_; }
  std::size_t component() const noexcept { return component_; }

 private:
  double time_;
  std::size_t cell_;
  std::size_t component_;
};

/// One Monte Carlo realization failed; carries what is needed to replay it.
class SampleFailure : public Error {
 public:
  SampleFailure(std::uint64_t sample, std::uint64_t seed, const std::string& cause);

  std::uint64_t sample() const noexcept { return sample_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t sample_;
  std::uint64_t seed_;
};

}  // namespace stochfv

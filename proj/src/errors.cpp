#include "stochfv/errors.hpp"

#include <sstream>

namespace stochfv {

namespace {

std::string blowup_message(double time, std::size_t cell, std::size_t component) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite value in component " << component << " of cell " << cell << " at t=" << time;
  return os.str();
}

}  // namespace

NumericalBlowup::NumericalBlowup(double time, std::size_t cell, std::size_t component)
    : Error(blowup_message(time, cell, component)), time_(time), cell_(cell), component_(component) {}

SampleFailure::SampleFailure(std::uint64_t sample, std::uint64_t seed, const std::string& cause)
    : Error("sample " + std::to_string(sample) + " (seed " + std::to_string(seed) + ") failed: " + cause),
      sample_(sample),
      seed_(seed) {}

}  // namespace stochfv

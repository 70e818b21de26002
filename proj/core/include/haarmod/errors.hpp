#pragma once

#include <stdexcept>

namespace haarmod {

/// An enumeration workload exceeded the hard cap on element tuples.
struct TooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A rejection sampler ran past its retry cap.
struct SamplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Too few observations remain after cell merging to run a test.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace haarmod

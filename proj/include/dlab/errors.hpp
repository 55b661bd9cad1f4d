#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

/// Bad input: violated precondition, malformed grid, out-of-range time.
class invalid_argument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A quadrature or regression failed to converge.
class numeric_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters fall outside every regime for which a bound/exponent is stated.
class unsupported_regime : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The requested feature is smaller than the sampling resolution.
class resolution_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw invalid_argument(what);
}

}  // namespace dlab

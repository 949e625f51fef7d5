// errors.hpp — Exception types for the physics-domain failure modes.

#pragma once

#include <stdexcept>
#include <string>

namespace qpt {

struct QuadratureNotConverged : std::runtime_error {
    explicit QuadratureNotConverged(const std::string& what) : std::runtime_error(what) {}
};

struct GridTooNarrow : std::runtime_error {
    explicit GridTooNarrow(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct SingularLiouvillian : std::runtime_error {
    explicit SingularLiouvillian(const std::string& what) : std::runtime_error(what) {}
};

struct StepSizeUnderflow : std::runtime_error {
    explicit StepSizeUnderflow(const std::string& what) : std::runtime_error(what) {}
};

struct FitFailed : std::runtime_error {
    explicit FitFailed(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qpt

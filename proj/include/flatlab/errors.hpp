#pragma once

#include <stdexcept>
#include <string>

namespace flatlab {

/// Sampling too coarse for the requested construction.
struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// A surgery produced an invalid space (disconnection, dangling attachment).
struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// An input distance violates a required strict comparison hypothesis.
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace flatlab

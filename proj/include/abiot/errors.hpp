#pragma once

#include <stdexcept>
#include <string>

namespace abiot {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct UndefinedMetricError : std::runtime_error {
    explicit UndefinedMetricError(const std::string& what) : std::runtime_error(what) {}
};

struct SingularDistanceError : std::runtime_error {
    explicit SingularDistanceError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateRegionError : std::runtime_error {
    explicit DegenerateRegionError(const std::string& what) : std::runtime_error(what) {}
};

struct OverPartitionError : std::runtime_error {
    explicit OverPartitionError(const std::string& what) : std::runtime_error(what) {}
};

struct NegotiationTimeout : std::runtime_error {
    explicit NegotiationTimeout(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace abiot

#pragma once

#include <stdexcept>
#include <string>

namespace gaze {

/// Input data failed to parse or violated a schema invariant.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configuration key or value is unusable for the requested run.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The heatmap has no positive cell, so no hottest region exists.
class no_region_error : public std::runtime_error {
public:
    explicit no_region_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Selections and ground-truth records are not aligned frame by frame.
class pairing_error : public std::runtime_error {
public:
    explicit pairing_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The simulator exhausted its retry budget while placing objects.
class placement_error : public std::runtime_error {
public:
    explicit placement_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gaze

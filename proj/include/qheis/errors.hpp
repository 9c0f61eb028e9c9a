#pragma once

#include <stdexcept>
#include <string>

namespace qheis {

/// Invalid user-supplied configuration (bad bond, unknown preset, bad JSON field).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke an API precondition (dimension mismatch, zero vector).
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

/// Argument outside its documented range (basis index, time outside [0, tau]).
class RangeError : public std::out_of_range {
public:
    explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

/// Problem size exceeds a hard capability guard (dense solver, oracle).
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical integration failed a health check (norm drift past tolerance).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Relative phase requested between amplitudes too small to carry one.
class UndefinedPhaseError : public std::runtime_error {
public:
    explicit UndefinedPhaseError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure while emitting results.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qheis

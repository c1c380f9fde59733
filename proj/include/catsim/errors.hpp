#pragma once

#include <stdexcept>
#include <string>

namespace catsim {

// Base class for all catsim errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Tensor composition with duplicate qubit labels.
class composition_error : public error {
public:
    using error::error;
};

// Reference to a qubit label that does not exist in the state.
class addressing_error : public error {
public:
    using error::error;
};

// Measurement basis fails orthonormality.
class basis_error : public error {
public:
    using error::error;
};

// Value outside an operation's domain (mismatched systems, bad dimensions, ...).
class domain_error : public error {
public:
    using error::error;
};

// Inconsistent protocol/channel/input configuration.
class configuration_error : public error {
public:
    using error::error;
};

// Protocol reached a state it never should (e.g. the complement outcome).
class protocol_error : public error {
public:
    using error::error;
};

// A script step touches qubits its party does not own.
class locality_error : public error {
public:
    using error::error;
};

} // namespace catsim

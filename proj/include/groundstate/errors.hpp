#pragma once

#include <stdexcept>
#include <string>

namespace groundstate {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Grid construction with fewer than 3 nodes on an axis, or over the 4D cap.
class invalid_resolution_error : public error {
public:
    using error::error;
};

/// Two fields that were expected to share a grid do not.
class grid_mismatch_error : public error {
public:
    using error::error;
};

/// Nehari projection requested for a field with B(z,z,lambda) <= 0.
class not_in_cone_error : public error {
public:
    using error::error;
};

/// Gram determinant |u|_4^4 |v|_4^4 - beta^2 (int u^2 v^2)^2 is nonpositive.
class gram_degenerate_error : public error {
public:
    using error::error;
};

/// Nehari scaling produced t^2 <= 0 or s^2 <= 0; the pair cannot be projected.
class infeasible_scaling_error : public error {
public:
    using error::error;
};

/// Requested more eigenmodes than the grid carries.
class capacity_error : public error {
public:
    using error::error;
};

/// Spectral basis truncated before covering all modes with mu_k + lambda <= 0.
class insufficient_basis_error : public error {
public:
    using error::error;
};

/// A verification suite was asked to resolve a profile finer than the grid.
class resolution_error : public error {
public:
    using error::error;
};

/// beta* sampling found no admissible pair with positive overlap.
class sampling_failure_error : public error {
public:
    using error::error;
};

/// Operation precondition violated (wrong sign regime, nonpositive level, ...).
class precondition_error : public error {
public:
    using error::error;
};

/// Malformed configuration file or CLI arguments.
class config_error : public error {
public:
    using error::error;
};

/// Filesystem / IO failure.
class io_error : public error {
public:
    using error::error;
};

} // namespace groundstate

#pragma once

#include <stdexcept>
#include <string>

namespace qv {

// Thrown when a series or iterative scheme exhausts its budget without
// meeting its tolerance.  Carries whatever partial result made sense.
class no_convergence : public std::runtime_error {
public:
    explicit no_convergence(const std::string& what) : std::runtime_error(what) {}
};

// A lower parameter of a q-hypergeometric series (or a closed-form
// denominator factor) sits on the pole lattice q^{-m}.
class pole_error : public std::runtime_error {
public:
    explicit pole_error(const std::string& what) : std::runtime_error(what) {}
};

// The series diverges for the given argument (|z| too large for the
// series type and no termination).
class divergence_error : public std::runtime_error {
public:
    explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

// An exact-arithmetic request exceeds the configured coefficient budget.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qv

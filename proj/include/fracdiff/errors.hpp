#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

/// Thrown when an iterative or quadrature scheme cannot reach its
/// internal accuracy target.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an evaluation point sits on (or numerically too close to)
/// a pole of a gamma factor.
struct pole_error : std::domain_error {
    explicit pole_error(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when an evaluation route is requested outside its region of
/// validity (series convergence region, parameter regime, ...).
struct region_error : std::domain_error {
    explicit region_error(const std::string& what) : std::domain_error(what) {}
};

} // namespace fracdiff

#pragma once

#include <stdexcept>
#include <string>

namespace dlmp {

/// Parameter outside its mathematical domain (alpha, gamma, p, ...).
struct domain_error : std::invalid_argument {
    explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Structurally inconsistent inputs (vector length / matrix size mismatch).
struct dimension_error : std::invalid_argument {
    explicit dimension_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Stochastic construction failed within its retry budget.
struct generation_error : std::runtime_error {
    explicit generation_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dlmp

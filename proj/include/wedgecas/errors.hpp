#pragma once

#include <stdexcept>
#include <string>

namespace wedgecas {

// Base class for all numerical failures raised by this library.
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument outside the mathematical domain of an operation.
class DomainError : public NumericsError {
public:
    explicit DomainError(const std::string& msg) : NumericsError(msg) {}
};

// Result not representable in double precision (use the scaled variants).
class OverflowError : public NumericsError {
public:
    explicit OverflowError(const std::string& msg) : NumericsError(msg) {}
};

// Adaptive integration failed to meet its tolerance; carries the best estimate.
class QuadratureError : public NumericsError {
public:
    QuadratureError(const std::string& msg, double best, double err)
        : NumericsError(msg), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

// Mode-sum truncation failed (non-decaying terms or term budget exhausted).
class SummationError : public NumericsError {
public:
    SummationError(const std::string& msg, double best, long terms)
        : NumericsError(msg), best_estimate(best), terms_used(terms) {}
    double best_estimate;
    long terms_used;
};

// Richardson extrapolation did not converge; carries the last diagonal value.
class ExtrapolationError : public NumericsError {
public:
    ExtrapolationError(const std::string& msg, double best, double err)
        : NumericsError(msg), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

}  // namespace wedgecas

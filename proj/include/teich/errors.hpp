#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace teich {

// Base class so callers (the CLI in particular) can map every numerical
// failure to one exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error { public: using Error::Error; };
class ArgumentError : public Error { public: using Error::Error; };
class ChartError : public Error { public: using Error::Error; };
class ConditioningError : public Error { public: using Error::Error; };
class ConsistencyError : public Error { public: using Error::Error; };
class ClassificationError : public Error { public: using Error::Error; };
class BudgetError : public Error { public: using Error::Error; };
class BranchError : public Error { public: using Error::Error; };
class ExtensionError : public Error { public: using Error::Error; };
class ResolutionError : public Error { public: using Error::Error; };
class MonotonicityError : public Error { public: using Error::Error; };
class RangeError : public Error { public: using Error::Error; };

class SolverError : public Error {
public:
    SolverError(const std::string& what, double last_increment)
        : Error(what), last_increment(last_increment) {}
    double last_increment;
};

class InversionError : public Error {
public:
    InversionError(const std::string& what, double residual)
        : Error(what), residual(residual) {}
    double residual;
};

class ContractionError : public Error {
public:
    ContractionError(const std::string& what, std::vector<double> history)
        : Error(what), factor_history(std::move(history)) {}
    std::vector<double> factor_history;
};

}  // namespace teich

#pragma once

#include <stdexcept>
#include <string>

namespace symcurv {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntaxError : EngineError {
    SyntaxError(const std::string& msg, std::size_t position)
        : EngineError(msg + " (at offset " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

struct UndeclaredSymbol : EngineError {
    using EngineError::EngineError;
};

struct DivisionByZero : EngineError {
    DivisionByZero() : EngineError("division by a zero expression") {}
    explicit DivisionByZero(const std::string& msg) : EngineError(msg) {}
};

struct SingularMetric : EngineError {
    using EngineError::EngineError;
};

struct SubstitutionError : EngineError {
    using EngineError::EngineError;
};

struct ShapeError : EngineError {
    using EngineError::EngineError;
};

} // namespace symcurv

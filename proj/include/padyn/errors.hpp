#pragma once

#include <stdexcept>
#include <string>

namespace padyn {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ContextMismatch : public Error {
public:
    ContextMismatch() : Error("operands belong to different prime contexts") {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

// Carries the iteration step at which the orbit reached the pole.
class PoleHit : public Error {
public:
    explicit PoleHit(long step = 0)
        : Error("map undefined: argument equals the pole (step " + std::to_string(step) + ")"),
          step(step) {}
    long step;
};

class UnsupportedPrime : public Error {
public:
    explicit UnsupportedPrime(const std::string& what) : Error(what) {}
};

class WrongCase : public Error {
public:
    explicit WrongCase(const std::string& what) : Error(what) {}
};

class DegenerateParams : public Error {
public:
    explicit DegenerateParams(const std::string& what) : Error(what) {}
};

class DegenerateLeadingCoefficient : public Error {
public:
    DegenerateLeadingCoefficient() : Error("leading coefficient is zero; use the linear path") {}
};

class ResidueModelInvalid : public Error {
public:
    explicit ResidueModelInvalid(const std::string& what) : Error(what) {}
};

class DisjointnessFailure : public Error {
public:
    explicit DisjointnessFailure(const std::string& what) : Error(what) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

}  // namespace padyn

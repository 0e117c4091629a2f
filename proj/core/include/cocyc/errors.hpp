#pragma once

#include <stdexcept>
#include <string>

namespace cocyc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid argument outside the domain of a map (zero vector for Ψ, α ≤ 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two bodies coincide (or are closer than the collision tolerance).
/// Body indices are 0-based.
class CollisionError : public Error {
public:
    CollisionError(int i, int j, double distance);

    int first() const noexcept { return first_; }
    int second() const noexcept { return second_; }
    double distance() const noexcept { return distance_; }

private:
    int first_;
    int second_;
    double distance_;
};

/// Configuration with vanishing mass-norm after centering.
class DegenerateError : public Error {
public:
    using Error::Error;
};

}  // namespace cocyc

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace farch {

/// Base of every error raised by the library. `kind()` is a stable tag that
/// tools map onto exit codes and messages.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    [[nodiscard]] const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class GridMismatch : public Error {
public:
    explicit GridMismatch(const std::string& what) : Error("GridMismatch", what) {}
};

class NotSymmetric : public Error {
public:
    explicit NotSymmetric(const std::string& what) : Error("NotSymmetric", what) {}
};

class NumericalFailure : public Error {
public:
    explicit NumericalFailure(const std::string& what) : Error("NumericalFailure", what) {}
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error("InvalidInput", what) {}
};

class EmptyInput : public Error {
public:
    explicit EmptyInput(const std::string& what) : Error("EmptyInput", what) {}
};

class UnknownInnovation : public Error {
public:
    explicit UnknownInnovation(const std::string& what) : Error("UnknownInnovation", what) {}
};

class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& what) : Error("InvariantViolation", what) {}
};

class InvalidK : public Error {
public:
    explicit InvalidK(const std::string& what) : Error("InvalidK", what) {}
};

/// Raised when the requested truncation level hits eigenvalues that are
/// numerically zero. `largest_usable_k()` is 0 when no eigenvalue is usable.
class IllConditioned : public Error {
public:
    IllConditioned(const std::string& what, std::size_t largest_usable_k)
        : Error("IllConditioned", what), largest_usable_k_(largest_usable_k) {}

    [[nodiscard]] std::size_t largest_usable_k() const noexcept { return largest_usable_k_; }

private:
    std::size_t largest_usable_k_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("ParseError", what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidPrice : public Error {
public:
    InvalidPrice(const std::string& what, std::size_t line)
        : Error("InvalidPrice", what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NonMonotoneTime : public Error {
public:
    NonMonotoneTime(const std::string& what, std::string day)
        : Error("NonMonotoneTime", what), day_(std::move(day)) {}
    [[nodiscard]] const std::string& day() const noexcept { return day_; }

private:
    std::string day_;
};

class NoUsableDays : public Error {
public:
    explicit NoUsableDays(const std::string& what) : Error("NoUsableDays", what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("IoError", what) {}
};

}  // namespace farch

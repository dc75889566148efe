#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace raschkit {

enum class ErrorKind {
    InvalidArgument,
    Dimension,
    MissingParameter,
    Validation,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so the CLI can map it to a
// machine-readable prefix and an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace raschkit

#pragma once

#include <stdexcept>
#include <string>

namespace spinmarket {

// Error categories map one-to-one onto the CLI exit codes.
enum class ErrorKind {
    validation = 2,  // bad parameters, malformed input
    numeric = 3,     // iteration failed to converge, pole hit, ...
    io = 4,          // missing file, unwritable path
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_validation(const std::string& msg) {
    throw Error(ErrorKind::validation, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
    throw Error(ErrorKind::numeric, msg);
}
[[noreturn]] inline void throw_io(const std::string& msg) {
    throw Error(ErrorKind::io, msg);
}

}  // namespace spinmarket

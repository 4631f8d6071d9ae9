#pragma once

#include <stdexcept>
#include <string>

namespace fh {

// Domain error with a stable machine-readable code. The CLI renders the
// first line of stderr as "ERROR <code>: <message>".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

namespace err {

[[noreturn]] inline void raise(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

[[noreturn]] inline void parse(int line, const std::string& msg) {
    throw Error("parse", "line " + std::to_string(line) + ": " + msg);
}

} // namespace err
} // namespace fh

#ifndef NASHCERT_ERROR_HPP
#define NASHCERT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nashcert {

// Error taxonomy shared by the library and the CLI. The CLI maps each kind
// to a distinct process exit code.
enum class ErrorKind {
    parse,         // malformed input text
    semantic,      // well-formed input that violates a mathematical precondition
    verification,  // a check that must hold failed
    incomplete,    // the engine cannot decide the instance (no wrong answer emitted)
    internal,      // engine bug; should never surface
};

class NashError : public std::runtime_error {
public:
    NashError(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    static int exit_code(ErrorKind k) {
        switch (k) {
            case ErrorKind::parse: return 2;
            case ErrorKind::semantic: return 3;
            case ErrorKind::verification: return 4;
            case ErrorKind::incomplete: return 5;
            case ErrorKind::internal: return 70;
        }
        return 70;
    }

    int exit_code() const { return exit_code(kind_); }

private:
    ErrorKind kind_;
};

}  // namespace nashcert

#endif

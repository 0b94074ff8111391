#pragma once

#include <stdexcept>
#include <string>

namespace letf {

enum class ErrorKind {
    Lexical,
    Syntax,
    Arity,
    UnboundName,
    VoidQuantifier,
    ConstraintViolation,
    UnassignedAtom,
    NotSentence,
    UnknownName,
    BoundExceeded,
    Format,
    InvalidArgument,
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace letf

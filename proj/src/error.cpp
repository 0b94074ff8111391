#include "letf/error.hpp"

namespace letf {

const char *to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Lexical: return "lexical error";
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::Arity: return "arity mismatch";
    case ErrorKind::UnboundName: return "unbound name";
    case ErrorKind::VoidQuantifier: return "void quantifier";
    case ErrorKind::ConstraintViolation: return "constraint violation";
    case ErrorKind::UnassignedAtom: return "unassigned atom";
    case ErrorKind::NotSentence: return "not a sentence";
    case ErrorKind::UnknownName: return "unknown name";
    case ErrorKind::BoundExceeded: return "bound exceeded";
    case ErrorKind::Format: return "format error";
    case ErrorKind::InvalidArgument: return "invalid argument";
    }
    return "error";
}

} // namespace letf

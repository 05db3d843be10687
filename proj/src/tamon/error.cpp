#include "tamon/error.hpp"

namespace tamon {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::UnboundParameter: return "unbound parameter";
    case ErrorKind::MalformedGuard: return "malformed guard";
    case ErrorKind::UnknownLetter: return "unknown letter";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Contract: return "contract violation";
    case ErrorKind::Overflow: return "overflow";
  }
  return "error";
}

}  // namespace tamon

#pragma once

#include <stdexcept>
#include <string>

namespace tailmoves {

// Every failure surfaced by the library derives from Error; the CLI prints
// kind() so the offending module operation is identifiable.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TAILMOVES_ERROR(Name)                                   \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

TAILMOVES_ERROR(SyntaxError);
TAILMOVES_ERROR(StructureError);
TAILMOVES_ERROR(InvalidMove);
TAILMOVES_ERROR(PreconditionViolated);
TAILMOVES_ERROR(NotDistanceOne);
TAILMOVES_ERROR(ExceptionalNetwork);
TAILMOVES_ERROR(TierMismatch);
TAILMOVES_ERROR(TooFewLeaves);
TAILMOVES_ERROR(Unrootable);
TAILMOVES_ERROR(ScaleLimitExceeded);
TAILMOVES_ERROR(CompositionInvalid);

#undef TAILMOVES_ERROR

}  // namespace tailmoves

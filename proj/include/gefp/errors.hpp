#pragma once

#include <stdexcept>
#include <string>

namespace gefp {

// Every failure raised by the library carries a stable short name; the CLI
// reports it verbatim and maps it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define GEFP_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                     \
   public:                                                        \
    explicit Type(const std::string& what) : Error(#Type, what) {} \
  }

GEFP_DEFINE_ERROR(DivisionByZero);
GEFP_DEFINE_ERROR(NonphysicalWeights);
GEFP_DEFINE_ERROR(DuplicateRapidity);
GEFP_DEFINE_ERROR(TooLarge);
GEFP_DEFINE_ERROR(BadIndex);
GEFP_DEFINE_ERROR(NotInvertible);
GEFP_DEFINE_ERROR(NotDivisible);
GEFP_DEFINE_ERROR(SingularHankel);
GEFP_DEFINE_ERROR(Unsupported);
GEFP_DEFINE_ERROR(BranchPole);
GEFP_DEFINE_ERROR(InvalidProfile);
GEFP_DEFINE_ERROR(OracleMismatch);
GEFP_DEFINE_ERROR(ParseError);

#undef GEFP_DEFINE_ERROR

}  // namespace gefp

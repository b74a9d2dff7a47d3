#pragma once

#include <stdexcept>
#include <string>

namespace mseg {

class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

#define MSEG_ERROR(Name)                                                      \
  struct Name : Error {                                                       \
    explicit Name(const std::string& w) : Error(#Name, w) {}                  \
  }

MSEG_ERROR(NotLinked);
MSEG_ERROR(NotMember);
MSEG_ERROR(BadRange);
MSEG_ERROR(SizeLimit);
MSEG_ERROR(SizeMismatch);
MSEG_ERROR(NotSymmetric);
MSEG_ERROR(NotInQuotient);
MSEG_ERROR(NotInImage);
MSEG_ERROR(NotComparable);
MSEG_ERROR(NotInDomain);
MSEG_ERROR(NoBijection);
MSEG_ERROR(ShapeMismatch);
MSEG_ERROR(SingularSystem);
MSEG_ERROR(UnreducedCase);
MSEG_ERROR(Overflow);

struct ParseError : Error {
  ParseError(const std::string& w, std::size_t pos)
      : Error("ParseError", w + " at position " + std::to_string(pos)),
        position(pos) {}
  std::size_t position;
};

#undef MSEG_ERROR

}  // namespace mseg

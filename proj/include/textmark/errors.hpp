#pragma once

#include <stdexcept>
#include <string>

namespace textmark {

enum class ErrorKind {
  Length,
  Rate,
  Order,
  Capacity,
  EmptySelection,
  Dimension,
  Param,
  Io,
};

const char* to_string(ErrorKind kind);

// Base for every error raised by the library. The kind lets the CLI map
// failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define TEXTMARK_DEFINE_ERROR(Name, Kind) \
  class Name : public Error {             \
   public:                                \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

TEXTMARK_DEFINE_ERROR(LengthError, Length)
TEXTMARK_DEFINE_ERROR(RateError, Rate)
TEXTMARK_DEFINE_ERROR(OrderError, Order)
TEXTMARK_DEFINE_ERROR(CapacityError, Capacity)
TEXTMARK_DEFINE_ERROR(EmptySelectionError, EmptySelection)
TEXTMARK_DEFINE_ERROR(DimensionError, Dimension)
TEXTMARK_DEFINE_ERROR(ParamError, Param)
TEXTMARK_DEFINE_ERROR(IoError, Io)

#undef TEXTMARK_DEFINE_ERROR

}  // namespace textmark

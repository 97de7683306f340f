#include "textmark/errors.hpp"

namespace textmark {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Length: return "LengthError";
    case ErrorKind::Rate: return "RateError";
    case ErrorKind::Order: return "OrderError";
    case ErrorKind::Capacity: return "CapacityError";
    case ErrorKind::EmptySelection: return "EmptySelection";
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::Param: return "ParamError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

}  // namespace textmark

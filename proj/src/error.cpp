#include "algscope/error.hpp"

namespace algscope {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularShift: return "SingularShift";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::InvalidGroupTable: return "InvalidGroupTable";
    case ErrorKind::NoRegularValue: return "NoRegularValue";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownBuilder: return "UnknownBuilder";
    case ErrorKind::BadParams: return "BadParams";
  }
  return "Unknown";
}

}  // namespace algscope

#include "growthlab/error.hpp"

namespace growthlab {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::shape: return "shape";
    case ErrorKind::domain: return "domain";
    case ErrorKind::order: return "order";
    case ErrorKind::range: return "range";
    case ErrorKind::input: return "input";
    case ErrorKind::parse: return "parse";
    case ErrorKind::cap: return "cap";
    case ErrorKind::invalid_complex: return "invalid-complex";
  }
  return "unknown";
}

}  // namespace growthlab

#include "ptrie/error.hpp"

namespace ptrie {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::depth_exceeded: return "DepthExceeded";
    case ErrorKind::invalid_path: return "InvalidPath";
    case ErrorKind::limit_exceeded: return "LimitExceeded";
    case ErrorKind::unary_node: return "UnaryNode";
    case ErrorKind::shape_dependence: return "ShapeDependence";
    case ErrorKind::empty_tree: return "EmptyTree";
    case ErrorKind::pole: return "PoleAt";
    case ErrorKind::non_convergent: return "NonConvergent";
    case ErrorKind::aperiodic: return "Aperiodic";
    case ErrorKind::degenerate_variance: return "DegenerateVariance";
  }
  return "Error";
}

}  // namespace ptrie

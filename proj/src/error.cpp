#include "bozon/error.hpp"

namespace bozon {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::euler_violation: return "EulerViolation";
    case ErrorKind::disconnected: return "Disconnected";
    case ErrorKind::malformed_rotation: return "MalformedRotation";
    case ErrorKind::paths_intersect: return "PathsIntersect";
    case ErrorKind::path_has_loop: return "PathHasLoop";
    case ErrorKind::endpoint_mismatch: return "EndpointMismatch";
    case ErrorKind::overlap: return "OverlapError";
    case ErrorKind::too_large: return "TooLarge";
    case ErrorKind::length_mismatch: return "LengthMismatch";
    case ErrorKind::non_positive_coupling: return "NonPositiveCoupling";
    case ErrorKind::identity_violation: return "IdentityViolation";
    case ErrorKind::bridge_unsupported: return "BridgeUnsupported";
    case ErrorKind::orientation_failure: return "OrientationFailure";
    case ErrorKind::singular_matrix: return "SingularMatrix";
    case ErrorKind::inconsistent_pair: return "InconsistentPair";
    case ErrorKind::defect_on_boundary: return "DefectOnBoundary";
    case ErrorKind::non_contiguous_arc: return "NonContiguousArc";
    case ErrorKind::bad_arc_split: return "BadArcSplit";
    case ErrorKind::unknown_graph: return "UnknownGraph";
    case ErrorKind::input_error: return "InputError";
  }
  return "Error";
}

}  // namespace bozon

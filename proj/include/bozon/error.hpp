#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bozon {

enum class ErrorKind {
  euler_violation,
  disconnected,
  malformed_rotation,
  paths_intersect,
  path_has_loop,
  endpoint_mismatch,
  overlap,
  too_large,
  length_mismatch,
  non_positive_coupling,
  identity_violation,
  bridge_unsupported,
  orientation_failure,
  singular_matrix,
  inconsistent_pair,
  defect_on_boundary,
  non_contiguous_arc,
  bad_arc_split,
  unknown_graph,
  input_error,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bozon

#pragma once

namespace bozon {

// Enumeration limits for the exact (exponential) evaluators.
struct Caps {
  int spin_vertices = 24;   // free spins in 2^V sums
  int cycle_rank = 24;      // |E| - |V| + 1 for polygon enumeration
  int dimer_vertices = 36;  // |V(G_Q)| for matching enumeration
};

// Relative tolerance for analytically equal quantities in double precision.
inline constexpr double default_tolerance = 1e-9;

}  // namespace bozon

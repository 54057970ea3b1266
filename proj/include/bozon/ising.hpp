#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "bozon/caps.hpp"
#include "bozon/edge_set.hpp"
#include "bozon/planar_map.hpp"

namespace bozon {

using Complex = std::complex<double>;

// J = real + quarter_turns * i*pi/2. Keeping the imaginary shift as an integer
// makes exp(J s) = exp(real s) * i^(quarter_turns s) exact for s = +-1.
struct Coupling {
  double real = 0.0;
  int quarter_turns = 0;  // taken mod 4

  Complex value() const;
  Coupling doubled() const { return {2.0 * real, (2 * quarter_turns) & 3}; }
  Coupling negated() const { return {-real, (4 - (quarter_turns & 3)) & 3}; }
  // Closed forms: tanh has period i*pi and turns into coth on odd shifts, so
  // it stays real; cosh picks up a power of i.
  double tanh_value() const;
  Complex cosh_value() const;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

class CouplingAssignment {
 public:
  CouplingAssignment() = default;
  explicit CouplingAssignment(std::vector<Coupling> couplings) : couplings_(std::move(couplings)) {}
  static CouplingAssignment from_reals(const std::vector<double>& values);
  static CouplingAssignment uniform(int edge_count, double value);

  int size() const noexcept { return static_cast<int>(couplings_.size()); }
  const Coupling& operator[](EdgeId e) const { return couplings_[e]; }
  Coupling& operator[](EdgeId e) { return couplings_[e]; }
  const std::vector<Coupling>& values() const noexcept { return couplings_; }

  // Strictly positive reals with no imaginary shift.
  bool is_base() const;
  CouplingAssignment doubled() const;

 private:
  std::vector<Coupling> couplings_;
};

using SpinConfig = std::vector<int>;

struct IsingCorrelator {
  Complex value;
  int gamma_size = 0;
  int gamma_star_size = 0;
};

// J_e + i*pi/2 on gamma, -J_e on gamma_star.
CouplingAssignment modify_couplings(const CouplingAssignment& base, const DefectSet& defects);

struct SpinSum {
  Complex weight;      // sum of Boltzmann weights
  Complex observable;  // same sum weighted by the product of observed spins
};

// Exact sum over every assignment of the free spins; fixed[v] is 0 for a free
// vertex or the pinned value +-1. Summation runs in increasing configuration
// order so results are reproducible. Throws TooLarge past caps.spin_vertices.
SpinSum spin_sum(const CombinatorialMap& map, const CouplingAssignment& couplings, const std::vector<int>& fixed = {},
                 const std::vector<VertexId>& observed = {}, const Caps& caps = {});

Complex partition_function(const CombinatorialMap& map, const CouplingAssignment& couplings, const Caps& caps = {});

IsingCorrelator order_disorder_correlation(const CombinatorialMap& map, const CouplingAssignment& base,
                                           const DefectSet& defects, const Caps& caps = {});

// E[sigma_{u1} ... sigma_{uk}] by direct enumeration, no defect machinery.
double spin_expectation(const CombinatorialMap& map, const CouplingAssignment& couplings,
                        const std::vector<VertexId>& vertices, const std::vector<int>& fixed = {},
                        const Caps& caps = {});

SpinConfig xor_product(const SpinConfig& a, const SpinConfig& b);

struct ExpansionCheck {
  Complex lhs;
  Complex rhs;
};

// Spin sum against 2^V prod cosh K_e * sum over even subgraphs of prod tanh K_e.
ExpansionCheck high_temp_expansion_check(const CombinatorialMap& map, const CouplingAssignment& couplings,
                                         const Caps& caps = {});

// Dual edges whose primal edge separates unequal spins of tau.
PolygonConfig low_temp_polygon(const CombinatorialMap& map, const DualMap& dual, const SpinConfig& tau);

// J*_{e*} = -ln(tanh J_e) / 2 for base couplings.
CouplingAssignment dual_couplings(const CouplingAssignment& base);

// The same relation on a single coupling with a shift, using
// ln(-x) = ln x - i*pi for negative tanh so that order and disorder swap
// exactly: tanh(J + i pi/2) = coth J gives -J*, and tanh(-J) gives J* + i pi/2.
Coupling dual_coupling(const Coupling& coupling);

}  // namespace bozon

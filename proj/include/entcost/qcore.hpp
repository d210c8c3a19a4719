#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "entcost/errors.hpp"

namespace entcost {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using complex_t = std::complex<double>;

// Dense-entry cap: mixed-state matrices stay at n <= 10 qubits and pure
// amplitude vectors at n <= 20.
inline constexpr std::int64_t kMaxDenseEntries = std::int64_t{1} << 20;

// Ordered list of subsystem dimensions. Qubit registers are all-2; the
// intermediate bipartite states produced by local-support compression may
// carry general dimensions.
struct RegisterLayout {
  std::vector<int> dims;

  int sites() const { return static_cast<int>(dims.size()); }
  std::int64_t total() const;
  bool all_qubits() const;

  static RegisterLayout qubits(int n);
  static RegisterLayout bipartite(int da, int db) { return {{da, db}}; }
};

// A pure amplitude vector or a density matrix over a register.
// Index convention: subsystem 0 is the leftmost tensor factor, i.e. the
// most significant digit of a basis index (for qubits, bit n-1-i of the
// basis index belongs to qubit i).
class State {
 public:
  static State pure(RegisterLayout layout, ComplexVector amplitudes);
  static State mixed(RegisterLayout layout, ComplexMatrix density);

  bool is_pure() const { return amps_.has_value(); }
  const RegisterLayout& layout() const { return layout_; }
  std::int64_t dim() const { return layout_.total(); }
  int sites() const { return layout_.sites(); }

  const ComplexVector& amplitudes() const;
  const ComplexMatrix& density_matrix() const;
  ComplexMatrix to_density() const;  // materializes |psi><psi| if pure

 private:
  State() = default;
  RegisterLayout layout_;
  std::optional<ComplexVector> amps_;
  std::optional<ComplexMatrix> rho_;
};

// Full PSD validation (eigenvalue check); the State factories only run the
// cheap O(d^2) checks. Used by tests and CLI entry points.
void check_density_psd(const State& state, double tol = 1e-10);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// Reduced state on the subsystems in `keep` (register order preserved).
State partial_trace(const State& state, std::vector<int> keep);

// Reorders subsystems: output site j is input site perm[j].
State permute_subsystems(const State& state, const std::vector<int>& perm);

// Merges runs of adjacent subsystems into single sites (layout
// reinterpretation only, no data movement). group_sizes must sum to sites().
State regroup(const State& state, const std::vector<int>& group_sizes);

struct EigResult {
  RealVector values;      // descending
  ComplexMatrix vectors;  // orthonormal columns, matching order
};

// Hermitian eigendecomposition, eigenvalues sorted descending.
EigResult eig_hermitian(const ComplexMatrix& m, double hermiticity_tol = 1e-8);

// Binary entropy in bits; h(0) = h(1) = 0.
double binary_entropy(double x);

// -sum lambda log2 lambda. Eigenvalues in [-1e-10, 0) are clamped to zero;
// more negative ones violate the density-matrix contract.
double von_neumann_entropy(const State& rho);
double von_neumann_entropy(const ComplexMatrix& rho);

// I (x) u (x) I with a 2x2 unitary u on `target`.
State apply_local_unitary(const State& state, const ComplexMatrix& u, int target);

// tr(rho^2); 1 for pure states.
double purity(const State& state);

}  // namespace entcost

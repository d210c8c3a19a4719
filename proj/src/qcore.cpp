#include "entcost/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entcost {

namespace {

constexpr double kStateTol = 1e-10;

// Strides of a mixed-radix layout; stride[i] multiplies the digit of site i.
std::vector<std::int64_t> strides_of(const std::vector<int>& dims) {
  std::vector<std::int64_t> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
    s[i] = s[i + 1] * dims[i + 1];
  }
  return s;
}

// Offsets into the full index space contributed by the digits of the sites
// in `sites`, enumerated in their own mixed-radix order.
std::vector<std::int64_t> digit_offsets(const std::vector<int>& dims,
                                        const std::vector<std::int64_t>& strides,
                                        const std::vector<int>& sites) {
  std::int64_t count = 1;
  for (int s : sites) count *= dims[s];
  std::vector<std::int64_t> offsets(count, 0);
  std::int64_t repeat = count;
  for (int s : sites) {
    repeat /= dims[s];
    std::int64_t idx = 0;
    while (idx < count) {
      for (int digit = 0; digit < dims[s]; ++digit) {
        for (std::int64_t r = 0; r < repeat; ++r) {
          offsets[idx++] += digit * strides[s];
        }
      }
    }
  }
  return offsets;
}

void require_finite(const ComplexMatrix& m) {
  if (!m.allFinite()) throw ContractError("matrix has non-finite entries");
}

}  // namespace

std::int64_t RegisterLayout::total() const {
  std::int64_t t = 1;
  for (int d : dims) {
    if (d < 1) throw ArgumentError("subsystem dimension must be >= 1");
    t *= d;
  }
  return t;
}

bool RegisterLayout::all_qubits() const {
  return std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; });
}

RegisterLayout RegisterLayout::qubits(int n) {
  if (n < 1) throw ArgumentError("register needs at least one qubit");
  RegisterLayout layout;
  layout.dims.assign(n, 2);
  if (layout.total() > kMaxDenseEntries) {
    throw SizeError("register exceeds the dense amplitude cap");
  }
  return layout;
}

State State::pure(RegisterLayout layout, ComplexVector amplitudes) {
  if (layout.total() != amplitudes.size()) {
    throw ArgumentError("amplitude vector does not match register dimension");
  }
  if (!amplitudes.allFinite()) throw ContractError("non-finite amplitudes");
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kStateTol) {
    throw ContractError("pure state is not normalized");
  }
  State s;
  s.layout_ = std::move(layout);
  s.amps_ = amplitudes / norm;
  return s;
}

State State::mixed(RegisterLayout layout, ComplexMatrix density) {
  const std::int64_t d = layout.total();
  if (density.rows() != d || density.cols() != d) {
    throw ArgumentError("density matrix does not match register dimension");
  }
  if (d * d > kMaxDenseEntries) {
    throw SizeError("density matrix exceeds the dense entry cap");
  }
  require_finite(density);
  if ((density - density.adjoint()).cwiseAbs().maxCoeff() > kStateTol) {
    throw ContractError("density matrix is not Hermitian");
  }
  const complex_t tr = density.trace();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw ContractError("density matrix trace is not 1");
  }
  for (std::int64_t i = 0; i < d; ++i) {
    if (density(i, i).real() < -kStateTol) {
      throw ContractError("density matrix has a negative diagonal entry");
    }
  }
  State s;
  s.layout_ = std::move(layout);
  ComplexMatrix sym = (density + density.adjoint()) / 2.0;
  s.rho_ = sym / sym.trace().real();
  return s;
}

const ComplexVector& State::amplitudes() const {
  if (!amps_) throw ContractError("state is not pure");
  return *amps_;
}

const ComplexMatrix& State::density_matrix() const {
  if (!rho_) throw ContractError("state is not a density matrix");
  return *rho_;
}

ComplexMatrix State::to_density() const {
  if (rho_) return *rho_;
  return (*amps_) * amps_->adjoint();
}

void check_density_psd(const State& state, double tol) {
  if (state.is_pure()) return;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      state.density_matrix(), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw ContractError("density matrix is not positive semidefinite");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_finite(a);
  require_finite(b);
  const std::int64_t rows = static_cast<std::int64_t>(a.rows()) * b.rows();
  const std::int64_t cols = static_cast<std::int64_t>(a.cols()) * b.cols();
  if (rows * cols > kMaxDenseEntries) {
    throw SizeError("kron result exceeds the dense entry cap");
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  if (!a.allFinite() || !b.allFinite()) {
    throw ContractError("non-finite amplitudes");
  }
  const std::int64_t n = static_cast<std::int64_t>(a.size()) * b.size();
  if (n > kMaxDenseEntries) {
    throw SizeError("kron result exceeds the dense entry cap");
  }
  ComplexVector out(n);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

State partial_trace(const State& state, std::vector<int> keep) {
  if (keep.empty()) throw ArgumentError("partial_trace: empty keep-set");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw ArgumentError("partial_trace: duplicate subsystem index");
  }
  const auto& dims = state.layout().dims;
  if (keep.front() < 0 || keep.back() >= state.sites()) {
    throw ArgumentError("partial_trace: subsystem index out of range");
  }

  std::vector<int> traced;
  for (int i = 0; i < state.sites(); ++i) {
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);
  }

  RegisterLayout out_layout;
  for (int s : keep) out_layout.dims.push_back(dims[s]);
  const std::int64_t dk = out_layout.total();
  if (dk * dk > kMaxDenseEntries) {
    throw SizeError("partial_trace result exceeds the dense entry cap");
  }

  const auto strides = strides_of(dims);
  const auto keep_off = digit_offsets(dims, strides, keep);
  const auto traced_off = digit_offsets(dims, strides, traced);

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  if (state.is_pure()) {
    const ComplexVector& psi = state.amplitudes();
    for (std::size_t t = 0; t < traced_off.size(); ++t) {
      for (std::int64_t r = 0; r < dk; ++r) {
        const complex_t ar = psi(keep_off[r] + traced_off[t]);
        if (ar == complex_t{0.0, 0.0}) continue;
        for (std::int64_t c = 0; c < dk; ++c) {
          out(r, c) += ar * std::conj(psi(keep_off[c] + traced_off[t]));
        }
      }
    }
  } else {
    const ComplexMatrix& rho = state.density_matrix();
    for (std::int64_t r = 0; r < dk; ++r) {
      for (std::int64_t c = 0; c < dk; ++c) {
        complex_t acc{0.0, 0.0};
        for (std::size_t t = 0; t < traced_off.size(); ++t) {
          acc += rho(keep_off[r] + traced_off[t], keep_off[c] + traced_off[t]);
        }
        out(r, c) = acc;
      }
    }
  }
  return State::mixed(std::move(out_layout), std::move(out));
}

State permute_subsystems(const State& state, const std::vector<int>& perm) {
  const int n = state.sites();
  if (static_cast<int>(perm.size()) != n) {
    throw ArgumentError("permutation length does not match register");
  }
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) throw ArgumentError("invalid permutation");
    seen[p] = true;
  }

  const auto& dims = state.layout().dims;
  RegisterLayout out_layout;
  for (int j = 0; j < n; ++j) out_layout.dims.push_back(dims[perm[j]]);

  const auto old_strides = strides_of(dims);
  const std::int64_t d = state.dim();
  std::vector<std::int64_t> old_of_new(d, 0);
  {
    std::vector<int> digit(n, 0);
    for (std::int64_t x = 0; x < d; ++x) {
      std::int64_t old_index = 0;
      for (int j = 0; j < n; ++j) {
        old_index += static_cast<std::int64_t>(digit[j]) * old_strides[perm[j]];
      }
      old_of_new[x] = old_index;
      for (int j = n - 1; j >= 0; --j) {
        if (++digit[j] < out_layout.dims[j]) break;
        digit[j] = 0;
      }
    }
  }

  if (state.is_pure()) {
    const ComplexVector& in = state.amplitudes();
    ComplexVector out(d);
    for (std::int64_t x = 0; x < d; ++x) out(x) = in(old_of_new[x]);
    return State::pure(std::move(out_layout), std::move(out));
  }
  const ComplexMatrix& in = state.density_matrix();
  ComplexMatrix out(d, d);
  for (std::int64_t r = 0; r < d; ++r) {
    for (std::int64_t c = 0; c < d; ++c) {
      out(r, c) = in(old_of_new[r], old_of_new[c]);
    }
  }
  return State::mixed(std::move(out_layout), std::move(out));
}

State regroup(const State& state, const std::vector<int>& group_sizes) {
  const auto& dims = state.layout().dims;
  RegisterLayout out_layout;
  int at = 0;
  for (int size : group_sizes) {
    if (size < 1 || at + size > state.sites()) {
      throw ArgumentError("regroup sizes do not partition the register");
    }
    int d = 1;
    for (int i = 0; i < size; ++i) d *= dims[at + i];
    out_layout.dims.push_back(d);
    at += size;
  }
  if (at != state.sites()) {
    throw ArgumentError("regroup sizes do not partition the register");
  }
  if (state.is_pure()) {
    return State::pure(std::move(out_layout), state.amplitudes());
  }
  return State::mixed(std::move(out_layout), state.density_matrix());
}

EigResult eig_hermitian(const ComplexMatrix& m, double hermiticity_tol) {
  if (m.rows() != m.cols()) throw ArgumentError("eig_hermitian: not square");
  require_finite(m);
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tol) {
    throw ContractError("eig_hermitian: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((m + m.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw ContractError("eig_hermitian: solver failed");
  }
  const Eigen::Index d = m.rows();
  EigResult out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = ComplexMatrix(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    out.vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

double binary_entropy(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12) {
    throw ArgumentError("binary_entropy: argument outside [0, 1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const EigResult eig = eig_hermitian(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lambda = eig.values(i);
    if (lambda < -1e-10) {
      throw ContractError("von_neumann_entropy: negative eigenvalue");
    }
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

double von_neumann_entropy(const State& rho) {
  if (rho.is_pure()) return 0.0;
  return von_neumann_entropy(rho.density_matrix());
}

State apply_local_unitary(const State& state, const ComplexMatrix& u, int target) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw ArgumentError("apply_local_unitary: unitary must be 2x2");
  }
  if (target < 0 || target >= state.sites() || state.layout().dims[target] != 2) {
    throw ArgumentError("apply_local_unitary: bad target");
  }
  if ((u.adjoint() * u - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() >
      1e-10) {
    throw ContractError("apply_local_unitary: matrix is not unitary");
  }

  const auto strides = strides_of(state.layout().dims);
  const std::int64_t stride = strides[target];
  const std::int64_t d = state.dim();

  auto for_each_pair = [&](auto&& fn) {
    for (std::int64_t hi = 0; hi < d; hi += 2 * stride) {
      for (std::int64_t lo = 0; lo < stride; ++lo) {
        fn(hi + lo, hi + lo + stride);
      }
    }
  };

  if (state.is_pure()) {
    ComplexVector psi = state.amplitudes();
    for_each_pair([&](std::int64_t i0, std::int64_t i1) {
      const complex_t a0 = psi(i0), a1 = psi(i1);
      psi(i0) = u(0, 0) * a0 + u(0, 1) * a1;
      psi(i1) = u(1, 0) * a0 + u(1, 1) * a1;
    });
    return State::pure(state.layout(), std::move(psi));
  }

  ComplexMatrix rho = state.density_matrix();
  for (std::int64_t c = 0; c < d; ++c) {  // rho <- U rho
    for_each_pair([&](std::int64_t i0, std::int64_t i1) {
      const complex_t a0 = rho(i0, c), a1 = rho(i1, c);
      rho(i0, c) = u(0, 0) * a0 + u(0, 1) * a1;
      rho(i1, c) = u(1, 0) * a0 + u(1, 1) * a1;
    });
  }
  for (std::int64_t r = 0; r < d; ++r) {  // rho <- rho U^dagger
    for_each_pair([&](std::int64_t c0, std::int64_t c1) {
      const complex_t a0 = rho(r, c0), a1 = rho(r, c1);
      rho(r, c0) = a0 * std::conj(u(0, 0)) + a1 * std::conj(u(0, 1));
      rho(r, c1) = a0 * std::conj(u(1, 0)) + a1 * std::conj(u(1, 1));
    });
  }
  return State::mixed(state.layout(), std::move(rho));
}

double purity(const State& state) {
  if (state.is_pure()) return 1.0;
  return state.density_matrix().squaredNorm();
}

}  // namespace entcost

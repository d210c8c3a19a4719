#pragma once

#include <string>
#include <utility>
#include <vector>

#include "entcost/qcore.hpp"

namespace entcost {

// |GHZ_n> = (|0...0> + |1...1>)/sqrt(2); n = 1 gives (|0> + |1>)/sqrt(2).
State ghz(int n);

// |W_n> = sum_i |0...1_i...0> / sqrt(n).
State w(int n);

// |GHZ_2>.
State bell();

// |0>^n.
State zero_state(int n);

// rho_{W,k} = (k/n)|W_k><W_k| + (1 - k/n)|0^k><0^k|, built directly.
State w_reduced(int k, int n);

// sqrt(m/k)|10> + sqrt((k-m)/k)|01>, 1 <= m < k.
State psi_mk(int m, int k);

// Abstract syntax for the CLI state grammar:
//   ghz(N) | w(N) | bell | zero(N), products with '*',
//   mixtures mix(p1:spec1, p2:spec2, ...).
struct StateSpec {
  enum class Kind { Ghz, W, Bell, Zero, Product, Mix };

  Kind kind = Kind::Zero;
  int n = 1;                                          // Ghz, W, Zero
  std::vector<StateSpec> factors;                     // Product
  std::vector<std::pair<double, StateSpec>> branches; // Mix

  int qubit_count() const;
  std::string to_string() const;
};

StateSpec parse_state_spec(const std::string& text);

// PRODUCT -> tensor product in listed order (pure representation kept when
// all factors are pure); MIX -> density-matrix convex combination.
State build(const StateSpec& spec);

}  // namespace entcost

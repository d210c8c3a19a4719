#include "entcost/states.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace entcost {

State ghz(int n) {
  if (n < 1) throw ArgumentError("ghz: n must be >= 1");
  RegisterLayout layout = RegisterLayout::qubits(n);
  ComplexVector amps = ComplexVector::Zero(layout.total());
  const double r = 1.0 / std::sqrt(2.0);
  amps(0) = r;
  amps(layout.total() - 1) = r;
  return State::pure(std::move(layout), std::move(amps));
}

State w(int n) {
  if (n < 1) throw ArgumentError("w: n must be >= 1");
  RegisterLayout layout = RegisterLayout::qubits(n);
  ComplexVector amps = ComplexVector::Zero(layout.total());
  const double r = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    amps(std::int64_t{1} << (n - 1 - i)) = r;  // qubit i excited
  }
  return State::pure(std::move(layout), std::move(amps));
}

State bell() { return ghz(2); }

State zero_state(int n) {
  RegisterLayout layout = RegisterLayout::qubits(n);
  ComplexVector amps = ComplexVector::Zero(layout.total());
  amps(0) = 1.0;
  return State::pure(std::move(layout), std::move(amps));
}

State w_reduced(int k, int n) {
  if (k < 1 || k > n) throw ArgumentError("w_reduced: need 1 <= k <= n");
  const State wk = w(k);
  const std::int64_t d = wk.dim();
  const double p = static_cast<double>(k) / n;
  ComplexMatrix rho = p * (wk.amplitudes() * wk.amplitudes().adjoint());
  rho(0, 0) += 1.0 - p;
  return State::mixed(RegisterLayout::qubits(k), std::move(rho));
  (void)d;
}

State psi_mk(int m, int k) {
  if (m < 1 || m >= k) throw ArgumentError("psi_mk: need 1 <= m < k");
  ComplexVector amps = ComplexVector::Zero(4);
  amps(2) = std::sqrt(static_cast<double>(m) / k);   // |10>
  amps(1) = std::sqrt(static_cast<double>(k - m) / k);  // |01>
  return State::pure(RegisterLayout::qubits(2), std::move(amps));
}

int StateSpec::qubit_count() const {
  switch (kind) {
    case Kind::Ghz:
    case Kind::W:
    case Kind::Zero:
      return n;
    case Kind::Bell:
      return 2;
    case Kind::Product: {
      int total = 0;
      for (const auto& f : factors) total += f.qubit_count();
      return total;
    }
    case Kind::Mix:
      return branches.empty() ? 0 : branches.front().second.qubit_count();
  }
  return 0;
}

std::string StateSpec::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Ghz:
      out << "ghz(" << n << ")";
      break;
    case Kind::W:
      out << "w(" << n << ")";
      break;
    case Kind::Bell:
      out << "bell";
      break;
    case Kind::Zero:
      out << "zero(" << n << ")";
      break;
    case Kind::Product:
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out << "*";
        out << factors[i].to_string();
      }
      break;
    case Kind::Mix:
      out << "mix(";
      for (std::size_t i = 0; i < branches.size(); ++i) {
        if (i) out << ", ";
        out << branches[i].first << ":" << branches[i].second.to_string();
      }
      out << ")";
      break;
  }
  return out.str();
}

namespace {

// Recursive-descent parser for the state grammar.
class SpecParser {
 public:
  explicit SpecParser(const std::string& text) : text_(text) {}

  StateSpec parse() {
    StateSpec spec = parse_product();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    validate(spec);
    return spec;
  }

 private:
  StateSpec parse_product() {
    std::vector<StateSpec> factors{parse_atom()};
    skip_ws();
    while (peek() == '*') {
      ++pos_;
      factors.push_back(parse_atom());
      skip_ws();
    }
    if (factors.size() == 1) return factors.front();
    StateSpec spec;
    spec.kind = StateSpec::Kind::Product;
    spec.factors = std::move(factors);
    return spec;
  }

  StateSpec parse_atom() {
    skip_ws();
    const std::string name = parse_ident();
    StateSpec spec;
    if (name == "bell") {
      spec.kind = StateSpec::Kind::Bell;
      return spec;
    }
    if (name == "ghz" || name == "w" || name == "zero") {
      spec.kind = name == "ghz"  ? StateSpec::Kind::Ghz
                  : name == "w" ? StateSpec::Kind::W
                                : StateSpec::Kind::Zero;
      expect('(');
      spec.n = parse_int();
      expect(')');
      return spec;
    }
    if (name == "mix") {
      spec.kind = StateSpec::Kind::Mix;
      expect('(');
      while (true) {
        const double weight = parse_number();
        expect(':');
        spec.branches.emplace_back(weight, parse_product());
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
      expect(')');
      return spec;
    }
    fail("unknown state family '" + name + "'");
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a state family name");
    return text_.substr(start, pos_ - start);
  }

  int parse_int() {
    const double v = parse_number();
    const int n = static_cast<int>(v);
    if (v != static_cast<double>(n)) fail("expected an integer");
    return n;
  }

  double parse_number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
            text_[pos_] == '-' || text_[pos_] == '+')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    const std::string token = text_.substr(start, pos_ - start);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) fail("bad number '" + token + "'");
    return v;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ArgumentError("state spec: " + why + " at position " +
                        std::to_string(pos_));
  }

  void validate(const StateSpec& spec) const {
    switch (spec.kind) {
      case StateSpec::Kind::Ghz:
      case StateSpec::Kind::W:
      case StateSpec::Kind::Zero:
        if (spec.n < 1) throw ArgumentError("state spec: counts must be >= 1");
        break;
      case StateSpec::Kind::Bell:
        break;
      case StateSpec::Kind::Product:
        for (const auto& f : spec.factors) validate(f);
        break;
      case StateSpec::Kind::Mix: {
        double sum = 0.0;
        const int qubits = spec.branches.front().second.qubit_count();
        for (const auto& [weight, branch] : spec.branches) {
          if (weight <= 0.0) throw ArgumentError("state spec: mix weights must be positive");
          sum += weight;
          validate(branch);
          if (branch.qubit_count() != qubits) {
            throw ArgumentError("state spec: mix branches differ in qubit count");
          }
        }
        if (std::abs(sum - 1.0) > 1e-10) {
          throw ArgumentError("state spec: mix weights must sum to 1");
        }
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

StateSpec parse_state_spec(const std::string& text) {
  return SpecParser(text).parse();
}

State build(const StateSpec& spec) {
  switch (spec.kind) {
    case StateSpec::Kind::Ghz:
      return ghz(spec.n);
    case StateSpec::Kind::W:
      return w(spec.n);
    case StateSpec::Kind::Bell:
      return bell();
    case StateSpec::Kind::Zero:
      return zero_state(spec.n);
    case StateSpec::Kind::Product: {
      if (spec.factors.empty()) throw ArgumentError("empty product");
      std::vector<State> parts;
      parts.reserve(spec.factors.size());
      bool all_pure = true;
      for (const auto& f : spec.factors) {
        parts.push_back(build(f));
        all_pure = all_pure && parts.back().is_pure();
      }
      RegisterLayout layout = RegisterLayout::qubits(spec.qubit_count());
      if (all_pure) {
        ComplexVector amps = parts.front().amplitudes();
        for (std::size_t i = 1; i < parts.size(); ++i) {
          amps = kron(amps, parts[i].amplitudes());
        }
        return State::pure(std::move(layout), std::move(amps));
      }
      ComplexMatrix rho = parts.front().to_density();
      for (std::size_t i = 1; i < parts.size(); ++i) {
        rho = kron(rho, parts[i].to_density());
      }
      return State::mixed(std::move(layout), std::move(rho));
    }
    case StateSpec::Kind::Mix: {
      if (spec.branches.empty()) throw ArgumentError("empty mixture");
      double sum = 0.0;
      for (const auto& [weight, branch] : spec.branches) {
        if (weight <= 0.0) throw ArgumentError("mix weights must be positive");
        sum += weight;
        (void)branch;
      }
      if (std::abs(sum - 1.0) > 1e-10) {
        throw ArgumentError("mix weights must sum to 1");
      }
      const int n = spec.qubit_count();
      RegisterLayout layout = RegisterLayout::qubits(n);
      ComplexMatrix rho = ComplexMatrix::Zero(layout.total(), layout.total());
      for (const auto& [weight, branch] : spec.branches) {
        const State s = build(branch);
        if (s.sites() != n) {
          throw ArgumentError("mix branches differ in qubit count");
        }
        rho += weight * s.to_density();
      }
      return State::mixed(std::move(layout), std::move(rho));
    }
  }
  throw ArgumentError("invalid state spec");
}

}  // namespace entcost

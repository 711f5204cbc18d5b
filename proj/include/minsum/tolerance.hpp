// Tolerance policy and the tri-state verdict every predicate returns.
#pragma once

#include <cstdint>
#include <string_view>

namespace minsum {

/// Scale-relative tolerance: eps = rel * (1 + scale), where scale is the
/// largest input magnitude of the query.
struct Tolerance {
  double rel = 1e-9;

  double eps(double scale) const { return rel * (1.0 + scale); }
};

enum class State : std::uint8_t { inside, boundary, outside };

std::string_view to_string(State s);

/// |margin| <= eps is boundary; the sign decides otherwise.
State classify(double margin, double eps);

/// Clauses of the bounded two-nonsmooth characterization. Bit 0 is set when
/// both base norm conditions hold; bits 1..3 are clauses (i), (ii), (iii).
class ConditionSet {
 public:
  enum Bit : std::uint8_t {
    base_norms = 1u << 0,
    clause_i = 1u << 1,
    clause_ii = 1u << 2,
    clause_iii = 1u << 3,
  };

  constexpr ConditionSet() = default;
  constexpr explicit ConditionSet(std::uint8_t bits) : bits_(bits & 0x0f) {}

  constexpr bool has(Bit b) const { return (bits_ & b) != 0; }
  constexpr void set(Bit b) { bits_ |= b; }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool operator==(const ConditionSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

struct Verdict {
  State state = State::outside;
  double margin = 0.0;
  ConditionSet fired;

  /// Member of the closed potential-minimizer set (inside or on its boundary).
  bool member() const { return state != State::outside; }
};

Verdict make_verdict(double margin, double eps, ConditionSet fired = {});

}  // namespace minsum

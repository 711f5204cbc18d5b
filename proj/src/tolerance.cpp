#include "minsum/tolerance.hpp"

#include <cmath>

namespace minsum {

std::string_view to_string(State s) {
  switch (s) {
    case State::inside:
      return "inside";
    case State::boundary:
      return "boundary";
    case State::outside:
      return "outside";
  }
  return "outside";
}

State classify(double margin, double eps) {
  if (std::isnan(margin)) return State::outside;
  if (std::abs(margin) <= eps) return State::boundary;
  return margin > 0.0 ? State::inside : State::outside;
}

Verdict make_verdict(double margin, double eps, ConditionSet fired) {
  return Verdict{classify(margin, eps), margin, fired};
}

}  // namespace minsum

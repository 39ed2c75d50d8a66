#pragma once

#include <cstddef>
#include <vector>

#include "polyvol/rational.hpp"

namespace polyvol {

// Balanced accumulator for long sums of rationals.  Adding a short fraction
// to a long-running total costs a full-size gcd every time; instead each
// level accumulates at most `capacity` summands and then spills into the
// next level, so summands of similar size meet each other.  The result is
// exact and independent of the push order up to rational arithmetic, which
// is commutative anyway.
template <class Int>
class AdditionPyramid {
public:
  explicit AdditionPyramid(size_t capacity = 8) : capacity_(capacity) {}

  void add(const Rational<Int>& s) { push(0, s); }

  Rational<Int> total() const {
    Rational<Int> t;
    for (const auto& q : level_) t += q;
    return t;
  }

  void clear() {
    level_.clear();
    count_.clear();
  }

  size_t levels() const { return level_.size(); }

private:
  void push(size_t j, const Rational<Int>& s) {
    if (j == level_.size()) {
      level_.push_back(s);
      count_.push_back(1);
      return;
    }
    if (count_[j] < capacity_) {
      level_[j] += s;
      ++count_[j];
    } else {
      Rational<Int> carry = level_[j];
      level_[j] = s;
      count_[j] = 1;
      push(j + 1, carry);
    }
  }

  size_t capacity_;
  std::vector<Rational<Int>> level_;
  std::vector<size_t> count_;
};

}  // namespace polyvol

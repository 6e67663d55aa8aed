#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klrcalc/errors.hpp"
#include "klrcalc/laurent.hpp"

namespace klrcalc {

// One graded dimension: a definite count or no commitment at all. Unknown is
// a refusal, never a guess, so it absorbs any arithmetic it touches.
using DimValue = std::optional<long long>;  // nullopt == Unknown

inline DimValue dimUnknown() { return std::nullopt; }

// Map degree -> DimValue over an explicit closed window [lo, hi]. Degrees
// outside the window are implicitly Unknown. Scratch arithmetic may hold
// signed entries; validateNonnegative() gates the public results.
class DimTable {
 public:
  DimTable() : lo_(0), hi_(-1) {}
  DimTable(int lo, int hi, DimValue fill = dimUnknown());

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool inWindow(int d) const { return d >= lo_ && d <= hi_; }

  DimValue at(int degree) const {
    return inWindow(degree) ? vals_[degree - lo_] : dimUnknown();
  }
  void set(int degree, DimValue v) {
    if (inWindow(degree)) vals_[degree - lo_] = v;
  }

  static DimTable zero(int lo, int hi) { return DimTable(lo, hi, 0); }

  // Accumulate `coeff (*) other` into this table: per degree d the sum over
  // degrees e of coeff_e * other(d - e). An Unknown read under a nonzero
  // coefficient makes the whole entry Unknown.
  void addScaled(const DimTable& other, const LaurentInt& coeff);

  bool operator==(const DimTable& o) const {
    return lo_ == o.lo_ && hi_ == o.hi_ && vals_ == o.vals_;
  }

  // Throws NegativeDimensionError if a definite entry is negative.
  void validateNonnegative() const;

  std::string str() const;

 private:
  int lo_, hi_;
  std::vector<DimValue> vals_;
};

// Convolution-accumulate as a value: a + coeff (*) b over a's window.
DimTable dimAdd(const DimTable& a, const DimTable& b, const LaurentInt& coeff);

}  // namespace klrcalc

#include "klrcalc/dimtable.hpp"

namespace klrcalc {

DimTable::DimTable(int lo, int hi, DimValue fill) : lo_(lo), hi_(hi) {
  if (hi < lo) throw Error("dimension window is empty");
  vals_.assign(static_cast<size_t>(hi - lo + 1), fill);
}

void DimTable::addScaled(const DimTable& other, const LaurentInt& coeff) {
  if (coeff.isZero()) return;
  for (int d = lo_; d <= hi_; ++d) {
    DimValue acc = at(d);
    if (!acc.has_value()) continue;  // already Unknown, stays Unknown
    for (const auto& [e, c] : coeff.terms()) {
      DimValue v = other.at(d - e);
      if (!v.has_value()) { acc = dimUnknown(); break; }
      *acc += c * *v;
    }
    set(d, acc);
  }
}

void DimTable::validateNonnegative() const {
  for (int d = lo_; d <= hi_; ++d) {
    DimValue v = at(d);
    if (v.has_value() && *v < 0)
      throw NegativeDimensionError("negative graded dimension at degree " +
                                   std::to_string(d));
  }
}

std::string DimTable::str() const {
  std::string out = "{";
  for (int d = lo_; d <= hi_; ++d) {
    if (d > lo_) out += ", ";
    out += std::to_string(d) + ": ";
    DimValue v = at(d);
    out += v.has_value() ? std::to_string(*v) : "?";
  }
  return out + "}";
}

DimTable dimAdd(const DimTable& a, const DimTable& b, const LaurentInt& coeff) {
  DimTable out = a;
  out.addScaled(b, coeff);
  return out;
}

}  // namespace klrcalc

#pragma once

#include <map>
#include <string>
#include <vector>

#include "klrcalc/errors.hpp"

namespace klrcalc {

// Laurent polynomial in one variable q with integer coefficients, stored
// sparsely as degree -> coefficient with no zero entries. The map ordering
// doubles as the canonical serialization order.
class LaurentInt {
 public:
  LaurentInt() = default;
  explicit LaurentInt(long long constant) {
    if (constant != 0) coeffs_[0] = constant;
  }
  static LaurentInt monomial(int degree, long long coeff = 1) {
    LaurentInt p;
    if (coeff != 0) p.coeffs_[degree] = coeff;
    return p;
  }

  bool isZero() const { return coeffs_.empty(); }
  long long coeff(int degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? 0 : it->second;
  }
  int minDegree() const;  // throws on zero polynomial
  int maxDegree() const;
  const std::map<int, long long>& terms() const { return coeffs_; }

  bool isEffective() const;      // all coefficients >= 0
  bool isBarInvariant() const;   // symmetric under q -> q^{-1}
  LaurentInt mirror() const;     // q -> q^{-1}
  long long evalAtOne() const;   // q = 1 specialization

  LaurentInt& operator+=(const LaurentInt& o);
  LaurentInt& operator-=(const LaurentInt& o);
  friend LaurentInt operator+(LaurentInt a, const LaurentInt& b) { return a += b; }
  friend LaurentInt operator-(LaurentInt a, const LaurentInt& b) { return a -= b; }
  friend LaurentInt operator*(const LaurentInt& a, const LaurentInt& b);
  LaurentInt operator-() const;
  friend bool operator==(const LaurentInt& a, const LaurentInt& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentInt& a, const LaurentInt& b) {
    return !(a == b);
  }
  friend bool operator<(const LaurentInt& a, const LaurentInt& b) {
    return a.coeffs_ < b.coeffs_;
  }

  // Exact division in Z[q, q^{-1}]; throws NonDivisibleError when the
  // quotient does not exist there.
  LaurentInt dividedBy(const LaurentInt& divisor) const;

  // Rendered like "q^2 + 2 + q^-2"; for logs and --pretty output.
  std::string str() const;

  // Canonical pair list [[degree, coeff], ...] sorted by degree.
  std::vector<std::pair<int, long long>> pairs() const;
  static LaurentInt fromPairs(const std::vector<std::pair<int, long long>>& p);

 private:
  void trim();
  std::map<int, long long> coeffs_;
};

// Balanced quantum integer: [n] = q^{n-1} + q^{n-3} + ... + q^{-n+1},
// [-n] = -[n], [0] = 0.
LaurentInt qint(long long n);

// Quantum binomial via the defining ratio of quantum factorials, divided
// exactly. Requires 0 <= k <= n.
LaurentInt qbinom(long long n, long long k);

}  // namespace klrcalc

#include "klrcalc/laurent.hpp"

#include <algorithm>

namespace klrcalc {

void LaurentInt::trim() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == 0) it = coeffs_.erase(it); else ++it;
  }
}

int LaurentInt::minDegree() const {
  if (coeffs_.empty()) throw Error("degree of zero polynomial");
  return coeffs_.begin()->first;
}

int LaurentInt::maxDegree() const {
  if (coeffs_.empty()) throw Error("degree of zero polynomial");
  return coeffs_.rbegin()->first;
}

bool LaurentInt::isEffective() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const auto& t) { return t.second >= 0; });
}

bool LaurentInt::isBarInvariant() const { return *this == mirror(); }

LaurentInt LaurentInt::mirror() const {
  LaurentInt out;
  for (const auto& [d, c] : coeffs_) out.coeffs_[-d] = c;
  return out;
}

long long LaurentInt::evalAtOne() const {
  long long total = 0;
  for (const auto& [d, c] : coeffs_) total += c;
  return total;
}

LaurentInt& LaurentInt::operator+=(const LaurentInt& o) {
  for (const auto& [d, c] : o.coeffs_) coeffs_[d] += c;
  trim();
  return *this;
}

LaurentInt& LaurentInt::operator-=(const LaurentInt& o) {
  for (const auto& [d, c] : o.coeffs_) coeffs_[d] -= c;
  trim();
  return *this;
}

LaurentInt operator*(const LaurentInt& a, const LaurentInt& b) {
  LaurentInt out;
  for (const auto& [da, ca] : a.coeffs_)
    for (const auto& [db, cb] : b.coeffs_) out.coeffs_[da + db] += ca * cb;
  out.trim();
  return out;
}

LaurentInt LaurentInt::operator-() const {
  LaurentInt out;
  for (const auto& [d, c] : coeffs_) out.coeffs_[d] = -c;
  return out;
}

LaurentInt LaurentInt::dividedBy(const LaurentInt& divisor) const {
  if (divisor.isZero()) throw NonDivisibleError("division by zero polynomial");
  if (isZero()) return LaurentInt();
  // Long division from the top degree; Laurent units make the degree shift
  // harmless, so only coefficient divisibility and a zero remainder matter.
  LaurentInt rem = *this;
  LaurentInt quot;
  const int dTop = divisor.maxDegree();
  const long long dLead = divisor.coeffs_.rbegin()->second;
  while (!rem.isZero()) {
    const int rTop = rem.maxDegree();
    const long long rLead = rem.coeffs_.rbegin()->second;
    if (rem.minDegree() - divisor.minDegree() > rTop - dTop)
      throw NonDivisibleError("remainder in Laurent division");
    if (rLead % dLead != 0)
      throw NonDivisibleError("leading coefficient not divisible");
    LaurentInt term = monomial(rTop - dTop, rLead / dLead);
    quot += term;
    rem -= term * divisor;
    if (!rem.isZero() && rem.maxDegree() >= rTop)
      throw NonDivisibleError("division did not reduce degree");
  }
  return quot;
}

std::string LaurentInt::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  // Highest degree first reads like maths.
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    long long c = it->second;
    int d = it->first;
    if (!out.empty()) {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    } else if (c < 0) {
      out += "-";
      c = -c;
    }
    if (d == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += d == 1 ? "q" : "q^" + std::to_string(d);
    }
  }
  return out;
}

std::vector<std::pair<int, long long>> LaurentInt::pairs() const {
  return {coeffs_.begin(), coeffs_.end()};
}

LaurentInt LaurentInt::fromPairs(
    const std::vector<std::pair<int, long long>>& p) {
  LaurentInt out;
  for (const auto& [d, c] : p) out.coeffs_[d] += c;
  out.trim();
  return out;
}

LaurentInt qint(long long n) {
  LaurentInt out;
  if (n == 0) return out;
  const long long a = n < 0 ? -n : n;
  for (long long k = 0; k < a; ++k)
    out += LaurentInt::monomial(static_cast<int>(a - 1 - 2 * k), n < 0 ? -1 : 1);
  return out;
}

LaurentInt qbinom(long long n, long long k) {
  if (k < 0 || k > n) throw Error("qbinom requires 0 <= k <= n");
  LaurentInt num(1), den(1);
  for (long long t = n - k + 1; t <= n; ++t) num = num * qint(t);
  for (long long t = 1; t <= k; ++t) den = den * qint(t);
  return num.dividedBy(den);
}

}  // namespace klrcalc

#include "klrcalc/rational.hpp"

#include <cstdlib>

namespace klrcalc {

Rational Rational::parse(const std::string& text) {
  size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(text));
    }
    long long n = std::stoll(text.substr(0, slash));
    long long d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw Error("cannot parse rational: '" + text + "'");
  }
}

}  // namespace klrcalc

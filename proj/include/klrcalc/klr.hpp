#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "klrcalc/cartan.hpp"
#include "klrcalc/dimtable.hpp"
#include "klrcalc/errors.hpp"
#include "klrcalc/rational.hpp"

namespace klrcalc {

// ---------------------------------------------------------------------------
// Diagram words over a bottom sequence of strand labels.
//
// A word is a vertical stack of generators applied bottom-up (gens[0] is
// closest to the bottom row): a dot on one strand slot, or a crossing of two
// neighbouring slots. Slots are 1-based, matching the text syntax
// "e(1,2,1); t1 x2 t1" which also reads bottom-up, left to right.
// ---------------------------------------------------------------------------

using IdxSeq = std::vector<int>;  // strand labels (vertices), bottom row

struct KlrGen {
  enum class Kind { Dot, Cross };
  Kind kind = Kind::Dot;
  int pos = 1;  // 1-based slot; a crossing acts on slots pos, pos+1

  friend bool operator==(const KlrGen& a, const KlrGen& b) {
    return a.kind == b.kind && a.pos == b.pos;
  }
  friend bool operator<(const KlrGen& a, const KlrGen& b) {
    return std::tie(a.kind, a.pos) < std::tie(b.kind, b.pos);
  }
};

inline KlrGen dotGen(int pos) { return KlrGen{KlrGen::Kind::Dot, pos}; }
inline KlrGen crossGen(int pos) { return KlrGen{KlrGen::Kind::Cross, pos}; }

using KlrGens = std::vector<KlrGen>;

struct KlrWord {
  IdxSeq bottom;
  KlrGens gens;

  friend bool operator==(const KlrWord& a, const KlrWord& b) {
    return a.bottom == b.bottom && a.gens == b.gens;
  }
};

// Labels of the strand slots above the whole word: the bottom sequence
// permuted by the crossings. Throws on out-of-range generator positions.
IdxSeq topSequence(const KlrWord& w);

// Sum of 2 per dot and -<a,b> per crossing, labels read at the crossing's
// own level.
int degree(const CartanDatum& datum, const KlrWord& w);

// A scalar-linear combination of words sharing one bottom row and one top
// row. Zero coefficients are never stored; the top row is pinned by the
// first term added.
class KlrElement {
 public:
  explicit KlrElement(IdxSeq bottom) : bottom_(std::move(bottom)) {}

  const IdxSeq& bottom() const { return bottom_; }
  bool isZero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  // Adds coeff * (bottom; gens). Throws when the word's top row clashes
  // with the element's.
  void add(const KlrGens& gens, const Rational& coeff);

  Rational coeff(const KlrGens& gens) const;
  const std::map<KlrGens, Rational>& terms() const { return terms_; }

  friend bool operator==(const KlrElement& a, const KlrElement& b) {
    return a.bottom_ == b.bottom_ && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  IdxSeq bottom_;
  std::optional<IdxSeq> top_;
  std::map<KlrGens, Rational> terms_;
};

// Throws Error unless every term of e has the same degree; returns that
// degree (0 for the zero element).
int homogeneousDegree(const CartanDatum& datum, const KlrElement& e);

struct NormalizeOptions {
  long long stepBudget = 1000000;  // rewrite steps before NonTerminationError
};

// Rewrites the element to the spanning set {tau_w * (dots at the bottom) *
// e(nu)} with w the lexicographically least reduced word of each crossing
// permutation. Dots slide down through crossings (equal-label slides emit
// the pair-removed correction), double crossings resolve by label pattern,
// and braid moves walk each reduced crossing word to its canonical form,
// emitting the triple-removed correction on equal-outer-label patterns.
KlrElement normalize(const KlrElement& e, const CartanDatum& datum,
                     const NormalizeOptions& opts = {});

struct RelationReport {
  long long instancesChecked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Normalizes both sides of every defining relation, embedded across ambient
// strands (up to maxStrands) with all label assignments, under ambient
// generator contexts: every context of up to two extra generators, plus a
// deterministic pseudo-random sample of longer contexts up to four.
RelationReport relationCheck(const CartanDatum& datum, int maxStrands);

// Number of spanning-set words per degree over the window: an upper bound
// on the graded dimension at nu (linear independence is not asserted).
DimTable gradedDimCount(const CartanDatum& datum, const IdxSeq& nu, int lo,
                        int hi);

// ---------------------------------------------------------------------------
// Polynomial model on a constant bottom row (i, i, ..., i): dots multiply by
// their variable and crossings act by divided differences.
// ---------------------------------------------------------------------------

// Sparse polynomial in x_1, x_2, ... with exact rational coefficients.
// Exponent keys store no trailing zeros, so equal polynomials compare equal
// regardless of how many variables each was built with.
class Poly {
 public:
  Poly() = default;
  static Poly constant(const Rational& c);
  static Poly variable(int k);  // x_k, 1-based

  bool isZero() const { return mono_.empty(); }
  void add(std::vector<int> exps, const Rational& c);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.mono_ == b.mono_;
  }

  const std::map<std::vector<int>, Rational>& monomials() const {
    return mono_;
  }
  std::string str() const;

 private:
  std::map<std::vector<int>, Rational> mono_;
};

// (f - f with x_k, x_k+1 swapped) / (x_k - x_k+1); exact on every input.
Poly dividedDifference(const Poly& f, int k);

// Verifies, over every monomial of degree <= 3 in `strands` variables, that
// multiplication and divided differences satisfy the four defining
// identities (both dot slides, the vanishing square, the braid relation).
// Must be called before nilHeckeApply for that strand count; throws
// OracleUnverifiedError listing the failed identity otherwise.
void verifyNilHeckeOracle(int strands);

// Action of an element over a constant bottom row on a polynomial: gens
// apply bottom-up, dots as multiplication, crossings as divided differences.
Poly nilHeckeApply(const KlrElement& e, const Poly& f);

// ---------------------------------------------------------------------------
// Text syntax: "e(1,2,1); t1 x2 t1" with 1-based vertex labels and slots,
// generators reading bottom-up; terms joined by +/- with optional rational
// coefficients ("3/2 e(1,1); x1 - e(1,1); t1").
// ---------------------------------------------------------------------------

KlrElement parseKlrElement(const std::string& text);

}  // namespace klrcalc

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "klrcalc/cartan.hpp"
#include "klrcalc/laurent.hpp"

namespace klrcalc {

// One generator applied to a weight block: raising E_i, lowering F_i, or the
// degree-split square Ed2(i) (E_i^(2); higher powers are out of scope).
enum class LetterKind { E, F, Ed2 };

struct Letter {
  LetterKind kind;
  int vertex;

  // Net root-lattice displacement at `vertex`.
  long long rootSteps() const {
    switch (kind) {
      case LetterKind::E: return 1;
      case LetterKind::F: return -1;
      case LetterKind::Ed2: return 2;
    }
    return 0;
  }
  bool operator==(const Letter& o) const {
    return kind == o.kind && vertex == o.vertex;
  }
  bool operator<(const Letter& o) const {
    if (kind != o.kind) return kind < o.kind;
    return vertex < o.vertex;
  }
  std::string str() const;  // "E1", "F2", "E1^2" (vertices 1-based)
};

inline Letter eLet(int v) { return {LetterKind::E, v}; }
inline Letter fLet(int v) { return {LetterKind::F, v}; }
inline Letter ed2Let(int v) { return {LetterKind::Ed2, v}; }

using Letters = std::vector<Letter>;

std::string lettersStr(const Letters& ls);  // "" renders as "1"

// A composable word: letters listed left to right, rightmost applied first,
// starting from `domain`. The empty word is the identity on its domain block.
struct MorphWord {
  Letters letters;
  Weight domain;

  bool operator==(const MorphWord& o) const {
    return letters == o.letters && domain == o.domain;
  }
  bool operator<(const MorphWord& o) const {
    if (!(domain == o.domain)) return domain < o.domain;
    return letters < o.letters;
  }
  std::string str() const;  // "E1 F2 @ [a,...]"
};

// Codomain weight: domain plus the signed root displacement of the letters.
Weight weightAfter(const MorphWord& w);

// Every block the composition passes through, domain first; Ed2 contributes
// its midpoint block too.
std::vector<Weight> weightProfile(const MorphWord& w);

// A word denotes the zero 1-morphism whenever any block in its profile is
// absent from the support (the composition factors through a zero block).
bool wordSupported(const MorphWord& w, const Support& s);

// Finite Z[q,q^-1]-combination of words sharing one domain block and one
// total displacement. Only effective (coefficient-nonnegative) classes denote
// direct-sum decompositions; signed classes appear mid-rewrite.
class GradedClass {
 public:
  explicit GradedClass(Weight domain) : domain_(std::move(domain)) {}

  const Weight& domain() const { return domain_; }
  const std::map<Letters, LaurentInt>& terms() const { return terms_; }

  void add(const Letters& word, const LaurentInt& coeff);
  LaurentInt coeff(const Letters& word) const;

  bool isZero() const { return terms_.empty(); }
  bool isEffective() const;
  size_t size() const { return terms_.size(); }

  bool operator==(const GradedClass& o) const {
    return domain_ == o.domain_ && terms_ == o.terms_;
  }

  std::string str() const;

 private:
  bool hasDisplacement_ = false;
  Coords displacement_;
  Weight domain_;
  std::map<Letters, LaurentInt> terms_;
};

struct SortOptions {
  // Remove summands that factor through unsupported blocks, at every stage.
  bool drop = true;
  // Throw NegativeMultiplicityError if the final class has a coefficient
  // with a negative entry.
  bool assertEffective = false;
  // Chooses which rewritable position to fire next: receives the number of
  // candidates, returns an index below it. Defaults to "first candidate";
  // randomized by the order-independence tests.
  std::function<size_t(size_t)> pick;
};

// Rewrites every word until all F letters stand left of all E letters, using
// at local block mu: E_i F_i -> F_i E_i + [mu_i] * (pair removed), and
// E_i F_j -> F_j E_i for i != j. Ed2 letters are expanded to E E first and
// the class is divided by [2] per expansion at the end (exact, or
// NonDivisibleError). Relative order inside the E-block and inside the
// F-block is preserved.
GradedClass sortClass(const GradedClass& c, const CartanDatum& datum,
                      const Support& support, const SortOptions& opts = {});

// The opposite normal form: every E letter stands left of every F letter (so
// the F block acts first and the walk dips below the domain block). The local
// rewrite is F_i E_i -> E_i F_i + [-nu_i] * (pair removed) at the block nu
// entering the E letter, which is the same commutation identity read in the
// other direction; the multiplicity is nonnegative wherever nu_i <= 0, making
// this the effective decomposition on the low side of a weight string.
GradedClass antiSortClass(const GradedClass& c, const CartanDatum& datum,
                          const Support& support, const SortOptions& opts = {});

// Sorted effective class of a single word: its direct-sum decomposition over
// sorted words. Zero class when the word factors through a missing block.
GradedClass decompose(const MorphWord& w, const CartanDatum& datum,
                      const Support& support);

// Rewrites the first E_i E_j E_i factor (i != j) into Ed2(i) E_j + E_j Ed2(i).
// Requires <i,j> = -1 (NotAdjacentError otherwise; Error if no such factor).
GradedClass serreRewrite(const MorphWord& w, const CartanDatum& datum);

// Exact nonvanishing for the four vocabulary shapes with a closed criterion
// (E_i; E_j E_i; E_i placed after F_j; E_i E_i placed after F_j, i != j);
// other shapes fall back to "sorted class is nonzero and effective", which
// is sufficient for nonvanishing but not necessary.
bool isNonzero(const MorphWord& w, const CartanDatum& datum,
               const Support& support);

}  // namespace klrcalc

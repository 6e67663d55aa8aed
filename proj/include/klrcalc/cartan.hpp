#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "klrcalc/errors.hpp"
#include "klrcalc/rational.hpp"

namespace klrcalc {

// Finite connected simple graph with its symmetric Cartan matrix
// (2 on the diagonal, -1 across an edge, 0 otherwise) and a table of
// structure scalars t(i,j) for ordered pairs of distinct vertices.
class CartanDatum {
 public:
  CartanDatum(int vertexCount, std::vector<std::pair<int, int>> edges);

  int vertexCount() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int i, int j) const { return cartan(i, j) == -1; }
  // <alpha_i, alpha_j>
  int cartan(int i, int j) const { return c_[static_cast<size_t>(i) * n_ + j]; }

  const Rational& t(int i, int j) const;
  // Scalars must be nonzero, and symmetric whenever <i,j> = 0.
  void setT(int i, int j, const Rational& value);

  // Path graph 0 - 1 - ... - (vertices-1); the type-A datum.
  static CartanDatum lineGraph(int vertices);
  static CartanDatum cycleGraph(int vertices);

 private:
  void checkVertex(int i) const {
    if (i < 0 || i >= n_) throw Error("vertex index out of range");
  }
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> c_;
  std::map<std::pair<int, int>, Rational> t_;
};

using Coords = std::vector<long long>;  // root-lattice coordinates

// A weight in a fixed root-lattice coset: pairings of the coset basepoint
// against each simple root, plus integer coordinates relative to that
// basepoint. pairing(i) = basePairings[i] + sum_j coords[j] * <j,i>.
struct Weight {
  std::vector<long long> basePairings;
  Coords coords;

  bool sameCoset(const Weight& o) const { return basePairings == o.basePairings; }
  bool operator==(const Weight& o) const {
    return basePairings == o.basePairings && coords == o.coords;
  }
  bool operator<(const Weight& o) const {
    if (basePairings != o.basePairings) return basePairings < o.basePairings;
    return coords < o.coords;
  }

  Weight shifted(int vertex, long long steps) const {
    Weight w = *this;
    w.coords[static_cast<size_t>(vertex)] += steps;
    return w;
  }
  std::string str() const;
};

long long pairing(const CartanDatum& datum, const Weight& w, int i);
std::vector<long long> pairings(const CartanDatum& datum, const Weight& w);

// Natural symmetric form of a rational root-lattice vector theta against
// alpha_i, normalized so (alpha_i, alpha_i) = 2: sum_j theta_j <j,i>.
Rational formOnRoots(const CartanDatum& datum,
                     const std::vector<Rational>& theta, int i);

// Finite set of nonzero weights inside one coset.
class Support {
 public:
  Support(std::vector<long long> basePairings, std::set<Coords> coords);

  int vertexCount() const { return static_cast<int>(basePairings_.size()); }
  const std::vector<long long>& basePairings() const { return basePairings_; }
  const std::set<Coords>& coordSet() const { return coords_; }
  size_t size() const { return coords_.size(); }

  // Total on the coset; weights of another coset are never supported.
  bool contains(const Weight& w) const {
    return w.basePairings == basePairings_ && coords_.count(w.coords) > 0;
  }
  Weight weightAt(const Coords& c) const { return Weight{basePairings_, c}; }
  std::vector<Weight> weights() const;

 private:
  std::vector<long long> basePairings_;
  std::set<Coords> coords_;
};

// Per-condition violation report for the integrability axioms that are
// decidable from a finite support: the vanishing lines along alpha_i and
// adjacent alpha_i + alpha_j (trivial for finite input, reported for
// completeness), positivity of <lambda, delta> on triangle/square cycles,
// and the two-out-of-four closure.
struct ConditionReport {
  struct Entry {
    std::string condition;          // "vanish1", "vanish2", "closure"
    std::string detail;             // which line / cycle / vertex pair
    std::vector<Weight> violations; // empty means the condition holds
  };
  std::vector<Entry> entries;
  bool allHold() const;
};

ConditionReport checkConditions(const CartanDatum& datum, const Support& s);

// Weight support of the N-th exterior power of C^m tensor C^n as a module
// for the type A path graph on n-1 vertices: tuples k in {0..m}^n with
// sum N, pairing_i = k[i+1] - k[i]. Throws EmptySupportError if no tuple
// exists.
Support grassmannianSupport(int m, int n, long long N);

}  // namespace klrcalc

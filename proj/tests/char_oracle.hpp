#pragma once

// Brute-force q=1 model used only by tests: the N-th exterior power of
// C^m (x) C^n as vector space with its weight decomposition, raising and
// lowering operators moving one tensor factor between adjacent columns.
// Basis elements are N-subsets of the m*n cells (row a, column i), kept
// sorted by (row, column); a raise/lower step never jumps over another cell
// of the same row, so all exterior-algebra signs are +1 and every operator
// matrix is a 0/1 integer matrix.

#include <algorithm>
#include <vector>

#include "klrcalc/cartan.hpp"
#include "klrcalc/morph.hpp"

namespace charoracle {

using Mat = std::vector<std::vector<long long>>;

inline Mat matZero(size_t dim) {
  return Mat(dim, std::vector<long long>(dim, 0));
}

inline Mat matMul(const Mat& a, const Mat& b) {
  const size_t dim = a.size();
  Mat out = matZero(dim);
  for (size_t r = 0; r < dim; ++r)
    for (size_t k = 0; k < dim; ++k) {
      if (a[r][k] == 0) continue;
      for (size_t c = 0; c < dim; ++c) out[r][c] += a[r][k] * b[k][c];
    }
  return out;
}

inline void matAddScaled(Mat& acc, const Mat& x, long long s) {
  for (size_t r = 0; r < acc.size(); ++r)
    for (size_t c = 0; c < acc.size(); ++c) acc[r][c] += s * x[r][c];
}

class Module {
 public:
  // Cell id = row * n + column.
  Module(int m, int n, long long N) : m_(m), n_(n) {
    std::vector<int> pick;
    enumerate(0, m * n, static_cast<int>(N), pick);
  }

  int columns() const { return n_; }
  size_t dim() const { return basis_.size(); }

  std::vector<long long> columnCounts(size_t b) const {
    std::vector<long long> k(static_cast<size_t>(n_), 0);
    for (int cell : basis_[b]) ++k[static_cast<size_t>(cell % n_)];
    return k;
  }

  // Pairing vector of a basis element for the path graph on n-1 vertices.
  std::vector<long long> pairingsOf(size_t b) const {
    std::vector<long long> k = columnCounts(b);
    std::vector<long long> p(static_cast<size_t>(n_ - 1));
    for (int v = 0; v + 1 < n_; ++v)
      p[static_cast<size_t>(v)] =
          k[static_cast<size_t>(v + 1)] - k[static_cast<size_t>(v)];
    return p;
  }

  Mat projector(const std::vector<long long>& pairings) const {
    Mat out = matZero(dim());
    for (size_t b = 0; b < dim(); ++b)
      if (pairingsOf(b) == pairings) out[b][b] = 1;
    return out;
  }

  // Raising at vertex v moves one cell from column v to column v+1 in the
  // same row; lowering is its transpose. Matrices act on column vectors of
  // basis coefficients: out[target][source] = 1.
  Mat raise(int v) const {
    Mat out = matZero(dim());
    for (size_t b = 0; b < dim(); ++b) {
      for (int cell : basis_[b]) {
        if (cell % n_ != v || v + 1 >= n_) continue;
        const int moved = cell + 1;
        if (std::binary_search(basis_[b].begin(), basis_[b].end(), moved))
          continue;
        std::vector<int> next = basis_[b];
        next.erase(std::find(next.begin(), next.end(), cell));
        next.insert(std::lower_bound(next.begin(), next.end(), moved), moved);
        out[indexOf(next)][b] += 1;
      }
    }
    return out;
  }

  Mat lower(int v) const {
    Mat up = raise(v);
    Mat out = matZero(dim());
    for (size_t r = 0; r < dim(); ++r)
      for (size_t c = 0; c < dim(); ++c) out[c][r] = up[r][c];
    return out;
  }

  Mat letterMatrix(const klrcalc::Letter& l) const {
    switch (l.kind) {
      case klrcalc::LetterKind::E: return raise(l.vertex);
      case klrcalc::LetterKind::F: return lower(l.vertex);
      case klrcalc::LetterKind::Ed2: {
        // At q=1 the square splits as twice the divided square.
        Mat sq = matMul(raise(l.vertex), raise(l.vertex));
        for (auto& row : sq)
          for (auto& x : row) {
            if (x % 2 != 0) throw klrcalc::Error("odd square in q=1 model");
            x /= 2;
          }
        return sq;
      }
    }
    return matZero(dim());
  }

  // Matrix of the whole word, cut down to its domain block on the right.
  Mat wordMatrix(const klrcalc::MorphWord& w,
                 const klrcalc::CartanDatum& datum) const {
    Mat acc = projector(klrcalc::pairings(datum, w.domain));
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      acc = matMul(letterMatrix(*it), acc);
    return acc;
  }

  // q=1 soundness: the word's matrix equals the class's integer combination.
  bool matchesClass(const klrcalc::MorphWord& w, const klrcalc::GradedClass& c,
                    const klrcalc::CartanDatum& datum) const {
    Mat lhs = wordMatrix(w, datum);
    Mat rhs = matZero(dim());
    for (const auto& [word, coeff] : c.terms())
      matAddScaled(rhs, wordMatrix({word, c.domain()}, datum),
                   coeff.evalAtOne());
    return lhs == rhs;
  }

 private:
  void enumerate(int first, int total, int left, std::vector<int>& pick) {
    if (left == 0) {
      basis_.push_back(pick);
      return;
    }
    for (int cell = first; cell + left <= total; ++cell) {
      pick.push_back(cell);
      enumerate(cell + 1, total, left - 1, pick);
      pick.pop_back();
    }
  }

  size_t indexOf(const std::vector<int>& key) const {
    auto it = std::lower_bound(basis_.begin(), basis_.end(), key);
    return static_cast<size_t>(it - basis_.begin());
  }

  int m_, n_;
  std::vector<std::vector<int>> basis_;
};

}  // namespace charoracle

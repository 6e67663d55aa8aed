#include "klrcalc/cartan.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace klrcalc {

CartanDatum::CartanDatum(int vertexCount,
                         std::vector<std::pair<int, int>> edges)
    : n_(vertexCount), edges_(std::move(edges)) {
  if (n_ <= 0) throw Error("graph needs at least one vertex");
  c_.assign(static_cast<size_t>(n_) * n_, 0);
  for (int i = 0; i < n_; ++i) c_[static_cast<size_t>(i) * n_ + i] = 2;
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : edges_) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_) throw Error("edge vertex out of range");
    if (a == b) throw Error("loops are not allowed");
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) throw Error("multiple edges are not allowed");
    c_[static_cast<size_t>(a) * n_ + b] = -1;
    c_[static_cast<size_t>(b) * n_ + a] = -1;
  }
  // Connectivity.
  std::vector<char> vis(static_cast<size_t>(n_), 0);
  std::queue<int> bfs;
  bfs.push(0);
  vis[0] = 1;
  int reached = 1;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (int u = 0; u < n_; ++u)
      if (u != v && cartan(v, u) == -1 && !vis[u]) {
        vis[u] = 1;
        ++reached;
        bfs.push(u);
      }
  }
  if (reached != n_) throw Error("graph must be connected");
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j) t_[{i, j}] = Rational(1);
}

const Rational& CartanDatum::t(int i, int j) const {
  checkVertex(i);
  checkVertex(j);
  if (i == j) throw Error("t(i,i) is not defined");
  return t_.at({i, j});
}

void CartanDatum::setT(int i, int j, const Rational& value) {
  checkVertex(i);
  checkVertex(j);
  if (i == j) throw Error("t(i,i) is not defined");
  if (value.isZero()) throw Error("t scalars must be invertible");
  if (cartan(i, j) == 0 && t_.at({j, i}) != value) {
    // For non-adjacent pairs the scalar is symmetric; keep both slots equal.
    t_[{j, i}] = value;
  }
  t_[{i, j}] = value;
}

CartanDatum CartanDatum::lineGraph(int vertices) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < vertices; ++i) edges.push_back({i, i + 1});
  return CartanDatum(vertices, edges);
}

CartanDatum CartanDatum::cycleGraph(int vertices) {
  if (vertices < 3) throw Error("cycle graph needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < vertices; ++i) edges.push_back({i, (i + 1) % vertices});
  return CartanDatum(vertices, edges);
}

std::string Weight::str() const {
  std::string out = "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(coords[i]);
  }
  return out + ")";
}

long long pairing(const CartanDatum& datum, const Weight& w, int i) {
  long long p = w.basePairings.at(static_cast<size_t>(i));
  for (int j = 0; j < datum.vertexCount(); ++j)
    p += w.coords.at(static_cast<size_t>(j)) * datum.cartan(j, i);
  return p;
}

std::vector<long long> pairings(const CartanDatum& datum, const Weight& w) {
  std::vector<long long> out(static_cast<size_t>(datum.vertexCount()));
  for (int i = 0; i < datum.vertexCount(); ++i)
    out[static_cast<size_t>(i)] = pairing(datum, w, i);
  return out;
}

Rational formOnRoots(const CartanDatum& datum,
                     const std::vector<Rational>& theta, int i) {
  if (static_cast<int>(theta.size()) != datum.vertexCount())
    throw Error("coefficient vector has wrong length");
  Rational out;
  for (int j = 0; j < datum.vertexCount(); ++j)
    out += theta[static_cast<size_t>(j)] * Rational(datum.cartan(j, i));
  return out;
}

Support::Support(std::vector<long long> basePairings, std::set<Coords> coords)
    : basePairings_(std::move(basePairings)), coords_(std::move(coords)) {
  for (const auto& c : coords_)
    if (c.size() != basePairings_.size())
      throw Error("coordinate vector has wrong length");
}

std::vector<Weight> Support::weights() const {
  std::vector<Weight> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(Weight{basePairings_, c});
  return out;
}

bool ConditionReport::allHold() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const Entry& e) { return e.violations.empty(); });
}

namespace {

std::vector<std::vector<int>> triangles(const CartanDatum& d) {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < d.vertexCount(); ++i)
    for (int j = i + 1; j < d.vertexCount(); ++j)
      for (int k = j + 1; k < d.vertexCount(); ++k)
        if (d.adjacent(i, j) && d.adjacent(j, k) && d.adjacent(i, k))
          out.push_back({i, j, k});
  return out;
}

std::vector<std::vector<int>> squares(const CartanDatum& d) {
  // 4-cycles i-j-k-l-i up to rotation and reflection: anchor the smallest
  // vertex first and orient by the smaller neighbour.
  std::vector<std::vector<int>> out;
  const int n = d.vertexCount();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = i + 1; k < n; ++k)
        for (int l = j + 1; l < n; ++l) {
          if (j == k || j == l || k == l) continue;
          if (d.adjacent(i, j) && d.adjacent(j, k) && d.adjacent(k, l) &&
              d.adjacent(l, i) && j < l)
            out.push_back({i, j, k, l});
        }
  return out;
}

}  // namespace

ConditionReport checkConditions(const CartanDatum& datum, const Support& s) {
  ConditionReport report;
  // Vanishing along each alpha_i line and each adjacent alpha_i + alpha_j
  // line holds outright for a finite support; record the entries so the
  // report enumerates everything that was considered.
  for (int i = 0; i < datum.vertexCount(); ++i)
    report.entries.push_back({"vanish1", "alpha_" + std::to_string(i), {}});
  for (const auto& [a, b] : datum.edges())
    report.entries.push_back(
        {"vanish1",
         "alpha_" + std::to_string(std::min(a, b)) + "+alpha_" +
             std::to_string(std::max(a, b)),
         {}});

  auto deltaEntry = [&](const std::vector<int>& cyc, const char* kind) {
    ConditionReport::Entry entry;
    entry.condition = "vanish2";
    entry.detail = kind;
    for (int v : cyc) entry.detail += " " + std::to_string(v);
    for (const Weight& w : s.weights()) {
      long long total = 0;
      for (int v : cyc) total += pairing(datum, w, v);
      if (total <= 0) entry.violations.push_back(w);
    }
    report.entries.push_back(std::move(entry));
  };
  for (const auto& cyc : triangles(datum)) deltaEntry(cyc, "triangle");
  for (const auto& cyc : squares(datum)) deltaEntry(cyc, "square");

  // Two-out-of-four closure: nonzero lambda+alpha_i and lambda+alpha_j force
  // nonzero lambda and lambda+alpha_i+alpha_j.
  ConditionReport::Entry closure{"closure", "all vertex pairs", {}};
  std::set<Coords> flagged;
  for (const Weight& w : s.weights()) {
    for (int i = 0; i < datum.vertexCount(); ++i) {
      // w plays the role of lambda+alpha_i.
      Weight lambda = w.shifted(i, -1);
      for (int j = 0; j < datum.vertexCount(); ++j) {
        if (j == i) continue;
        if (!s.contains(lambda.shifted(j, 1))) continue;
        if (s.contains(lambda) && s.contains(lambda.shifted(i, 1).shifted(j, 1)))
          continue;
        if (flagged.insert(lambda.coords).second)
          closure.violations.push_back(lambda);
      }
    }
  }
  std::sort(closure.violations.begin(), closure.violations.end());
  report.entries.push_back(std::move(closure));
  return report;
}

Support grassmannianSupport(int m, int n, long long N) {
  if (m < 0) throw Error("grassmannian parameter m must be nonnegative");
  if (n < 2) throw Error("grassmannian parameter n must be at least 2");
  if (N < 0 || N > static_cast<long long>(m) * n)
    throw EmptySupportError("no tuple sums to N");
  const int verts = n - 1;
  CartanDatum datum = CartanDatum::lineGraph(verts);

  // Enumerate tuples k in {0..m}^n with sum N, lexicographically.
  std::vector<std::vector<long long>> allPairings;
  std::vector<long long> k(static_cast<size_t>(n), 0);
  auto emit = [&]() {
    std::vector<long long> p(static_cast<size_t>(verts));
    for (int i = 0; i < verts; ++i)
      p[static_cast<size_t>(i)] =
          k[static_cast<size_t>(i + 1)] - k[static_cast<size_t>(i)];
    allPairings.push_back(std::move(p));
  };
  std::function<void(int, long long)> rec = [&](int pos, long long left) {
    if (pos == n - 1) {
      if (left <= m) { k[static_cast<size_t>(pos)] = left; emit(); }
      return;
    }
    for (long long v = 0; v <= std::min<long long>(m, left); ++v) {
      k[static_cast<size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, N);
  if (allPairings.empty()) throw EmptySupportError("no tuple sums to N");

  const std::vector<long long>& base = allPairings.front();
  // Solve C a = p - base over the rationals and insist on integer solutions;
  // the type A Cartan matrix is invertible, so this always has one candidate.
  auto solve = [&](const std::vector<long long>& p) {
    std::vector<std::vector<Rational>> aug(
        static_cast<size_t>(verts), std::vector<Rational>(static_cast<size_t>(verts) + 1));
    for (int r = 0; r < verts; ++r) {
      for (int c = 0; c < verts; ++c) aug[r][c] = Rational(datum.cartan(c, r));
      aug[r][static_cast<size_t>(verts)] =
          Rational(p[static_cast<size_t>(r)] - base[static_cast<size_t>(r)]);
    }
    for (int col = 0; col < verts; ++col) {
      int pivot = -1;
      for (int r = col; r < verts; ++r)
        if (!aug[r][col].isZero()) { pivot = r; break; }
      if (pivot < 0) throw Error("singular pairing system");
      std::swap(aug[static_cast<size_t>(col)], aug[static_cast<size_t>(pivot)]);
      for (int r = 0; r < verts; ++r) {
        if (r == col || aug[r][col].isZero()) continue;
        Rational f = aug[r][col] / aug[static_cast<size_t>(col)][col];
        for (int c = col; c <= verts; ++c)
          aug[r][c] -= f * aug[static_cast<size_t>(col)][c];
      }
    }
    Coords a(static_cast<size_t>(verts));
    for (int r = 0; r < verts; ++r) {
      Rational v = aug[r][static_cast<size_t>(verts)] / aug[r][static_cast<size_t>(r)];
      if (v.den() != 1)
        throw Error("weight lies outside the root lattice coset");
      a[static_cast<size_t>(r)] = v.num();
    }
    return a;
  };

  std::set<Coords> coords;
  for (const auto& p : allPairings) coords.insert(solve(p));
  return Support(base, std::move(coords));
}

}  // namespace klrcalc

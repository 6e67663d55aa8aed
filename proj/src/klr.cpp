#include "klrcalc/klr.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

namespace klrcalc {

namespace {

bool isDot(const KlrGen& g) { return g.kind == KlrGen::Kind::Dot; }
bool isCross(const KlrGen& g) { return g.kind == KlrGen::Kind::Cross; }

void checkGenRange(const KlrGen& g, int m) {
  if (isDot(g)) {
    if (g.pos < 1 || g.pos > m) throw Error("dot slot out of range");
  } else {
    if (g.pos < 1 || g.pos + 1 > m) throw Error("crossing slot out of range");
  }
}

void checkLabels(const CartanDatum& datum, const IdxSeq& labels) {
  for (int v : labels)
    if (v < 0 || v >= datum.vertexCount())
      throw Error("strand label is not a vertex of the graph");
}

}  // namespace

IdxSeq topSequence(const KlrWord& w) {
  IdxSeq labels = w.bottom;
  const int m = static_cast<int>(labels.size());
  for (const KlrGen& g : w.gens) {
    checkGenRange(g, m);
    if (isCross(g)) std::swap(labels[g.pos - 1], labels[g.pos]);
  }
  return labels;
}

int degree(const CartanDatum& datum, const KlrWord& w) {
  checkLabels(datum, w.bottom);
  IdxSeq labels = w.bottom;
  const int m = static_cast<int>(labels.size());
  int deg = 0;
  for (const KlrGen& g : w.gens) {
    checkGenRange(g, m);
    if (isDot(g)) {
      deg += 2;
    } else {
      deg -= datum.cartan(labels[g.pos - 1], labels[g.pos]);
      std::swap(labels[g.pos - 1], labels[g.pos]);
    }
  }
  return deg;
}

void KlrElement::add(const KlrGens& gens, const Rational& coeff) {
  if (coeff.isZero()) return;
  IdxSeq top = topSequence(KlrWord{bottom_, gens});
  if (top_) {
    if (*top_ != top)
      throw Error("terms with different top rows cannot be added");
  } else {
    top_ = std::move(top);
  }
  auto it = terms_.find(gens);
  if (it == terms_.end()) {
    terms_.emplace(gens, coeff);
  } else {
    it->second += coeff;
    if (it->second.isZero()) terms_.erase(it);
  }
  if (terms_.empty()) top_.reset();  // a zero element is top-agnostic
}

Rational KlrElement::coeff(const KlrGens& gens) const {
  auto it = terms_.find(gens);
  return it == terms_.end() ? Rational(0) : it->second;
}

namespace {

std::string gensStr(const KlrGens& gens) {
  std::ostringstream os;
  bool first = true;
  for (const KlrGen& g : gens) {
    if (!first) os << ' ';
    first = false;
    os << (isDot(g) ? 'x' : 't') << g.pos;
  }
  return os.str();
}

std::string bottomStr(const IdxSeq& bottom) {
  std::ostringstream os;
  os << "e(";
  for (size_t i = 0; i < bottom.size(); ++i) {
    if (i) os << ',';
    os << bottom[i] + 1;
  }
  os << ')';
  return os.str();
}

}  // namespace

std::string KlrElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [gens, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < Rational(0)) {
        os << '-';
        a = -a;
      }
    } else {
      if (a < Rational(0)) {
        os << " - ";
        a = -a;
      } else {
        os << " + ";
      }
    }
    first = false;
    if (!(a == Rational(1))) os << a.str() << ' ';
    os << bottomStr(bottom_);
    if (!gens.empty()) os << "; " << gensStr(gens);
  }
  return os.str();
}

int homogeneousDegree(const CartanDatum& datum, const KlrElement& e) {
  bool have = false;
  int deg = 0;
  for (const auto& [gens, c] : e.terms()) {
    int d = degree(datum, KlrWord{e.bottom(), gens});
    if (!have) {
      deg = d;
      have = true;
    } else if (d != deg) {
      throw Error("element is not homogeneous");
    }
  }
  return deg;
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace {

struct Term {
  KlrGens gens;
  Rational coeff;
};

using CrossWord = std::vector<int>;  // crossing slots, bottom-up, 1-based

// One-line arrangement reached from the identity by the word's position
// swaps: arr[slot] = bottom slot of the strand now there (0-based).
std::vector<int> arrangementOf(const CrossWord& cw, int m) {
  std::vector<int> arr(static_cast<size_t>(m));
  for (int s = 0; s < m; ++s) arr[static_cast<size_t>(s)] = s;
  for (int k : cw) std::swap(arr[static_cast<size_t>(k - 1)], arr[static_cast<size_t>(k)]);
  return arr;
}

int inversions(const std::vector<int>& arr) {
  int n = static_cast<int>(arr.size());
  int inv = 0;
  for (int s = 0; s < n; ++s)
    for (int u = s + 1; u < n; ++u)
      if (arr[static_cast<size_t>(s)] > arr[static_cast<size_t>(u)]) ++inv;
  return inv;
}

// The lexicographically least reduced word realizing the arrangement, read
// bottom-up. Peels the smallest valid first letter: C(k) can start a reduced
// word exactly when the strand value k-1 sits to the right of value k.
CrossWord lexLeastWord(std::vector<int> arr) {
  const int m = static_cast<int>(arr.size());
  std::vector<int> posOf(static_cast<size_t>(m));
  for (int s = 0; s < m; ++s) posOf[static_cast<size_t>(arr[static_cast<size_t>(s)])] = s;
  CrossWord out;
  int remaining = inversions(arr);
  while (remaining > 0) {
    for (int k = 1; k < m; ++k) {
      int lo = posOf[static_cast<size_t>(k - 1)], hi = posOf[static_cast<size_t>(k)];
      if (lo > hi) {
        out.push_back(k);
        std::swap(arr[static_cast<size_t>(lo)], arr[static_cast<size_t>(hi)]);
        std::swap(posOf[static_cast<size_t>(k - 1)], posOf[static_cast<size_t>(k)]);
        --remaining;
        break;
      }
    }
  }
  return out;
}

struct Move {
  int p = 0;         // index into the crossing word
  bool braid = false;  // braid rotation vs distant commutation
};

CrossWord applyMove(const CrossWord& w, const Move& mv) {
  CrossWord out = w;
  if (mv.braid) {
    // (a,b,a) -> (b,a,b)
    std::swap(out[static_cast<size_t>(mv.p)], out[static_cast<size_t>(mv.p) + 1]);
    out[static_cast<size_t>(mv.p) + 2] = w[static_cast<size_t>(mv.p) + 1];
  } else {
    std::swap(out[static_cast<size_t>(mv.p)], out[static_cast<size_t>(mv.p) + 1]);
  }
  return out;
}

template <typename Accept>
std::vector<std::pair<CrossWord, Move>> movePath(const CrossWord& start,
                                                 Accept accept,
                                                 long long& steps,
                                                 long long budget) {
  if (accept(start)) return {};
  std::map<CrossWord, std::pair<CrossWord, Move>> parent;
  std::set<CrossWord> seen;
  std::deque<CrossWord> queue;
  seen.insert(start);
  queue.push_back(start);
  const int len = static_cast<int>(start.size());
  while (!queue.empty()) {
    CrossWord w = queue.front();
    queue.pop_front();
    std::vector<Move> moves;
    for (int p = 0; p + 1 < len; ++p) {
      int a = w[static_cast<size_t>(p)], b = w[static_cast<size_t>(p) + 1];
      if (a - b >= 2 || b - a >= 2) moves.push_back(Move{p, false});
    }
    for (int p = 0; p + 2 < len; ++p) {
      int a = w[static_cast<size_t>(p)], b = w[static_cast<size_t>(p) + 1];
      if (w[static_cast<size_t>(p) + 2] == a && (a - b == 1 || b - a == 1))
        moves.push_back(Move{p, true});
    }
    for (const Move& mv : moves) {
      if (++steps > budget) throw NonTerminationError("rewriting exceeded its step budget");
      CrossWord w2 = applyMove(w, mv);
      if (!seen.insert(w2).second) continue;
      parent.emplace(w2, std::make_pair(w, mv));
      if (accept(w2)) {
        std::vector<std::pair<CrossWord, Move>> path;
        CrossWord cur = w2;
        while (cur != start) {
          auto& pr = parent.at(cur);
          path.emplace_back(pr.first, pr.second);
          cur = pr.first;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w2);
    }
  }
  throw Error("crossing-word move graph exhausted without reaching a target");
}

// Labels of the strand slots after applying cw[0..upto) to the bottom row.
IdxSeq labelsBelow(const IdxSeq& bottom, const CrossWord& cw, size_t upto) {
  IdxSeq labels = bottom;
  for (size_t q = 0; q < upto; ++q)
    std::swap(labels[static_cast<size_t>(cw[q] - 1)], labels[static_cast<size_t>(cw[q])]);
  return labels;
}

KlrGens assembleGens(const KlrGens& dots, const CrossWord& cw) {
  KlrGens out = dots;
  out.reserve(dots.size() + cw.size());
  for (int k : cw) out.push_back(crossGen(k));
  return out;
}

// Replays a move path on (dots ++ crossing word), pushing the correction
// term onto the worklist for every braid move whose outer labels agree on an
// adjacent pair. Returns the final crossing word.
CrossWord replayPath(const IdxSeq& bottom, const KlrGens& dots,
                     const Rational& coeff,
                     const std::vector<std::pair<CrossWord, Move>>& path,
                     const CrossWord& start, const CartanDatum& datum,
                     std::vector<Term>& work) {
  CrossWord cur = start;
  for (const auto& [w, mv] : path) {
    if (mv.braid) {
      int a = w[static_cast<size_t>(mv.p)], b = w[static_cast<size_t>(mv.p) + 1];
      int mn = std::min(a, b);
      IdxSeq below = labelsBelow(bottom, w, static_cast<size_t>(mv.p));
      int x = below[static_cast<size_t>(mn - 1)];
      int y = below[static_cast<size_t>(mn)];
      int z = below[static_cast<size_t>(mn + 1)];
      if (x == z && datum.cartan(x, y) == -1) {
        // (k,k+1,k) -> (k+1,k,k+1) adds t_{x,y} (triple removed); the
        // reverse move subtracts it.
        Rational c = datum.t(x, y) * coeff;
        if (a > b) c = -c;
        CrossWord rest;
        rest.reserve(w.size() - 3);
        for (size_t q = 0; q < w.size(); ++q)
          if (q < static_cast<size_t>(mv.p) || q > static_cast<size_t>(mv.p) + 2)
            rest.push_back(w[q]);
        work.push_back(Term{assembleGens(dots, rest), c});
      }
    }
    cur = applyMove(w, mv);
  }
  return cur;
}

}  // namespace

KlrElement normalize(const KlrElement& e, const CartanDatum& datum,
                     const NormalizeOptions& opts) {
  homogeneousDegree(datum, e);  // validates labels, ranges, homogeneity
  KlrElement out(e.bottom());
  const IdxSeq& bottom = e.bottom();
  std::vector<Term> work;
  work.reserve(e.terms().size());
  for (const auto& [gens, c] : e.terms()) work.push_back(Term{gens, c});

  long long steps = 0;
  const long long budget = opts.stepBudget;
  auto charge = [&steps, budget] {
    if (++steps > budget)
      throw NonTerminationError("rewriting exceeded its step budget");
  };

  while (!work.empty()) {
    Term t = std::move(work.back());
    work.pop_back();
    if (t.coeff.isZero()) continue;
    charge();

    // Slide the lowest dot that sits directly above a crossing.
    bool rewrote = false;
    for (size_t p = 0; p + 1 < t.gens.size(); ++p) {
      if (!isCross(t.gens[p]) || !isDot(t.gens[p + 1])) continue;
      const int k = t.gens[p].pos;
      const int dp = t.gens[p + 1].pos;
      if (dp != k && dp != k + 1) {
        std::swap(t.gens[p], t.gens[p + 1]);
        work.push_back(std::move(t));
      } else {
        CrossWord before;
        for (size_t q = 0; q < p; ++q)
          if (isCross(t.gens[q])) before.push_back(t.gens[q].pos);
        IdxSeq below = labelsBelow(bottom, before, before.size());
        bool equal = below[static_cast<size_t>(k - 1)] == below[static_cast<size_t>(k)];
        KlrGens removed;
        if (equal) {
          removed.reserve(t.gens.size() - 2);
          for (size_t q = 0; q < t.gens.size(); ++q)
            if (q != p && q != p + 1) removed.push_back(t.gens[q]);
        }
        if (dp == k) {
          // crossing then dot-left == dot-right then crossing, plus the
          // pair removed on equal labels
          t.gens[p] = dotGen(k + 1);
          t.gens[p + 1] = crossGen(k);
          if (equal) work.push_back(Term{std::move(removed), t.coeff});
        } else {
          t.gens[p] = dotGen(k);
          t.gens[p + 1] = crossGen(k);
          if (equal) work.push_back(Term{std::move(removed), -t.coeff});
        }
        work.push_back(std::move(t));
      }
      rewrote = true;
      break;
    }
    if (rewrote) continue;

    // All dots now sit below all crossings.
    KlrGens dots;
    CrossWord cw;
    for (const KlrGen& g : t.gens)
      (isDot(g) ? (void)dots.push_back(g) : (void)cw.push_back(g.pos));
    std::sort(dots.begin(), dots.end());

    if (cw.empty()) {
      out.add(dots, t.coeff);
      continue;
    }

    const int m = static_cast<int>(bottom.size());
    std::vector<int> arr = arrangementOf(cw, m);
    if (static_cast<int>(cw.size()) == inversions(arr)) {
      CrossWord target = lexLeastWord(arr);
      if (cw == target) {
        out.add(assembleGens(dots, cw), t.coeff);
        continue;
      }
      auto path = movePath(
          cw, [&target](const CrossWord& w) { return w == target; }, steps,
          budget);
      CrossWord fin = replayPath(bottom, dots, t.coeff, path, cw, datum, work);
      work.push_back(Term{assembleGens(dots, fin), t.coeff});
    } else {
      auto hasDouble = [](const CrossWord& w) {
        for (size_t q = 0; q + 1 < w.size(); ++q)
          if (w[q] == w[q + 1]) return true;
        return false;
      };
      auto path = movePath(cw, hasDouble, steps, budget);
      CrossWord fin = replayPath(bottom, dots, t.coeff, path, cw, datum, work);
      size_t q = 0;
      while (fin[q] != fin[q + 1]) ++q;
      const int k = fin[q];
      IdxSeq below = labelsBelow(bottom, fin, q);
      const int a = below[static_cast<size_t>(k - 1)];
      const int b = below[static_cast<size_t>(k)];
      CrossWord lower(fin.begin(), fin.begin() + static_cast<long>(q));
      CrossWord upper(fin.begin() + static_cast<long>(q) + 2, fin.end());
      auto spliced = [&](std::optional<int> dotSlot) {
        KlrGens gens = assembleGens(dots, lower);
        if (dotSlot) gens.push_back(dotGen(*dotSlot));
        for (int kk : upper) gens.push_back(crossGen(kk));
        return gens;
      };
      const int pairing = datum.cartan(a, b);
      if (a == b) {
        // square of an equal-label crossing vanishes
      } else if (pairing == 0) {
        work.push_back(Term{spliced(std::nullopt), t.coeff * datum.t(a, b)});
      } else {
        work.push_back(Term{spliced(k), t.coeff * datum.t(a, b)});
        work.push_back(Term{spliced(k + 1), t.coeff * datum.t(b, a)});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relation checking
// ---------------------------------------------------------------------------

namespace {

struct RelInstance {
  std::string name;
  KlrGens lhs;
  std::vector<std::pair<KlrGens, Rational>> rhs;
};

constexpr int kFamilyCount = 7;
constexpr int kFamilySpan[kFamilyCount] = {2, 2, 2, 2, 3, 3, 4};

// Builds family `fam` anchored at 0-based slot offset `off`. `atLevel` must
// hold the labels at the instance's own level: when generators sit below the
// instance, their crossings permute the bottom row first.
std::optional<RelInstance> makeFamily(const CartanDatum& datum,
                                      const IdxSeq& atLevel, int off,
                                      int fam) {
  const int m = static_cast<int>(atLevel.size());
  if (off < 0 || off + kFamilySpan[fam] > m) return std::nullopt;
  const int c1 = off + 1;  // first crossing/dot slot of the instance
  const int A = atLevel[static_cast<size_t>(off)];
  const int B = atLevel[static_cast<size_t>(off) + 1];
  RelInstance inst;
  switch (fam) {
    case 0: {  // dot above crossing, same left slot
      inst.name = "dot-slide-left";
      inst.lhs = {crossGen(c1), dotGen(c1)};
      inst.rhs = {{{dotGen(c1 + 1), crossGen(c1)}, Rational(1)}};
      if (A == B) inst.rhs.push_back({{}, Rational(1)});
      break;
    }
    case 1: {
      inst.name = "dot-slide-right";
      inst.lhs = {crossGen(c1), dotGen(c1 + 1)};
      inst.rhs = {{{dotGen(c1), crossGen(c1)}, Rational(1)}};
      if (A == B) inst.rhs.push_back({{}, Rational(-1)});
      break;
    }
    case 2: {
      inst.name = "double-crossing";
      inst.lhs = {crossGen(c1), crossGen(c1)};
      if (A == B) {
        // vanishes
      } else if (datum.cartan(A, B) == 0) {
        inst.rhs = {{{}, datum.t(A, B)}};
      } else {
        inst.rhs = {{{dotGen(c1)}, datum.t(A, B)},
                    {{dotGen(c1 + 1)}, datum.t(B, A)}};
      }
      break;
    }
    case 3: {
      inst.name = "dot-commute";
      inst.lhs = {dotGen(c1), dotGen(c1 + 1)};
      inst.rhs = {{{dotGen(c1 + 1), dotGen(c1)}, Rational(1)}};
      break;
    }
    case 4: {
      inst.name = "braid";
      const int C = atLevel[static_cast<size_t>(off) + 2];
      inst.lhs = {crossGen(c1), crossGen(c1 + 1), crossGen(c1)};
      inst.rhs = {{{crossGen(c1 + 1), crossGen(c1), crossGen(c1 + 1)}, Rational(1)}};
      if (A == C && datum.cartan(A, B) == -1)
        inst.rhs.push_back({{}, datum.t(A, B)});
      break;
    }
    case 5: {
      inst.name = "dot-past-far-crossing";
      inst.lhs = {crossGen(c1), dotGen(c1 + 2)};
      inst.rhs = {{{dotGen(c1 + 2), crossGen(c1)}, Rational(1)}};
      break;
    }
    case 6: {
      inst.name = "far-crossings-commute";
      inst.lhs = {crossGen(c1), crossGen(c1 + 2)};
      inst.rhs = {{{crossGen(c1 + 2), crossGen(c1)}, Rational(1)}};
      break;
    }
    default:
      return std::nullopt;
  }
  return inst;
}

void checkInstance(const CartanDatum& datum, const IdxSeq& bottom,
                   const RelInstance& inst, const KlrGens& prefix,
                   const KlrGens& suffix, RelationReport& report) {
  auto wrap = [&](const KlrGens& mid) {
    KlrGens gens = prefix;
    gens.insert(gens.end(), mid.begin(), mid.end());
    gens.insert(gens.end(), suffix.begin(), suffix.end());
    return gens;
  };
  KlrElement diff(bottom);
  {
    KlrElement lhs(bottom);
    lhs.add(wrap(inst.lhs), Rational(1));
    const KlrElement nl = normalize(lhs, datum);
    for (const auto& [gens, c] : nl.terms()) diff.add(gens, c);
  }
  for (const auto& [mid, c] : inst.rhs) {
    KlrElement side(bottom);
    side.add(wrap(mid), Rational(1));
    const KlrElement nr = normalize(side, datum);
    for (const auto& [gens, cc] : nr.terms()) diff.add(gens, -(c * cc));
  }
  ++report.instancesChecked;
  if (!diff.isZero()) {
    std::ostringstream os;
    os << inst.name << " on " << bottomStr(bottom);
    if (!prefix.empty()) os << " below [" << gensStr(prefix) << "]";
    if (!suffix.empty()) os << " above [" << gensStr(suffix) << "]";
    os << "; difference " << diff.str();
    report.failures.push_back(os.str());
  }
}

bool nextLabels(IdxSeq& labels, int vertices) {
  for (size_t i = 0; i < labels.size(); ++i) {
    if (++labels[i] < vertices) return true;
    labels[i] = 0;
  }
  return false;
}

}  // namespace

RelationReport relationCheck(const CartanDatum& datum, int maxStrands) {
  RelationReport report;
  const int V = datum.vertexCount();

  // Every relation instance with no ambient context: extra strands and
  // generators cannot change a bare instance's value, so span-sized bottoms
  // cover them all.
  for (int fam = 0; fam < kFamilyCount; ++fam) {
    const int span = kFamilySpan[fam];
    if (span > maxStrands) continue;
    IdxSeq bottom(static_cast<size_t>(span), 0);
    do {
      if (auto inst = makeFamily(datum, bottom, 0, fam))
        checkInstance(datum, bottom, *inst, {}, {}, report);
    } while (nextLabels(bottom, V));
  }

  // Ambient interaction: a deterministic pseudo-random sample of embeddings
  // with extra strands and up to four surrounding generators.
  std::mt19937_64 rng(0x6b6c7263);
  auto pick = [&rng](int n) {
    return static_cast<int>(rng() % static_cast<unsigned long long>(n));
  };
  const int sampleCount = 2500;
  for (int s = 0; s < sampleCount; ++s) {
    const int fam = pick(kFamilyCount);
    const int span = kFamilySpan[fam];
    if (span > maxStrands) continue;
    const int m = span + pick(maxStrands - span + 1);
    IdxSeq bottom(static_cast<size_t>(m));
    for (auto& v : bottom) v = pick(V);
    const int off = pick(m - span + 1);
    const int extra = 1 + pick(4);
    const int below = pick(extra + 1);
    KlrGens prefix, suffix;
    for (int g = 0; g < extra; ++g) {
      KlrGen gen = (pick(2) == 0 && m >= 2) ? crossGen(1 + pick(m - 1))
                                            : dotGen(1 + pick(m));
      (g < below ? prefix : suffix).push_back(gen);
    }
    IdxSeq atLevel = topSequence(KlrWord{bottom, prefix});
    auto inst = makeFamily(datum, atLevel, off, fam);
    if (!inst) continue;
    checkInstance(datum, bottom, *inst, prefix, suffix, report);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Spanning-set counts
// ---------------------------------------------------------------------------

namespace {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<long long>::max())
      throw Error("spanning-set count overflows");
  }
  return static_cast<long long>(r);
}

}  // namespace

DimTable gradedDimCount(const CartanDatum& datum, const IdxSeq& nu, int lo,
                        int hi) {
  checkLabels(datum, nu);
  if (lo > hi) throw Error("empty degree window");
  const int m = static_cast<int>(nu.size());
  if (m > 8) throw Error("too many strands to enumerate");
  DimTable table(lo, hi, 0);
  if (m == 0) {
    if (lo <= 0 && 0 <= hi) table.set(0, 1);
    return table;
  }
  std::vector<int> arr(static_cast<size_t>(m));
  for (int s = 0; s < m; ++s) arr[static_cast<size_t>(s)] = s;
  do {
    CrossWord word = lexLeastWord(arr);
    IdxSeq labels = nu;
    int cdeg = 0;
    for (int k : word) {
      cdeg -= datum.cartan(labels[static_cast<size_t>(k - 1)], labels[static_cast<size_t>(k)]);
      std::swap(labels[static_cast<size_t>(k - 1)], labels[static_cast<size_t>(k)]);
    }
    for (int d = lo; d <= hi; ++d) {
      int rem = d - cdeg;
      if (rem < 0 || rem % 2 != 0) continue;
      long long cnt = binomial(rem / 2 + m - 1, m - 1);
      table.set(d, *table.at(d) + cnt);
    }
  } while (std::next_permutation(arr.begin(), arr.end()));
  return table;
}

// ---------------------------------------------------------------------------
// Polynomial model
// ---------------------------------------------------------------------------

namespace {

void stripTrailingZeros(std::vector<int>& exps) {
  while (!exps.empty() && exps.back() == 0) exps.pop_back();
}

}  // namespace

Poly Poly::constant(const Rational& c) {
  Poly p;
  p.add({}, c);
  return p;
}

Poly Poly::variable(int k) {
  if (k < 1) throw Error("variable index must be positive");
  std::vector<int> exps(static_cast<size_t>(k), 0);
  exps[static_cast<size_t>(k) - 1] = 1;
  Poly p;
  p.add(std::move(exps), Rational(1));
  return p;
}

void Poly::add(std::vector<int> exps, const Rational& c) {
  if (c.isZero()) return;
  stripTrailingZeros(exps);
  auto it = mono_.find(exps);
  if (it == mono_.end()) {
    mono_.emplace(std::move(exps), c);
  } else {
    it->second += c;
    if (it->second.isZero()) mono_.erase(it);
  }
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [e, c] : b.mono_) out.add(e, c);
  return out;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [e, c] : b.mono_) out.add(e, -c);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a.mono_)
    for (const auto& [eb, cb] : b.mono_) {
      std::vector<int> e(std::max(ea.size(), eb.size()), 0);
      for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      out.add(std::move(e), ca * cb);
    }
  return out;
}

std::string Poly::str() const {
  if (mono_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : mono_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << " x" << i + 1;
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

Poly dividedDifference(const Poly& f, int k) {
  if (k < 1) throw Error("divided difference index must be positive");
  Poly out;
  for (const auto& [exps, c] : f.monomials()) {
    const size_t uk = static_cast<size_t>(k) - 1;
    int a = uk < exps.size() ? exps[uk] : 0;
    int b = uk + 1 < exps.size() ? exps[uk + 1] : 0;
    if (a == b) continue;
    std::vector<int> rest = exps;
    rest.resize(std::max(rest.size(), uk + 2), 0);
    const int low = std::min(a, b);
    const int gap = std::abs(a - b);
    const Rational sign = a > b ? c : -c;
    for (int t = 0; t < gap; ++t) {
      rest[uk] = low + t;
      rest[uk + 1] = low + gap - 1 - t;
      out.add(rest, sign);
    }
  }
  return out;
}

namespace {

std::mutex gOracleMutex;
std::set<int> gOracleVerified;

std::vector<Poly> monomialsUpTo(int vars, int maxDeg) {
  std::vector<Poly> out;
  std::vector<int> exps(static_cast<size_t>(vars), 0);
  // odometer over exponent vectors with total degree <= maxDeg
  while (true) {
    int total = 0;
    for (int e : exps) total += e;
    if (total <= maxDeg) {
      Poly p;
      p.add(exps, Rational(1));
      out.push_back(p);
    }
    size_t i = 0;
    for (; i < exps.size(); ++i) {
      if (++exps[i] <= maxDeg) break;
      exps[i] = 0;
    }
    if (i == exps.size()) break;
  }
  return out;
}

}  // namespace

void verifyNilHeckeOracle(int strands) {
  if (strands < 1) throw Error("strand count must be positive");
  {
    std::lock_guard<std::mutex> lock(gOracleMutex);
    if (gOracleVerified.count(strands)) return;
  }
  auto fail = [](const std::string& what, const Poly& f) {
    throw OracleUnverifiedError("polynomial model failed its self-check: " +
                                what + " on " + f.str());
  };
  const std::vector<Poly> monos = monomialsUpTo(strands, 3);
  for (int k = 1; k < strands; ++k) {
    const Poly xk = Poly::variable(k);
    const Poly xk1 = Poly::variable(k + 1);
    for (const Poly& f : monos) {
      const Poly df = dividedDifference(f, k);
      if (!(dividedDifference(xk * f, k) == xk1 * df + f))
        fail("slide of the left dot", f);
      if (!(xk * df == dividedDifference(xk1 * f, k) + f))
        fail("slide of the right dot", f);
      if (!dividedDifference(df, k).isZero()) fail("vanishing square", f);
    }
  }
  for (int k = 1; k + 1 < strands; ++k) {
    for (const Poly& f : monos) {
      Poly lhs = dividedDifference(
          dividedDifference(dividedDifference(f, k), k + 1), k);
      Poly rhs = dividedDifference(
          dividedDifference(dividedDifference(f, k + 1), k), k + 1);
      if (!(lhs == rhs)) fail("braid move", f);
    }
  }
  std::lock_guard<std::mutex> lock(gOracleMutex);
  gOracleVerified.insert(strands);
}

Poly nilHeckeApply(const KlrElement& e, const Poly& f) {
  const IdxSeq& bottom = e.bottom();
  if (bottom.empty()) throw Error("polynomial model needs at least one strand");
  for (int v : bottom)
    if (v != bottom.front())
      throw Error("polynomial model needs a constant bottom row");
  const int m = static_cast<int>(bottom.size());
  {
    std::lock_guard<std::mutex> lock(gOracleMutex);
    if (!gOracleVerified.count(m))
      throw OracleUnverifiedError(
          "polynomial model was not verified for this strand count before use");
  }
  for (const auto& [exps, c] : f.monomials())
    if (static_cast<int>(exps.size()) > m)
      throw Error("polynomial uses more variables than there are strands");
  Poly out;
  for (const auto& [gens, c] : e.terms()) {
    Poly g = f;
    for (const KlrGen& gen : gens) {
      if (isDot(gen)) {
        g = Poly::variable(gen.pos) * g;
      } else {
        g = dividedDifference(g, gen.pos);
      }
    }
    out = out + Poly::constant(c) * g;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text syntax
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skipSpace() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skipSpace();
    return i >= s.size();
  }
  char peek() {
    skipSpace();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skipSpace();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw Error("cannot parse element: expected " + what + " near position " +
                std::to_string(i));
  }
  long long integer() {
    skipSpace();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("a number");
    return std::stoll(s.substr(start, i - start));
  }
};

}  // namespace

KlrElement parseKlrElement(const std::string& text) {
  Cursor cur{text};
  std::optional<KlrElement> elem;
  bool first = true;
  while (!cur.done()) {
    Rational sign(1);
    if (cur.eat('+')) {
      if (first) cur.fail("a term before '+'");
    } else if (cur.eat('-')) {
      sign = Rational(-1);
    } else if (!first) {
      cur.fail("'+' or '-' between terms");
    }
    first = false;
    Rational coeff(1);
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      long long num = cur.integer();
      if (cur.eat('/')) {
        long long den = cur.integer();
        coeff = Rational(num) / Rational(den);
      } else {
        coeff = Rational(num);
      }
      cur.eat('*');
    }
    if (!cur.eat('e')) cur.fail("'e('");
    if (!cur.eat('(')) cur.fail("'('");
    IdxSeq bottom;
    while (true) {
      long long v = cur.integer();
      if (v < 1) cur.fail("a 1-based vertex label");
      bottom.push_back(static_cast<int>(v) - 1);
      if (cur.eat(',')) continue;
      if (cur.eat(')')) break;
      cur.fail("',' or ')'");
    }
    KlrGens gens;
    if (cur.eat(';')) {
      while (true) {
        char c = cur.peek();
        if (c != 't' && c != 'x') break;
        ++cur.i;
        long long pos = cur.integer();
        if (pos < 1) cur.fail("a 1-based strand slot");
        gens.push_back(c == 'x' ? dotGen(static_cast<int>(pos))
                                : crossGen(static_cast<int>(pos)));
      }
      if (gens.empty()) cur.fail("generators after ';'");
    }
    if (!elem) {
      elem.emplace(bottom);
    } else if (elem->bottom() != bottom) {
      throw Error("cannot parse element: terms have different bottom rows");
    }
    elem->add(gens, sign * coeff);
  }
  if (!elem) throw Error("cannot parse element: empty input");
  return *elem;
}

}  // namespace klrcalc

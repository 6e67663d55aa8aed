#include "klrcalc/morph.hpp"

#include <algorithm>

namespace klrcalc {

std::string Letter::str() const {
  const std::string v = std::to_string(vertex + 1);
  switch (kind) {
    case LetterKind::E: return "E" + v;
    case LetterKind::F: return "F" + v;
    case LetterKind::Ed2: return "E" + v + "^2";
  }
  return "?";
}

std::string lettersStr(const Letters& ls) {
  if (ls.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < ls.size(); ++i) {
    if (i) out += " ";
    out += ls[i].str();
  }
  return out;
}

std::string MorphWord::str() const {
  std::string out = lettersStr(letters) + " @ [";
  for (size_t i = 0; i < domain.coords.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(domain.coords[i]);
  }
  return out + "]";
}

Weight weightAfter(const MorphWord& w) {
  Weight out = w.domain;
  for (const Letter& l : w.letters)
    out.coords[static_cast<size_t>(l.vertex)] += l.rootSteps();
  return out;
}

std::vector<Weight> weightProfile(const MorphWord& w) {
  std::vector<Weight> out{w.domain};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->kind == LetterKind::Ed2) out.push_back(out.back().shifted(it->vertex, 1));
    out.push_back(out.back().shifted(it->vertex, it->kind == LetterKind::F ? -1 : 1));
  }
  return out;
}

bool wordSupported(const MorphWord& w, const Support& s) {
  for (const Weight& step : weightProfile(w))
    if (!s.contains(step)) return false;
  return true;
}

namespace {

Coords displacementOf(const Letters& word, size_t vertexCount) {
  Coords d(vertexCount, 0);
  for (const Letter& l : word) d[static_cast<size_t>(l.vertex)] += l.rootSteps();
  return d;
}

}  // namespace

void GradedClass::add(const Letters& word, const LaurentInt& coeff) {
  if (coeff.isZero()) return;
  Coords disp = displacementOf(word, domain_.coords.size());
  if (!hasDisplacement_) {
    displacement_ = disp;
    hasDisplacement_ = true;
  } else if (disp != displacement_) {
    throw Error("class words must share a codomain");
  }
  LaurentInt& slot = terms_[word];
  slot += coeff;
  if (slot.isZero()) terms_.erase(word);
}

LaurentInt GradedClass::coeff(const Letters& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? LaurentInt() : it->second;
}

bool GradedClass::isEffective() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.isEffective(); });
}

std::string GradedClass::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [word, coeff] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + coeff.str() + ")*" + lettersStr(word);
  }
  return out;
}

namespace {

bool profileSupported(const Letters& word, const Weight& domain,
                      const Support& s) {
  return wordSupported(MorphWord{word, domain}, s);
}

// Positions p holding the out-of-order pair for the requested normal form:
// an E directly left of an F when sorting, an F directly left of an E when
// anti-sorting.
std::vector<size_t> rewritablePairs(const Letters& w, bool anti) {
  const LetterKind first = anti ? LetterKind::F : LetterKind::E;
  const LetterKind second = anti ? LetterKind::E : LetterKind::F;
  std::vector<size_t> out;
  for (size_t p = 0; p + 1 < w.size(); ++p)
    if (w[p].kind == first && w[p + 1].kind == second) out.push_back(p);
  return out;
}

// Weight below letter position p (its domain): apply everything to its right.
Weight weightBelow(const Letters& w, const Weight& domain, size_t p) {
  Weight out = domain;
  for (size_t q = w.size(); q-- > p + 1;)
    out.coords[static_cast<size_t>(w[q].vertex)] += w[q].rootSteps();
  return out;
}

// Shared worker for both normal forms. The two directions differ only in
// which adjacent pair is out of order and in the sign of the quantum-integer
// multiplicity on the removed pair: sorting fires E_i F_i -> F_i E_i + [mu_i]
// at the block mu entering the F, anti-sorting fires F_i E_i -> E_i F_i +
// [-nu_i] at the block nu entering the E. Both are the same commutation
// isomorphism read from opposite sides.
GradedClass sortClassImpl(const GradedClass& c, const CartanDatum& datum,
                          const Support& support, const SortOptions& opts,
                          bool anti) {
  const Weight& domain = c.domain();
  // Expand each divided square into E E, remembering how many [2] divisions
  // the term owes; defer all divisions to the very end so cancellation
  // across terms can happen first.
  int maxOwed = 0;
  std::vector<std::pair<Letters, std::pair<LaurentInt, int>>> inputs;
  for (const auto& [word, coeff] : c.terms()) {
    Letters expanded;
    int owed = 0;
    for (const Letter& l : word) {
      if (l.kind == LetterKind::Ed2) {
        expanded.push_back(eLet(l.vertex));
        expanded.push_back(eLet(l.vertex));
        ++owed;
      } else {
        expanded.push_back(l);
      }
    }
    maxOwed = std::max(maxOwed, owed);
    inputs.push_back({std::move(expanded), {coeff, owed}});
  }

  const LaurentInt two = qint(2);
  std::map<Letters, LaurentInt> done;
  for (auto& [word0, coeffOwed] : inputs) {
    // Scale so every term carries the same denominator [2]^maxOwed.
    LaurentInt scaled = coeffOwed.first;
    for (int t = coeffOwed.second; t < maxOwed; ++t) scaled = scaled * two;

    std::map<Letters, LaurentInt> pending;
    pending[word0] = scaled;
    while (!pending.empty()) {
      auto it = pending.begin();
      Letters w = it->first;
      LaurentInt co = it->second;
      pending.erase(it);
      if (co.isZero()) continue;
      // A word factoring through a missing block is the zero morphism.
      if (opts.drop && !profileSupported(w, domain, support)) continue;
      std::vector<size_t> cand = rewritablePairs(w, anti);
      if (cand.empty()) {
        LaurentInt& slot = done[w];
        slot += co;
        if (slot.isZero()) done.erase(w);
        continue;
      }
      size_t p = cand[opts.pick ? opts.pick(cand.size()) % cand.size() : 0];
      const int i = w[p].vertex, j = w[p + 1].vertex;
      Letters swapped = w;
      std::swap(swapped[p], swapped[p + 1]);
      pending[swapped] += co;
      if (i == j) {
        Weight mu = weightBelow(w, domain, p + 1);
        const long long n = pairing(datum, mu, i);
        LaurentInt scale = qint(anti ? -n : n);
        if (!scale.isZero()) {
          Letters removed = w;
          removed.erase(removed.begin() + static_cast<long>(p),
                        removed.begin() + static_cast<long>(p) + 2);
          pending[removed] += co * scale;
        }
      }
    }
  }

  GradedClass out(domain);
  for (auto& [w, co] : done) {
    LaurentInt q = co;
    for (int t = 0; t < maxOwed; ++t) q = q.dividedBy(two);
    out.add(w, q);
  }
  if (opts.assertEffective && !out.isEffective())
    throw NegativeMultiplicityError("class is not a direct-sum decomposition: " +
                                    out.str());
  return out;
}

}  // namespace

GradedClass sortClass(const GradedClass& c, const CartanDatum& datum,
                      const Support& support, const SortOptions& opts) {
  return sortClassImpl(c, datum, support, opts, false);
}

GradedClass antiSortClass(const GradedClass& c, const CartanDatum& datum,
                          const Support& support, const SortOptions& opts) {
  return sortClassImpl(c, datum, support, opts, true);
}

GradedClass decompose(const MorphWord& w, const CartanDatum& datum,
                      const Support& support) {
  GradedClass c(w.domain);
  if (!support.contains(w.domain)) return c;
  c.add(w.letters, LaurentInt(1));
  SortOptions opts;
  opts.drop = true;
  opts.assertEffective = true;
  return sortClass(c, datum, support, opts);
}

GradedClass serreRewrite(const MorphWord& w, const CartanDatum& datum) {
  const Letters& ls = w.letters;
  for (size_t p = 0; p + 2 < ls.size(); ++p) {
    if (ls[p].kind != LetterKind::E || ls[p + 1].kind != LetterKind::E ||
        ls[p + 2].kind != LetterKind::E)
      continue;
    const int i = ls[p].vertex, j = ls[p + 1].vertex;
    if (ls[p + 2].vertex != i || i == j) continue;
    if (!datum.adjacent(i, j))
      throw NotAdjacentError("factor E" + std::to_string(i + 1) + " E" +
                             std::to_string(j + 1) + " E" +
                             std::to_string(i + 1) +
                             " needs adjacent vertices");
    Letters a(ls.begin(), ls.begin() + static_cast<long>(p));
    Letters b(ls.begin() + static_cast<long>(p) + 3, ls.end());
    Letters left = a;
    left.push_back(ed2Let(i));
    left.push_back(eLet(j));
    left.insert(left.end(), b.begin(), b.end());
    Letters right = a;
    right.push_back(eLet(j));
    right.push_back(ed2Let(i));
    right.insert(right.end(), b.begin(), b.end());
    GradedClass out(w.domain);
    out.add(left, LaurentInt(1));
    out.add(right, LaurentInt(1));
    return out;
  }
  throw Error("word contains no E_i E_j E_i factor");
}

namespace {

bool allSupported(const Support& s, const std::vector<Weight>& ws) {
  return std::all_of(ws.begin(), ws.end(),
                     [&](const Weight& w) { return s.contains(w); });
}

}  // namespace

bool isNonzero(const MorphWord& w, const CartanDatum& datum,
               const Support& support) {
  // Nonvanishing of the divided square matches its E E expansion.
  Letters ls;
  for (const Letter& l : w.letters) {
    if (l.kind == LetterKind::Ed2) {
      ls.push_back(eLet(l.vertex));
      ls.push_back(eLet(l.vertex));
    } else {
      ls.push_back(l);
    }
  }
  const Weight& dom = w.domain;
  auto at = [&](std::initializer_list<std::pair<int, long long>> shifts) {
    Weight out = dom;
    for (auto& [v, k] : shifts) out.coords[static_cast<size_t>(v)] += k;
    return out;
  };

  const bool allE =
      std::all_of(ls.begin(), ls.end(),
                  [](const Letter& l) { return l.kind == LetterKind::E; });
  // Pure E words of length <= 2: nonzero exactly when every block on the
  // profile exists.
  if (allE && ls.size() <= 2)
    return wordSupported(MorphWord{ls, dom}, support);

  if (ls.size() == 2 && ls[0].kind == LetterKind::E &&
      ls[1].kind == LetterKind::F && ls[0].vertex != ls[1].vertex) {
    // E_i over F_j, distinct vertices: the four corners of the (i,j) square
    // through the F's codomain must all exist.
    const int i = ls[0].vertex, j = ls[1].vertex;
    return allSupported(support, {at({{j, -1}}),
                                  at({{j, -1}, {i, 1}}),
                                  at({}),
                                  at({{i, 1}})});
  }

  if (ls.size() == 3 && ls[0].kind == LetterKind::E &&
      ls[1].kind == LetterKind::E && ls[2].kind == LetterKind::F &&
      ls[0].vertex == ls[1].vertex && ls[0].vertex != ls[2].vertex) {
    // E_i E_i over F_j: two parallel alpha_i lines of length three.
    const int i = ls[0].vertex, j = ls[2].vertex;
    std::vector<Weight> need;
    for (long long r = -1; r <= 1; ++r) {
      // lambda = dom - alpha_j + alpha_i (the block between the two E's).
      need.push_back(at({{j, -1}, {i, 1 + r}}));
      need.push_back(at({{i, 1 + r}}));
    }
    return allSupported(support, need);
  }

  // Fallback: a nonzero effective sorted class certifies nonvanishing; this
  // is sufficient but not a complete criterion for exotic shapes.
  GradedClass c(dom);
  if (!support.contains(dom)) return false;
  c.add(ls, LaurentInt(1));
  GradedClass sorted = sortClass(c, datum, support);
  return !sorted.isZero() && sorted.isEffective();
}

}  // namespace klrcalc

#include "klrcalc/paths.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>

namespace klrcalc {

namespace {

Weight shiftedByStep(const Weight& w, const SlideStep& st) {
  return w.shifted(st.vertex, st.sign);
}

bool stepsCancel(const SlideStep& x, const SlideStep& y) {
  return x.vertex == y.vertex && x.sign == -y.sign;
}

// Rescale-mode switch condition: signs cancel and the vertices differ.
bool rescaleSwitchOk(const Steps& steps, size_t a) {
  return steps[a].sign + steps[a + 1].sign == 0 &&
         steps[a].vertex != steps[a + 1].vertex;
}

bool validPathSteps(const CartanDatum& datum, const Weight& base,
                    const Steps& steps, const Support& support) {
  if (!support.contains(base)) return false;
  Weight cur = base;
  for (const SlideStep& st : steps) {
    if (!isValidSlide(datum, cur, st.vertex, st.sign, support)) return false;
    cur = shiftedByStep(cur, st);
  }
  return true;
}

void checkMovePos(const Steps& steps, int a, const char* what) {
  if (a < 1 || static_cast<size_t>(a) + 1 > steps.size())
    throw InvalidMoveError(std::string(what) + " position " +
                           std::to_string(a) + " out of range for " +
                           std::to_string(steps.size()) + " steps");
}

Steps swapped(const Steps& steps, size_t a) {
  Steps out = steps;
  std::swap(out[a], out[a + 1]);
  return out;
}

Steps dropped(const Steps& steps, size_t a) {
  Steps out;
  out.reserve(steps.size() - 2);
  out.insert(out.end(), steps.begin(), steps.begin() + static_cast<long>(a));
  out.insert(out.end(), steps.begin() + static_cast<long>(a) + 2, steps.end());
  return out;
}

// Replay a certificate on a bare step sequence using rescale-mode side
// conditions. Used both by reduceToEmpty's final self-check and by
// applyMoves in rescale mode.
Steps replayRescale(Steps steps, const MoveCert& cert) {
  for (const Move& mv : cert) {
    checkMovePos(steps, mv.pos,
                 mv.kind == Move::Kind::Switch ? "switch" : "drop");
    size_t a = static_cast<size_t>(mv.pos) - 1;
    if (mv.kind == Move::Kind::Switch) {
      if (!rescaleSwitchOk(steps, a))
        throw InvalidMoveError(
            "switch needs canceling signs on distinct vertices at position " +
            std::to_string(mv.pos));
      steps = swapped(steps, a);
    } else {
      if (!stepsCancel(steps[a], steps[a + 1]))
        throw InvalidMoveError(
            "drop needs the same vertex with opposite signs at position " +
            std::to_string(mv.pos));
      steps = dropped(steps, a);
    }
  }
  return steps;
}

std::string stepString(const SlideStep& st) {
  std::string s = st.sign >= 0 ? "+" : "-";
  return s + std::to_string(st.vertex + 1);
}

struct PathSearchHit {
  Steps steps;
  MoveCert cert;
};

// Breadth-first search over path-mode moves from `start`, never visiting
// sequences shorter than minLength (drops cannot be undone, so anything
// below the target length is a dead end). The budget counts dequeued
// states; exhaustion returns nullopt.
template <typename AcceptFn>
std::optional<PathSearchHit> pathModeSearch(const CartanDatum& datum,
                                            const Weight& base,
                                            const Support& support,
                                            const Steps& start,
                                            size_t minLength, AcceptFn accept,
                                            long long budget) {
  if (accept(start)) return PathSearchHit{start, {}};
  std::map<Steps, std::pair<Steps, Move>> parent;
  std::deque<Steps> queue{start};
  long long explored = 0;

  auto reconstruct = [&](Steps last) {
    MoveCert cert;
    while (last != start) {
      const auto& [prev, mv] = parent.at(last);
      cert.push_back(mv);
      last = prev;
    }
    std::reverse(cert.begin(), cert.end());
    return cert;
  };

  while (!queue.empty()) {
    if (++explored > budget) return std::nullopt;
    Steps cur = queue.front();
    queue.pop_front();
    for (size_t a = 0; a + 1 < cur.size(); ++a) {
      int pos = static_cast<int>(a) + 1;
      std::vector<std::pair<Steps, Move>> nexts;
      if (stepsCancel(cur[a], cur[a + 1]) && cur.size() - 2 >= minLength)
        nexts.push_back({dropped(cur, a), Move{Move::Kind::Drop, pos}});
      Steps sw = swapped(cur, a);
      if (validPathSteps(datum, base, sw, support))
        nexts.push_back({std::move(sw), Move{Move::Kind::Switch, pos}});
      for (auto& [next, mv] : nexts) {
        if (parent.count(next) || next == start) continue;
        parent.emplace(next, std::make_pair(cur, mv));
        if (accept(next)) return PathSearchHit{next, reconstruct(next)};
        queue.push_back(std::move(next));
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Weight SlideSeq::endpoint() const {
  Weight w = base;
  for (const SlideStep& st : steps) w = shiftedByStep(w, st);
  return w;
}

std::string SlideSeq::str() const {
  std::string out = "(";
  for (size_t i = 0; i < steps.size(); ++i) {
    if (i) out += ", ";
    out += stepString(steps[i]);
  }
  return out + ") @ " + base.str();
}

std::string Move::str() const {
  return (kind == Kind::Switch ? "S" : "D") + std::to_string(pos);
}

bool isValidSlide(const CartanDatum& datum, const Weight& from, int vertex,
                  int sign, const Support& support) {
  if (vertex < 0 || vertex >= datum.vertexCount())
    throw Error("vertex index out of range");
  if (sign != 1 && sign != -1) throw Error("slide sign must be +1 or -1");
  long long p = pairing(datum, from, vertex);
  if (sign == 1 && p < -1) return false;
  if (sign == -1 && p > 1) return false;
  return support.contains(from) &&
         support.contains(from.shifted(vertex, sign));
}

bool isValidPath(const CartanDatum& datum, const SlideSeq& s,
                 const Support& support) {
  return validPathSteps(datum, s.base, s.steps, support);
}

bool isMiddleWeight(const CartanDatum& datum, const Weight& lambda,
                    const Support& support) {
  if (!support.contains(lambda)) return false;
  std::set<Coords> seen{lambda.coords};
  std::deque<Weight> queue{lambda};
  while (!queue.empty()) {
    Weight cur = queue.front();
    queue.pop_front();
    for (int k = 0; k < datum.vertexCount(); ++k) {
      for (int sign : {1, -1}) {
        if (!isValidSlide(datum, cur, k, sign, support)) continue;
        Weight next = cur.shifted(k, sign);
        if (seen.insert(next.coords).second) queue.push_back(next);
      }
    }
  }
  return seen.size() == support.size();
}

SlideSeq canonicalPath(const CartanDatum& datum, const Weight& mu,
                       const Weight& lambda, const Support& support) {
  if (!mu.sameCoset(lambda))
    throw Error("canonical path endpoints lie in different cosets");
  if (!support.contains(mu)) throw Error("base weight is not supported");
  if (!support.contains(lambda)) throw Error("target weight is not supported");

  const int n = datum.vertexCount();
  std::vector<long long> a(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    a[static_cast<size_t>(j)] =
        lambda.coords[static_cast<size_t>(j)] - mu.coords[static_cast<size_t>(j)];

  Steps reversedSteps;
  Weight cur = lambda;
  while (true) {
    bool done = true;
    for (long long aj : a)
      if (aj != 0) done = false;
    if (done) break;

    int pick = -1;
    int sign = 0;
    for (int i = 0; i < n; ++i) {
      long long ai = a[static_cast<size_t>(i)];
      long long pi = pairing(datum, cur, i);
      if (ai >= 1 && pi >= 1 && support.contains(cur.shifted(i, -1))) {
        pick = i;
        sign = 1;  // last slide (cur - alpha_i) ~> cur
        break;
      }
      if (ai <= -1 && pi <= -1 && support.contains(cur.shifted(i, 1))) {
        pick = i;
        sign = -1;  // last slide (cur + alpha_i) ~> cur
        break;
      }
    }
    if (pick < 0)
      throw ClaimFailureError(
          "no vertex admits a backward slide at " + cur.str() +
          " (non-path-graph datum or a hole in the support)");
    reversedSteps.push_back(SlideStep{sign, pick});
    cur = cur.shifted(pick, -sign);
    a[static_cast<size_t>(pick)] -= sign;
  }

  std::reverse(reversedSteps.begin(), reversedSteps.end());
  return SlideSeq{mu, std::move(reversedSteps)};
}

SlideSeq switchMove(const CartanDatum& datum, const SlideSeq& s, int a,
                    MoveMode mode, const Support& support) {
  checkMovePos(s.steps, a, "switch");
  size_t idx = static_cast<size_t>(a) - 1;
  Steps sw = swapped(s.steps, idx);
  if (mode == MoveMode::Rescale) {
    if (!rescaleSwitchOk(s.steps, idx))
      throw InvalidMoveError(
          "switch needs canceling signs on distinct vertices at position " +
          std::to_string(a) + " of " + s.str());
  } else {
    if (!validPathSteps(datum, s.base, sw, support))
      throw InvalidMoveError("switch at position " + std::to_string(a) +
                             " of " + s.str() +
                             " does not yield a valid path");
  }
  return SlideSeq{s.base, std::move(sw)};
}

SlideSeq dropMove(const SlideSeq& s, int a) {
  checkMovePos(s.steps, a, "drop");
  size_t idx = static_cast<size_t>(a) - 1;
  if (!stepsCancel(s.steps[idx], s.steps[idx + 1]))
    throw InvalidMoveError(
        "drop needs the same vertex with opposite signs at position " +
        std::to_string(a) + " of " + s.str());
  return SlideSeq{s.base, dropped(s.steps, idx)};
}

SlideSeq applyMoves(const CartanDatum& datum, const SlideSeq& s,
                    const MoveCert& cert, MoveMode mode,
                    const Support& support) {
  if (mode == MoveMode::Rescale)
    return SlideSeq{s.base, replayRescale(s.steps, cert)};
  SlideSeq cur = s;
  for (const Move& mv : cert)
    cur = mv.kind == Move::Kind::Switch
              ? switchMove(datum, cur, mv.pos, MoveMode::Path, support)
              : dropMove(cur, mv.pos);
  return cur;
}

MoveCert reduceToEmpty(const SlideSeq& s) {
  // The step-sum must vanish vertex by vertex.
  std::map<int, long long> sum;
  for (const SlideStep& st : s.steps) sum[st.vertex] += st.sign;
  for (const auto& [vertex, total] : sum)
    if (total != 0)
      throw Error("sequence is not closed: step-sum at vertex " +
                  std::to_string(vertex + 1) + " is " + std::to_string(total));

  MoveCert cert;
  Steps work = s.steps;
  long long safety = 0;
  const long long kSafetyLimit =
      1000000 + static_cast<long long>(work.size()) * work.size();

  while (!work.empty()) {
    if (++safety > kSafetyLimit)
      throw NonTerminationError("reduction to the empty sequence stalled");

    // Prefer the leftmost adjacent canceling pair.
    bool droppedPair = false;
    for (size_t a = 0; a + 1 < work.size(); ++a) {
      if (stepsCancel(work[a], work[a + 1])) {
        cert.push_back(Move{Move::Kind::Drop, static_cast<int>(a) + 1});
        work = dropped(work, a);
        droppedPair = true;
        break;
      }
    }
    if (droppedPair) continue;

    // Otherwise pick the tightest canceling pair: the smallest j with an
    // earlier partner (same vertex, opposite sign) and the largest such
    // partner i. Everything strictly between them lives on other vertices,
    // so one switch inside the window is always available: the partner
    // hops right past an opposite-signed neighbor, the far end hops left
    // past a like-signed neighbor, or two interior steps with canceling
    // signs transpose.
    size_t i = 0, j = 0;
    bool found = false;
    for (size_t jj = 1; jj < work.size() && !found; ++jj)
      for (size_t ii = jj; ii-- > 0;)
        if (stepsCancel(work[ii], work[jj])) {
          i = ii;
          j = jj;
          found = true;
          break;
        }
    if (!found)
      throw Error("internal: closed sequence with no canceling pair");

    int c = work[i].sign;
    size_t switchAt;
    if (work[i + 1].sign == -c) {
      switchAt = i;
    } else if (work[j - 1].sign == c) {
      switchAt = j - 1;
    } else {
      switchAt = SIZE_MAX;
      for (size_t l = i + 1; l + 1 < j; ++l)
        if (work[l].sign == c && work[l + 1].sign == -c) {
          switchAt = l;
          break;
        }
      if (switchAt == SIZE_MAX)
        throw Error("internal: no admissible switch inside the window");
    }
    if (!rescaleSwitchOk(work, switchAt))
      throw Error("internal: planned switch violates its side condition");
    cert.push_back(Move{Move::Kind::Switch, static_cast<int>(switchAt) + 1});
    work = swapped(work, switchAt);
  }

  if (!replayRescale(s.steps, cert).empty())
    throw Error("internal: reduction certificate fails to replay");
  return cert;
}

std::optional<MoveCert> slideEquivalent(const CartanDatum& datum,
                                        const SlideSeq& p, const SlideSeq& q,
                                        const Support& support,
                                        long long budget) {
  if (!(p.base == q.base))
    throw Error("slide equivalence needs a common base weight");
  if (!(p.endpoint() == q.endpoint()))
    throw Error("slide equivalence needs a common endpoint");
  if (!isValidPath(datum, p, support))
    throw Error("left sequence is not a valid path");
  if (!isValidPath(datum, q, support))
    throw Error("right sequence is not a valid path");
  if (q.steps.size() > p.steps.size()) return std::nullopt;

  auto hit = pathModeSearch(
      datum, p.base, support, p.steps, q.steps.size(),
      [&](const Steps& st) { return st == q.steps; }, budget);
  if (!hit) return std::nullopt;

  SlideSeq replayed = applyMoves(datum, p, hit->cert, MoveMode::Path, support);
  if (!(replayed == q))
    throw Error("internal: equivalence certificate fails to replay");
  return hit->cert;
}

AppendReduction reduceAppended(const CartanDatum& datum, const SlideSeq& canon,
                               SlideStep extra, const Support& support,
                               long long budget) {
  Weight lambda = canon.endpoint();
  SlideSeq expected = canonicalPath(datum, canon.base, lambda, support);
  if (!(expected == canon))
    throw Error("input sequence is not the canonical path to its endpoint");
  if (!isValidSlide(datum, lambda, extra.vertex, extra.sign, support))
    throw Error("appended step is not a valid slide from " + lambda.str());

  long long ai = lambda.coords[static_cast<size_t>(extra.vertex)] -
                 canon.base.coords[static_cast<size_t>(extra.vertex)];
  if (extra.sign == 1 && ai > -1)
    throw Error("appending +alpha requires a negative coordinate, got " +
                std::to_string(ai));
  if (extra.sign == -1 && ai < 1)
    throw Error("appending -alpha requires a positive coordinate, got " +
                std::to_string(ai));

  Steps start = canon.steps;
  start.push_back(extra);
  const size_t targetLen = canon.steps.size() - 1;

  auto hit = pathModeSearch(
      datum, canon.base, support, start, targetLen,
      [&](const Steps& st) { return st.size() == targetLen; }, budget);
  if (!hit)
    throw ClaimFailureError(
        "no path shorter by one step found within the search budget");

  SlideSeq appended{canon.base, std::move(start)};
  SlideSeq shorter =
      applyMoves(datum, appended, hit->cert, MoveMode::Path, support);
  if (shorter.steps != hit->steps)
    throw Error("internal: reduction certificate fails to replay");
  return AppendReduction{std::move(shorter), std::move(hit->cert)};
}

}  // namespace klrcalc

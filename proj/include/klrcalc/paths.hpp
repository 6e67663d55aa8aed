#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "klrcalc/cartan.hpp"
#include "klrcalc/errors.hpp"

namespace klrcalc {

// One slide step: add (sign = +1) or subtract (sign = -1) the simple root
// alpha_vertex.
struct SlideStep {
  int sign;    // +1 or -1
  int vertex;  // 0-based
  auto operator<=>(const SlideStep&) const = default;
};

using Steps = std::vector<SlideStep>;

// A sequence of slide steps out of a base weight. Path-mode operations
// additionally require every prefix endpoint to be supported and every
// step to satisfy the slide inequality; rescale-mode operations treat the
// steps as a formal sequence and ignore validity.
struct SlideSeq {
  Weight base;
  Steps steps;

  bool operator==(const SlideSeq&) const = default;
  Weight endpoint() const;
  std::string str() const;
};

enum class MoveMode { Path, Rescale };

// An elementary move on a sequence: Switch transposes steps a, a+1 and
// Drop removes a canceling adjacent pair at a, a+1. Positions are 1-based.
struct Move {
  enum class Kind { Switch, Drop };
  Kind kind;
  int pos;
  auto operator<=>(const Move&) const = default;
  std::string str() const;
};

using MoveCert = std::vector<Move>;

// Slide rule: lambda ~> lambda + alpha_k needs pairing(lambda, k) >= -1,
// lambda ~> lambda - alpha_k needs pairing(lambda, k) <= 1, and both
// endpoints must lie in the support.
bool isValidSlide(const CartanDatum& datum, const Weight& from, int vertex,
                  int sign, const Support& support);

// True when every step of the sequence is a valid slide from its prefix
// endpoint (the base itself must be supported).
bool isValidPath(const CartanDatum& datum, const SlideSeq& s,
                 const Support& support);

// True when every supported weight is reachable from lambda by valid
// slides (breadth-first search; slides are directed, so this is genuine
// reachability, not connectivity).
bool isMiddleWeight(const CartanDatum& datum, const Weight& lambda,
                    const Support& support);

// The canonical path from mu to lambda, built backward: writing
// lambda = mu + sum_j a_j alpha_j, repeatedly pick the smallest i with
// a_i >= 1 and pairing(lambda, i) >= 1 (last slide lambda - alpha_i ~>
// lambda) or a_i <= -1 and pairing(lambda, i) <= -1 (last slide
// lambda + alpha_i ~> lambda), requiring the new endpoint to stay
// supported. Length is always sum_j |a_j|. Throws ClaimFailureError when
// no vertex qualifies at some stage (non-path-graph input or a hole in
// the support).
SlideSeq canonicalPath(const CartanDatum& datum, const Weight& mu,
                       const Weight& lambda, const Support& support);

// Transpose steps a, a+1 (1-based). Rescale mode requires the signs to
// cancel and the vertices to differ; path mode requires the transposed
// sequence to be a valid path. Throws InvalidMoveError otherwise.
SlideSeq switchMove(const CartanDatum& datum, const SlideSeq& s, int a,
                    MoveMode mode, const Support& support);

// Remove steps a, a+1 (1-based); they must be the same vertex with
// opposite signs. Throws InvalidMoveError otherwise. Dropping a canceling
// pair never breaks path validity, so no mode is needed.
SlideSeq dropMove(const SlideSeq& s, int a);

// Replay a certificate move by move (path-mode switches re-check validity
// against the support). Throws InvalidMoveError if any move fails.
SlideSeq applyMoves(const CartanDatum& datum, const SlideSeq& s,
                    const MoveCert& cert, MoveMode mode,
                    const Support& support);

// Certificate of rescale-mode moves taking s to the empty sequence.
// Requires the step-sum to vanish on every vertex (throws Error
// otherwise). The certificate is replay-verified before it is returned.
MoveCert reduceToEmpty(const SlideSeq& s);

// Bounded breadth-first search for a path-mode certificate taking p to q.
// Both must be valid paths with the same base and endpoint (throws Error
// otherwise). Returns std::nullopt when the budget (number of explored
// sequences) is exhausted: undecided, not a refutation.
std::optional<MoveCert> slideEquivalent(const CartanDatum& datum,
                                        const SlideSeq& p, const SlideSeq& q,
                                        const Support& support,
                                        long long budget = 100000);

struct AppendReduction {
  SlideSeq path;   // one step shorter than the input canonical path
  MoveCert cert;   // path-mode moves from (canon ++ extra) to path
};

// Given the canonical path to lambda and one more valid slide that steps
// back toward the base (appending +alpha_i requires a_i <= -1, appending
// -alpha_i requires a_i >= 1), produce a slide-equivalent path of length
// |canon| - 1 by bounded search. Throws Error when a precondition fails
// and ClaimFailureError when the search exhausts its budget.
AppendReduction reduceAppended(const CartanDatum& datum, const SlideSeq& canon,
                               SlideStep extra, const Support& support,
                               long long budget = 200000);

}  // namespace klrcalc

#pragma once

#include "klrcalc/cartan.hpp"
#include "klrcalc/dimtable.hpp"
#include "klrcalc/morph.hpp"

namespace klrcalc {

struct HomOptions {
  // Recursion depth cap; exceeding it degrades the answer to Unknown rather
  // than looping. The induction normally terminates on its own against a
  // finite support, so this is a safety net, not a tuning knob.
  int depthBound = 64;
  // Evaluate by transposing letters from the target side instead of the
  // source side. Both routes must agree wherever both are definite; keeping
  // the second route around makes that an executable cross-check.
  bool peelTarget = false;
};

// Graded dimensions of Hom(source, target<d>) for d in [lo, hi].
//
// Both words must share domain and codomain weights; otherwise every entry is
// Exactly(0). Entries are Exactly(n) only when the reduction grounds out in
// the degree-0/negative endomorphism axioms of the weight identities;
// anything the engine cannot pin down is Unknown, never a guess.
//
// Words containing divided-power letters are routed through homDimDivided.
DimTable homDim(const MorphWord& source, const MorphWord& target,
                const CartanDatum& datum, const Support& support, int lo,
                int hi, const HomOptions& opts = {});

// Same, with the default window [-2L, 2L] where L is the total letter count.
DimTable homDim(const MorphWord& source, const MorphWord& target,
                const CartanDatum& datum, const Support& support,
                const HomOptions& opts = {});

// Hom dimensions for words that may carry divided-power letters. Each such
// letter is expanded to a doubled plain letter, the plain table is computed
// on a padded window, and one graded-multiplicity-[2] deconvolution per
// divided power recovers the divided answer:
//   plain(d) = divided(d-1) + divided(d+1),
// solved upward from an anchor of two consecutive Exactly(0) entries at the
// bottom of the padded table. Throws WindowTooNarrowError when no anchor is
// visible.
DimTable homDimDivided(const MorphWord& source, const MorphWord& target,
                       const CartanDatum& datum, const Support& support,
                       int lo, int hi, const HomOptions& opts = {});

DimTable homDimDivided(const MorphWord& source, const MorphWord& target,
                       const CartanDatum& datum, const Support& support,
                       const HomOptions& opts = {});

}  // namespace klrcalc

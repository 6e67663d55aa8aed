#pragma once

// JSON (de)serialization for the library's interchange formats. All JSON
// vertex and edge indices are 0-based; the 1-based spellings live only in
// the human-readable word and diagram text syntaxes ("E1", "e(1,2)").
//
// Object keys serialize in sorted order (nlohmann::json is map-backed), so
// dumped output is byte-deterministic for equal values.

#include <optional>
#include <string>

#include "json.hpp"
#include "klrcalc/cartan.hpp"
#include "klrcalc/dimtable.hpp"
#include "klrcalc/laurent.hpp"
#include "klrcalc/morph.hpp"
#include "klrcalc/paths.hpp"

namespace klrcalc {

using Json = nlohmann::json;

// --- Cartan datum files -----------------------------------------------
// { "vertices": n, "edges": [[i,j], ...], "t": [{"i":…,"j":…,"value":…}] }
// "t" is optional; each "value" is rational text like "3/2" or an integer.
CartanDatum cartanFromJson(const Json& j);

// --- Support files ------------------------------------------------------
// { "base_pairings": [p1, ...], "coords": [[c1, ...], ...] }
Support supportFromJson(const Json& j);
Json supportToJson(const Support& s);

// --- Scalars and coordinate vectors --------------------------------------
// Laurent polynomials as [[degree, coefficient], ...] sorted by degree.
Json laurentToJson(const LaurentInt& p);
LaurentInt laurentFromJson(const Json& j);

// Plain integer array -> root-lattice coordinates.
Coords coordsFromJson(const Json& j);
Json coordsToJson(const Coords& c);

// --- Morphism data --------------------------------------------------------
// Word text: letters left to right ("E1 F2 E1^2"), vertices 1-based, the
// bare token "1" for the identity word, optionally followed by
// "@ [a1, ...]" carrying the domain's root coordinates.
struct ParsedWord {
  Letters letters;
  std::optional<Coords> coords;  // present when the text has an "@" part
};
ParsedWord parseWordText(const std::string& text);

// [{"laurent": [[d,c],...], "word": "F1 E1"}, ...] in canonical word order.
Json classToJson(const GradedClass& c);

// [{"degree": d, "value": n | "unknown"}, ...] over the table's window.
Json dimTableToJson(const DimTable& t);

// --- Support condition reports -------------------------------------------
// {"all_hold": bool, "entries": [{"condition", "detail", "violations"}]}
// with violations listed as coordinate vectors.
Json conditionReportToJson(const ConditionReport& r);

// --- Slide sequences and move certificates ---------------------------------
// Steps as arrays of [sign, vertex] with sign in {1, -1}, vertex 0-based.
Steps stepsFromJson(const Json& j);
Json stepsToJson(const Steps& s);

// [{"kind": "switch" | "drop", "pos": a}, ...] with pos 1-based.
Json moveCertToJson(const MoveCert& c);

}  // namespace klrcalc

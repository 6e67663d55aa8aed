#include "klrcalc/json_io.hpp"

#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

#include "klrcalc/errors.hpp"
#include "klrcalc/rational.hpp"

namespace klrcalc {

namespace {

long long asInt(const Json& j, const std::string& what) {
  if (!j.is_number_integer())
    throw Error("expected an integer for " + what + ", got " + j.dump());
  return j.get<long long>();
}

const Json& asArray(const Json& j, const std::string& what) {
  if (!j.is_array())
    throw Error("expected an array for " + what + ", got " + j.dump());
  return j;
}

std::vector<long long> intVector(const Json& j, const std::string& what) {
  std::vector<long long> out;
  for (const Json& entry : asArray(j, what)) out.push_back(asInt(entry, what));
  return out;
}

}  // namespace

CartanDatum cartanFromJson(const Json& j) {
  if (!j.is_object()) throw Error("cartan data must be a JSON object");
  if (!j.contains("vertices"))
    throw Error("cartan data is missing the \"vertices\" field");
  int vertices = static_cast<int>(asInt(j.at("vertices"), "\"vertices\""));
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    for (const Json& e : asArray(j.at("edges"), "\"edges\"")) {
      asArray(e, "an edge");
      if (e.size() != 2) throw Error("an edge must be a pair [i, j]");
      edges.emplace_back(static_cast<int>(asInt(e.at(0), "an edge endpoint")),
                         static_cast<int>(asInt(e.at(1), "an edge endpoint")));
    }
  }
  CartanDatum datum(vertices, edges);
  if (j.contains("t")) {
    for (const Json& entry : asArray(j.at("t"), "\"t\"")) {
      if (!entry.is_object() || !entry.contains("i") || !entry.contains("j") ||
          !entry.contains("value"))
        throw Error("each \"t\" entry needs fields \"i\", \"j\", \"value\"");
      int i = static_cast<int>(asInt(entry.at("i"), "\"t\" index"));
      int jj = static_cast<int>(asInt(entry.at("j"), "\"t\" index"));
      const Json& value = entry.at("value");
      Rational r = value.is_string()
                       ? Rational::parse(value.get<std::string>())
                       : Rational(asInt(value, "\"t\" value"));
      datum.setT(i, jj, r);
    }
  }
  return datum;
}

Support supportFromJson(const Json& j) {
  if (!j.is_object()) throw Error("support data must be a JSON object");
  if (!j.contains("base_pairings"))
    throw Error("support data is missing the \"base_pairings\" field");
  if (!j.contains("coords"))
    throw Error("support data is missing the \"coords\" field");
  std::vector<long long> base =
      intVector(j.at("base_pairings"), "\"base_pairings\"");
  std::set<Coords> coords;
  for (const Json& c : asArray(j.at("coords"), "\"coords\"")) {
    Coords v = intVector(c, "a coordinate vector");
    if (v.size() != base.size())
      throw Error("coordinate vector length " + std::to_string(v.size()) +
                  " does not match base_pairings length " +
                  std::to_string(base.size()));
    coords.insert(std::move(v));
  }
  return Support(std::move(base), std::move(coords));
}

Json supportToJson(const Support& s) {
  Json coords = Json::array();
  const std::set<Coords>& cs = s.coordSet();
  for (const Coords& c : cs) coords.push_back(c);
  return Json{{"base_pairings", s.basePairings()}, {"coords", coords}};
}

Json laurentToJson(const LaurentInt& p) {
  Json out = Json::array();
  const auto pairs = p.pairs();
  for (const auto& [deg, coeff] : pairs) out.push_back(Json::array({deg, coeff}));
  return out;
}

LaurentInt laurentFromJson(const Json& j) {
  std::vector<std::pair<int, long long>> pairs;
  for (const Json& term : asArray(j, "a Laurent polynomial")) {
    asArray(term, "a Laurent term");
    if (term.size() != 2)
      throw Error("a Laurent term must be a pair [degree, coefficient]");
    pairs.emplace_back(static_cast<int>(asInt(term.at(0), "a degree")),
                       asInt(term.at(1), "a coefficient"));
  }
  return LaurentInt::fromPairs(pairs);
}

Coords coordsFromJson(const Json& j) {
  return intVector(j, "a coordinate vector");
}

Json coordsToJson(const Coords& c) { return Json(c); }

ParsedWord parseWordText(const std::string& text) {
  std::string letterPart = text;
  std::optional<Coords> coords;
  const size_t at = text.find('@');
  if (at != std::string::npos) {
    letterPart = text.substr(0, at);
    const std::string coordText = text.substr(at + 1);
    Json parsed;
    try {
      parsed = Json::parse(coordText);
    } catch (const Json::exception& e) {
      throw Error("invalid coordinate vector after '@': " +
                  std::string(e.what()));
    }
    coords = coordsFromJson(parsed);
  }

  std::istringstream in(letterPart);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);

  ParsedWord out;
  out.coords = std::move(coords);
  if (tokens.size() == 1 && tokens[0] == "1") return out;  // identity word
  for (const std::string& tok : tokens) {
    size_t pos = 0;
    char kind = tok[pos++];
    if (kind != 'E' && kind != 'F')
      throw Error("unrecognized letter token '" + tok +
                  "' (expected E<k>, F<k>, or E<k>^2)");
    size_t digits = pos;
    while (digits < tok.size() && std::isdigit(static_cast<unsigned char>(
                                      tok[digits])))
      ++digits;
    if (digits == pos)
      throw Error("letter token '" + tok + "' is missing a vertex number");
    int vertex1 = std::stoi(tok.substr(pos, digits - pos));
    if (vertex1 < 1)
      throw Error("letter token '" + tok + "' must use a 1-based vertex");
    bool squared = false;
    if (digits < tok.size()) {
      if (tok.substr(digits) != "^2")
        throw Error("unrecognized letter token '" + tok + "'");
      squared = true;
    }
    if (squared && kind != 'E')
      throw Error("divided powers are only supported on E letters, got '" +
                  tok + "'");
    const int v = vertex1 - 1;
    out.letters.push_back(squared ? ed2Let(v)
                                  : (kind == 'E' ? eLet(v) : fLet(v)));
  }
  if (out.letters.empty() && !(tokens.empty()))
    throw Error("empty word: use the token \"1\" for the identity word");
  return out;
}

Json classToJson(const GradedClass& c) {
  Json out = Json::array();
  const auto terms = c.terms();
  for (const auto& [letters, poly] : terms)
    out.push_back(Json{{"laurent", laurentToJson(poly)},
                       {"word", lettersStr(letters)}});
  return out;
}

Json dimTableToJson(const DimTable& t) {
  Json out = Json::array();
  for (int d = t.lo(); d <= t.hi(); ++d) {
    const DimValue v = t.at(d);
    out.push_back(Json{{"degree", d},
                       {"value", v.has_value() ? Json(*v) : Json("unknown")}});
  }
  return out;
}

Json conditionReportToJson(const ConditionReport& r) {
  Json entries = Json::array();
  for (const ConditionReport::Entry& e : r.entries) {
    Json violations = Json::array();
    for (const Weight& w : e.violations) violations.push_back(w.coords);
    entries.push_back(Json{{"condition", e.condition},
                           {"detail", e.detail},
                           {"violations", violations}});
  }
  return Json{{"all_hold", r.allHold()}, {"entries", entries}};
}

Steps stepsFromJson(const Json& j) {
  Steps out;
  for (const Json& step : asArray(j, "a slide sequence")) {
    asArray(step, "a slide step");
    if (step.size() != 2)
      throw Error("a slide step must be a pair [sign, vertex]");
    int sign = static_cast<int>(asInt(step.at(0), "a step sign"));
    int vertex = static_cast<int>(asInt(step.at(1), "a step vertex"));
    if (sign != 1 && sign != -1)
      throw Error("a step sign must be 1 or -1, got " + std::to_string(sign));
    if (vertex < 0)
      throw Error("a step vertex must be >= 0, got " + std::to_string(vertex));
    out.push_back(SlideStep{sign, vertex});
  }
  return out;
}

Json stepsToJson(const Steps& s) {
  Json out = Json::array();
  for (const SlideStep& step : s)
    out.push_back(Json::array({step.sign, step.vertex}));
  return out;
}

Json moveCertToJson(const MoveCert& c) {
  Json out = Json::array();
  for (const Move& m : c)
    out.push_back(Json{{"kind", m.kind == Move::Kind::Switch ? "switch"
                                                             : "drop"},
                       {"pos", m.pos}});
  return out;
}

}  // namespace klrcalc

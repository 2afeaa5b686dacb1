#pragma once

// The .cset text format:
//
//   # comment
//   space X:2 Y:3
//   vertex 1/3 0 0 2/3 0 0
//   vertex 0.25 0 0 0.75 0 0
//
// One space line, then one vertex line per generator; values are integers,
// fractions a/b or finite decimals, read exactly. Cells are row-major over
// the space line with the last variable fastest.

#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "credal/credal.hpp"
#include "credal/errors.hpp"

namespace credal {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<Variable> parse_variable(std::string_view token) {
  const auto colon = token.find(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  const auto card = Rational::parse(token.substr(colon + 1));
  if (!card || !card->is_integer() || card->sign() <= 0) return std::nullopt;
  return Variable{std::string(token.substr(0, colon)), static_cast<std::size_t>(card->to_double())};
}

}  // namespace detail

/// Parses a document into a function set. Structural problems raise
/// ParseError with the line number; negative values raise ValidationError.
/// Normalization is not checked here (see parse_credal).
inline FuncSet parse_cset(std::string_view text) {
  std::optional<Space> space;
  std::vector<Point> vertices;
  std::size_t line_no = 0, space_line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "space") {
      if (space) throw ParseError(line_no, "second space declaration (first on line " + std::to_string(space_line) + ")");
      if (tokens.size() < 2) throw ParseError(line_no, "space declaration lists no variables");
      std::vector<Variable> vars;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto v = detail::parse_variable(tokens[i]);
        if (!v) throw ParseError(line_no, "expected NAME:CARDINALITY, got '" + tokens[i] + "'");
        vars.push_back(std::move(*v));
      }
      try {
        space = Space(std::move(vars));
      } catch (const InputError& e) {
        throw ParseError(line_no, e.what());
      }
      space_line = line_no;
    } else if (tokens[0] == "vertex") {
      if (!space) throw ParseError(line_no, "vertex before the space declaration");
      if (tokens.size() - 1 != space->size())
        throw ParseError(line_no, "vertex has " + std::to_string(tokens.size() - 1) + " values, space has " +
                                      std::to_string(space->size()) + " cells");
      Point p;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto v = Rational::parse(tokens[i]);
        if (!v) throw ParseError(line_no, "not a number: '" + tokens[i] + "'");
        if (v->sign() < 0) throw ValidationError("line " + std::to_string(line_no) + ": negative value " + v->str());
        p.push_back(std::move(*v));
      }
      vertices.push_back(std::move(p));
    } else {
      throw ParseError(line_no, "unknown directive '" + tokens[0] + "'");
    }
  }
  if (!space) throw ParseError(line_no, "missing space declaration");
  if (vertices.empty()) throw ParseError(line_no, "no vertex lines");
  return FuncSet(std::move(*space), std::move(vertices));
}

/// parse_cset plus the credal-set requirement that every vertex has mass 1.
inline CredalSet parse_credal(std::string_view text) { return CredalSet(parse_cset(text)); }

/// Canonical text: no comments, single spaces, reduced fractions.
inline std::string render_cset(const FuncSet& h) {
  std::ostringstream os;
  os << "space " << h.space().describe() << '\n';
  for (const auto& v : h.vertices()) {
    os << "vertex";
    for (const auto& x : v) os << ' ' << x.str();
    os << '\n';
  }
  return os.str();
}

/// Reads a likelihood literal such as "Y:0,1,1" or "X*Y:1,0,0,1" against the
/// variables of `model`.
inline Likelihood parse_likelihood(std::string_view text, const Space& model) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) throw InputError("likelihood must look like VAR:v1,v2,...");
  VarList names;
  std::string_view head = text.substr(0, colon);
  while (true) {
    const auto star = head.find('*');
    names.emplace_back(head.substr(0, star));
    if (star == std::string_view::npos) break;
    head = head.substr(star + 1);
  }
  std::vector<Variable> vars;
  for (const auto& n : names) {
    auto p = model.position(n);
    if (!p) throw InputError("likelihood variable '" + n + "' is not in the model");
    vars.push_back(model.variables()[*p]);
  }
  Space s(std::move(vars));
  std::vector<Rational> values;
  std::string_view rest = text.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    auto v = Rational::parse(item);
    if (!v) throw InputError("not a number in likelihood: '" + std::string(item) + "'");
    if (v->sign() < 0) throw InputError("negative likelihood value " + v->str());
    values.push_back(std::move(*v));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (values.size() != s.size())
    throw InputError("likelihood has " + std::to_string(values.size()) + " values, '" + s.describe() + "' has " +
                     std::to_string(s.size()) + " cells");
  return Likelihood(std::move(s), std::move(values));
}

}  // namespace credal

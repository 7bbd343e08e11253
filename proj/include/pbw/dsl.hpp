#pragma once

// The .pbw text format.
//
//   algebra NAME { scalars: a, b; coeffs: x; gens: g1 < g2;
//                  sigma g2: x -> x + 1; rule: g2*g1 = g1*g2 + x; }
//   map NAME: SRC -> DST { g -> expr; x -> expr; kind: projection; }
//
// Expressions use infix + - * / ^ with explicit '*'.  Division is only by
// coefficient expressions.  '#' starts a comment.  Errors carry "line:col".

#include <string>
#include <string_view>
#include <vector>

#include "pbw/morphcheck.hpp"
#include "pbw/skewpbw.hpp"

namespace pbw {

struct SourceFile {
  std::vector<AlgebraPresentation> algebras;
  std::vector<GeneratorMorphism> maps;

  const AlgebraPresentation* find_algebra(const std::string& name) const;
  const GeneratorMorphism* find_map(const std::string& name) const;
};

// Throws SyntaxError, UndeclaredSymbol, MisorientedRule, NonAscendingRuleRHS
// or InvalidPresentation.  Presentations are validated.  Map endpoints not
// declared in the file are looked up in the catalog by key.
SourceFile parse_source(std::string_view text);
SourceFile parse_source_file(const std::string& path);

// Canonical text; parse_source(print(x)) reproduces x.
std::string print(const AlgebraPresentation& p);
std::string print(const GeneratorMorphism& m);  // with both algebra blocks
std::string print(const SourceFile& f);

// An element of p, not yet normalized.  Identifiers must be generators,
// coefficients or scalars of p.
RawSum parse_expression(const AlgebraPresentation& p, std::string_view text);
// A rational function; every identifier is a free variable.
RationalFunction parse_rational_function(std::string_view text);

std::string to_string(MorphKind k);

}  // namespace pbw

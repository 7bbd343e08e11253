#pragma once

// Built-in presentations.  Parameters are exact rational functions keyed by
// name: "h0" is a polynomial in t for the nonlinear sl2 entries; scalar names
// such as "q" or "qR" may be given rational values to specialize an entry.

#include <map>
#include <string>
#include <vector>

#include "pbw/skewpbw.hpp"

namespace pbw {

using Params = std::map<std::string, RationalFunction>;

struct CatalogEntry {
  std::string key;
  std::string summary;
  std::vector<std::string> required;  // parameters that must be supplied
  std::vector<std::string> optional;  // scalars that may be specialized
};

const std::vector<CatalogEntry>& list_entries();
const CatalogEntry& find_entry(const std::string& key);  // throws UnknownKey

// Validated and confluence-checked presentation.  Throws UnknownKey,
// MissingParameter, InvalidPresentation or ConfluenceFailure.
AlgebraPresentation build(const std::string& key, const Params& params = {});

// Replaces scalar symbols by rational values everywhere in the presentation.
AlgebraPresentation specialize(const AlgebraPresentation& p, const std::map<Symbol, Rational>& values);

// Maximum degree accepted for h0.
inline constexpr int kMaxH0Degree = 8;

}  // namespace pbw

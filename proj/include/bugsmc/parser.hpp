#pragma once

//! Parser for the BUGS-dialect model language. Produces a ModelAst;
//! distribution names are not validated here (that happens when the
//! model definition is built against the distribution registry).

#include <string_view>
#include <vector>

#include "bugsmc/ast.hpp"

namespace bugsmc {

// Parses model source text. `#` starts a line comment. Accepts an optional
// `model { ... }` wrapper around the declarations. Throws ParseError with
// line/column on malformed input.
ModelAst parseModel(std::string_view text);

// A fully resolved variable subset such as "alpha", "theta[1:3]" or
// "y[2, 3]": only integer literals and literal a:b ranges are allowed
// as indices. Used for node lookups and value access.
struct NodeSpec {
  std::string name;
  // per-dimension inclusive 1-based [lo, hi]; lo == hi for a scalar index
  std::vector<std::pair<int, int>> ranges;
};

NodeSpec parseNodeSpec(std::string_view text);

}  // namespace bugsmc

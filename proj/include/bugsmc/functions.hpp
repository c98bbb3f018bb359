#pragma once

//! Known scalar functions usable in model expressions.

#include <optional>
#include <string>

namespace bugsmc {

struct ScalarFunction {
  int id = -1;
  int arity = 0;
  double (*fn1)(double) = nullptr;
  double (*fn2)(double, double) = nullptr;
};

// Lookup by name; nullopt for unknown functions.
std::optional<ScalarFunction> findScalarFunction(const std::string& name);

const ScalarFunction& scalarFunctionById(int id);

double applyScalarFunction(const ScalarFunction& f, double a, double b = 0.0);

}  // namespace bugsmc

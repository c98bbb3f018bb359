#include "bugsmc/functions.hpp"

#include <array>
#include <cmath>

namespace bugsmc {

namespace {

double fnLogit(double x) { return std::log(x / (1.0 - x)); }
double fnIlogit(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double fnStep(double x) { return x >= 0.0 ? 1.0 : 0.0; }
double fnAbs(double x) { return std::fabs(x); }
double fnMin(double a, double b) { return a < b ? a : b; }
double fnMax(double a, double b) { return a > b ? a : b; }

struct NamedFn {
  const char* name;
  ScalarFunction fn;
};

const std::array<NamedFn, 14> kFunctions = {{
    {"exp", {0, 1, [](double x) { return std::exp(x); }, nullptr}},
    {"log", {1, 1, [](double x) { return std::log(x); }, nullptr}},
    {"sqrt", {2, 1, [](double x) { return std::sqrt(x); }, nullptr}},
    {"abs", {3, 1, fnAbs, nullptr}},
    {"floor", {4, 1, [](double x) { return std::floor(x); }, nullptr}},
    {"ceil", {5, 1, [](double x) { return std::ceil(x); }, nullptr}},
    {"logit", {6, 1, fnLogit, nullptr}},
    {"ilogit", {7, 1, fnIlogit, nullptr}},
    {"expit", {8, 1, fnIlogit, nullptr}},
    {"step", {9, 1, fnStep, nullptr}},
    {"lgamma", {10, 1, [](double x) { return std::lgamma(x); }, nullptr}},
    {"pow", {11, 2, nullptr, [](double a, double b) { return std::pow(a, b); }}},
    {"min", {12, 2, nullptr, fnMin}},
    {"max", {13, 2, nullptr, fnMax}},
}};

}  // namespace

std::optional<ScalarFunction> findScalarFunction(const std::string& name) {
  for (const auto& f : kFunctions) {
    if (name == f.name) return f.fn;
  }
  return std::nullopt;
}

const ScalarFunction& scalarFunctionById(int id) { return kFunctions.at(static_cast<size_t>(id)).fn; }

double applyScalarFunction(const ScalarFunction& f, double a, double b) {
  return f.arity == 1 ? f.fn1(a) : f.fn2(a, b);
}

}  // namespace bugsmc

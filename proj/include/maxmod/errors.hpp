#pragma once

#include <stdexcept>
#include <string>

namespace maxmod {

struct Error : std::runtime_error {
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct NonConvergence : Error {
  explicit NonConvergence(const std::string& w) : Error("NonConvergence", w) {}
};
struct IllConditioned : Error {
  explicit IllConditioned(const std::string& w) : Error("IllConditioned", w) {}
};
struct NotDivisible : Error {
  explicit NotDivisible(const std::string& w) : Error("NotDivisible", w) {}
};
struct DegenerateConstantTerm : Error {
  explicit DegenerateConstantTerm(const std::string& w) : Error("DegenerateConstantTerm", w) {}
};
struct DegenerateLeading : Error {
  explicit DegenerateLeading(const std::string& w) : Error("DegenerateLeading", w) {}
};
struct CoefficientVanished : Error {
  CoefficientVanished(int n, const std::string& w)
      : Error("CoefficientVanished", w + " (n=" + std::to_string(n) + ")"), index(n) {}
  int index;
};
struct SingularStep : Error {
  explicit SingularStep(const std::string& w) : Error("SingularStep", w) {}
};
struct NoSpectralGap : Error {
  explicit NoSpectralGap(const std::string& w) : Error("NoSpectralGap", w) {}
};
struct MultiplePole : Error {
  explicit MultiplePole(const std::string& w) : Error("MultiplePole", w) {}
};
struct NotRealCoefficients : Error {
  explicit NotRealCoefficients(const std::string& w) : Error("NotRealCoefficients", w) {}
};
struct Q2VanishesOnSupport : Error {
  explicit Q2VanishesOnSupport(const std::string& w) : Error("Q2VanishesOnSupport", w) {}
};
struct OutsideSupport : Error {
  explicit OutsideSupport(const std::string& w) : Error("OutsideSupport", w) {}
};
struct DegenerateB : Error {
  explicit DegenerateB(const std::string& w) : Error("DegenerateB", w) {}
};
struct IdenticallyZero : Error {
  explicit IdenticallyZero(const std::string& w) : Error("IdenticallyZero", w) {}
};
struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& w) : Error("InvalidSpec", w) {}
};

}  // namespace maxmod

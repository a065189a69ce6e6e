#include "maxmod/recurrence.hpp"

#include <random>

#include "doctest.h"

using namespace maxmod;

namespace {
const Complex I(0, 1);
const double phi = (1 + std::sqrt(5.0)) / 2;
const double psi = (1 - std::sqrt(5.0)) / 2;

RecurrenceSpec fibonacci() {
  RecurrenceSpec s;
  s.k = 2;
  s.coeffs = {CoeffRule::fixed(ComplexPoly{-1}), CoeffRule::fixed(ComplexPoly{-1})};
  return s;
}

RecurrenceSpec fig2() {
  // p_{n+1} = z p_n + ((3z-4)/4) p_{n-1}
  return RecurrenceSpec::from_q_form({ComplexPoly{0, 1}, ComplexPoly{-1, 0.75}});
}
}  // namespace

TEST_CASE("char_poly transcription") {
  CHECK((char_poly(fibonacci(), 0.0) - ComplexPoly{-1, -1, 1}).norm1() < 1e-15);

  // 4-term relation with coefficients 1, (z+1)(z-i), z^3+10
  RecurrenceSpec f1 = RecurrenceSpec::from_q_form(
      {ComplexPoly{1}, ComplexPoly{-I, Complex(1) - I, 1}, ComplexPoly{10, 0, 0, 1}});
  ComplexPoly p0 = char_poly(f1, 0.0);
  // Psi^3 - Psi^2 + i Psi - 10
  CHECK((p0 - ComplexPoly{-10, I, -1, 1}).norm1() < 1e-14);

  ComplexPoly p3 = char_poly(fig2(), 3.0);
  CHECK((p3 - ComplexPoly{-1.25, -3, 1}).norm1() < 1e-14);
}

TEST_CASE("spectral classification") {
  auto sd = spectral_data(ComplexPoly{-1, -1, 1}, {1.0, 1.0});
  CHECK(sd.classification == SpectralClass::MaxmodGeneric);
  CHECK(std::abs(sd.lambda_max - phi) < 1e-12);

  auto dom = spectral_data(ComplexPoly{1, 0, 1}, {Complex(1), I});
  CHECK(dom.classification == SpectralClass::NongenericDominant);
  CHECK(std::abs(dom.dominant - I) < 1e-12);

  auto nod = spectral_data(ComplexPoly{1, 0, 1}, {Complex(1), Complex(0)});
  CHECK(nod.classification == SpectralClass::NongenericNondominant);

  CHECK_THROWS_AS(spectral_data(ComplexPoly{0, -1, 1}, {1.0, 1.0}), DegenerateConstantTerm);
}

TEST_CASE("closed form: Binet and friends") {
  ClosedForm fib = closed_form(ComplexPoly{-1, -1, 1}, {0.0, 1.0});
  REQUIRE(fib.terms.size() == 2);
  // coefficient 1/sqrt(5) at phi, -1/sqrt(5) at 1-phi
  for (const auto& t : fib.terms) {
    if (std::abs(t.lambda - phi) < 1e-9) CHECK(std::abs(t.poly(0.0) - 1 / std::sqrt(5.0)) < 1e-12);
    if (std::abs(t.lambda - psi) < 1e-9) CHECK(std::abs(t.poly(0.0) + 1 / std::sqrt(5.0)) < 1e-12);
  }

  ClosedForm geo = closed_form(ComplexPoly{-2, 1}, {3.0});
  REQUIRE(geo.terms.size() == 1);
  CHECK(std::abs(geo.terms[0].lambda - 2.0) < 1e-14);
  CHECK(std::abs(geo.terms[0].poly(7.0) - Complex(3)) < 1e-12);

  ClosedForm ramp = closed_form(ComplexPoly{1, -2, 1}, {0.0, 1.0});
  REQUIRE(ramp.terms.size() == 1);
  CHECK(ramp.terms[0].poly.degree() == 1);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(ramp.eval(n) - Complex(n)) < 1e-9);
}

TEST_CASE("closed form reconstructs the iterated orbit") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  int done = 0;
  while (done < 12) {
    int k = 2 + int(rng() % 4);
    std::vector<Complex> roots;
    for (int i = 0; i < k; ++i) roots.push_back(Complex(u(rng), u(rng)) + Complex(0.3, 0));
    bool sep = true;
    for (size_t i = 0; i < roots.size() && sep; ++i) {
      if (std::abs(roots[i]) < 0.2) sep = false;
      for (size_t j = i + 1; j < roots.size(); ++j)
        if (std::abs(roots[i] - roots[j]) < 0.2) sep = false;
    }
    if (!sep) continue;
    ++done;
    ComplexPoly cp = ComplexPoly::from_roots(roots);
    RecurrenceSpec spec;
    spec.k = k;
    for (int i = 1; i <= k; ++i)
      spec.coeffs.push_back(CoeffRule::fixed(ComplexPoly{cp.coeff(k - i)}));
    std::vector<Complex> init;
    for (int i = 0; i < k; ++i) init.push_back(Complex(u(rng), u(rng)));

    ClosedForm cf = closed_form(cp, init);
    IterateResult it = iterate(spec, 0.0, init, 50);
    for (int n = 0; n <= 50; ++n) {
      Complex want = it.values[n] * std::exp(it.log_scale[n]);
      CHECK(std::abs(cf.eval(n) - want) < 1e-8 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("slow growth functional: Fibonacci kernel") {
  SlowGrowthFunctional sg = slow_growth_functional(ComplexPoly{-1, -1, 1});
  REQUIRE(sg.normal.size() == 2);
  // kernel is u1 = psi * u0
  Complex on_kernel = sg.normal[0] * 1.0 + sg.normal[1] * psi;
  CHECK(std::abs(on_kernel) < 1e-12);
  Complex off_kernel = sg.normal[0] * 0.0 + sg.normal[1] * 1.0;
  CHECK(std::abs(off_kernel) > 1e-3);
  CHECK(std::abs(sg.normal.cwiseAbs().maxCoeff() - 1.0) < 1e-14);
}

TEST_CASE("slow initial pair rides the subdominant root") {
  IterateResult it = iterate(fibonacci(), 0.0, {Complex(1), Complex(psi)}, 30);
  CHECK(std::abs(it.ratios[20 - 1] - psi) < 1e-6);
  // and is nowhere near phi at that horizon
  CHECK(std::abs(it.ratios[20 - 1] - phi) > 1.0);
}

TEST_CASE("iterate: Fibonacci values and long-run ratio") {
  IterateResult it = iterate(fibonacci(), 0.0, {0.0, 1.0}, 61);
  std::vector<double> expect{0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
  for (int n = 0; n <= 10; ++n) CHECK(std::abs(it.values[n] - expect[n]) < 1e-12);
  CHECK(std::abs(it.ratios[60] - phi) < 1e-10);
}

TEST_CASE("iterate: Fig 2 hand-checked first steps") {
  IterateResult it = iterate(fig2(), 2.0, {0.0, 1.0}, 3);
  CHECK(std::abs(it.values[2] - Complex(2)) < 1e-14);    // p_1
  CHECK(std::abs(it.values[3] - Complex(4.5)) < 1e-14);  // p_2
}

TEST_CASE("iterate raises when the trailing coefficient dies") {
  // alpha_2 = z: vanishes at z = 0
  RecurrenceSpec s = RecurrenceSpec::from_q_form({ComplexPoly{1}, ComplexPoly{0, -1}});
  CHECK_THROWS_AS(iterate(s, 0.0, {1.0, 1.0}, 10), CoefficientVanished);
}

TEST_CASE("ratio error decays at the spectral rate") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.3, 0.75);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  for (int trial = 0; trial < 8; ++trial) {
    double r2 = u(rng);
    Complex lam1(2.0, 0.0);
    Complex lam2 = std::polar(2.0 * r2, ang(rng));
    ComplexPoly cp = ComplexPoly::from_roots({lam1, lam2});
    RecurrenceSpec spec;
    spec.k = 2;
    spec.coeffs = {CoeffRule::fixed(ComplexPoly{cp.coeff(1)}),
                   CoeffRule::fixed(ComplexPoly{cp.coeff(0)})};
    IterateResult it = iterate(spec, 0.0, {1.0, 1.0}, 40, {.normalized = true});
    double e10 = std::abs(it.ratios[10] - lam1);
    double e25 = std::abs(it.ratios[25] - lam1);
    if (e10 < 1e-13 || e25 < 1e-13) continue;  // already at the floor
    double rate = std::pow(e25 / e10, 1.0 / 15.0);
    CHECK(rate == doctest::Approx(r2).epsilon(0.20));
  }
}

TEST_CASE("coefficient scaling moves lambda_max multiplicatively") {
  // alpha_i -> r^i alpha_i multiplies roots by r
  ComplexPoly base{-1, -1, 1};
  std::vector<double> rs{0.5, 2.0, 10.0};
  for (double r : rs) {
    ComplexPoly scaled{base.coeff(0) * r * r, base.coeff(1) * r, 1.0};
    auto a = spectral_data(base, {1.0, 0.0});
    auto b = spectral_data(scaled, {1.0, 0.0});
    CHECK(a.classification == b.classification);
    CHECK(std::abs(b.lambda_max - Complex(r) * a.lambda_max) < 1e-9 * r);
  }
}

TEST_CASE("slow-growth kernel has dimension k-1") {
  // kappa is a rank-one functional: any k-1 independent vectors in its kernel
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 2; k <= 5; ++k) {
    std::vector<Complex> roots;
    for (int i = 0; i < k; ++i) roots.push_back(Complex(0.4 + 0.3 * i, u(rng) * 0.1));
    ComplexPoly cp = ComplexPoly::from_roots(roots);
    SlowGrowthFunctional sg = slow_growth_functional(cp);
    int nonzero = 0;
    for (int i = 0; i < k; ++i)
      if (std::abs(sg.normal[i]) > 1e-12) ++nonzero;
    CHECK(nonzero >= 1);  // rank exactly 1 as a functional
    CHECK(sg.normal.size() == k);
  }
}

TEST_CASE("varying rule c/n converges to the limit") {
  CoeffRule r = CoeffRule::varying_cn(ComplexPoly{-1}, Complex(0.5, 0));
  CHECK(std::abs(r.at(1)(0.0) - Complex(-0.5)) < 1e-15);
  CHECK(std::abs(r.at(1000)(0.0) - Complex(-0.9995)) < 1e-12);
}

TEST_CASE("polynomial orbit matches scalar iteration pointwise") {
  RecurrenceSpec spec = fig2();
  std::vector<ComplexPoly> init{ComplexPoly{0}, ComplexPoly{1}};
  auto orbit = polynomial_orbit(spec, init, {12});
  ComplexPoly p12 = orbit[12].to_double();
  Complex z(0.7, 0.3);
  IterateResult it = iterate(spec, z, {0.0, 1.0}, 12, {.normalized = true});
  // orbits are scale free: compare the ratio against level 11
  auto pair = polynomial_orbit_pair(spec, init, 11);
  Complex ratio_poly = pair.upper.eval(dd::Complex(z)).to_std() / pair.lower.eval(dd::Complex(z)).to_std();
  CHECK(std::abs(ratio_poly - it.ratios[11]) < 1e-9 * (1 + std::abs(ratio_poly)));
  CHECK(p12.degree() == 11);  // orbit level j has degree j-1 for this family
}

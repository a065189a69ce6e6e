#include "maxmod/cpoly.hpp"

#include <random>

#include "doctest.h"
#include "maxmod/rootfind.hpp"

using namespace maxmod;

namespace {
const Complex I(0, 1);

bool matched_within(const std::vector<Complex>& found, const std::vector<Complex>& expect,
                    double tol) {
  if (found.size() != expect.size()) return false;
  std::vector<bool> used(found.size(), false);
  for (Complex e : expect) {
    bool hit = false;
    for (size_t i = 0; i < found.size(); ++i) {
      if (!used[i] && std::abs(found[i] - e) < tol) {
        used[i] = true;
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("horner evaluation") {
  ComplexPoly p{-1, -1, 1};  // t^2 - t - 1
  CHECK(std::abs(p(2.0) - Complex(1)) < 1e-15);
  ComplexPoly c{1};
  CHECK(std::abs(c(Complex(5, 3)) - Complex(1)) < 1e-15);
  ComplexPoly fig1{10, 0, 0, 1};  // t^3 + 10
  CHECK(std::abs(fig1(0.0) - Complex(10)) < 1e-15);
}

TEST_CASE("zero polynomial is distinct from constant one") {
  ComplexPoly zero;
  ComplexPoly one{1};
  CHECK(zero.is_zero());
  CHECK(!one.is_zero());
  CHECK(zero.degree() == 0);
}

TEST_CASE("quadratic roots: golden ratio pair") {
  RootSet rs = roots(ComplexPoly{-1, -1, 1});
  REQUIRE(rs.roots.size() == 2);
  double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::abs(rs.roots[0].value - phi) < 1e-12);
  CHECK(std::abs(rs.roots[1].value - (1 - phi)) < 1e-12);
  CHECK(rs.roots[0].multiplicity == 1);
}

TEST_CASE("double root clusters to multiplicity 2") {
  RootSet rs = roots(ComplexPoly{1, -2, 1});  // (t-1)^2
  REQUIRE(rs.roots.size() == 1);
  CHECK(rs.roots[0].multiplicity == 2);
  CHECK(std::abs(rs.roots[0].value - 1.0) < 1e-6);
}

TEST_CASE("z^2+3z-4 roots are the interval endpoints") {
  RootSet rs = roots(ComplexPoly{-4, 3, 1});
  REQUIRE(rs.total_multiplicity() == 2);
  CHECK(std::abs(rs.roots[0].value - (-4.0)) < 1e-12);
  CHECK(std::abs(rs.roots[1].value - 1.0) < 1e-12);
}

TEST_CASE("random monic polynomials from known roots round-trip") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    int deg = 2 + int(rng() % 7);
    std::vector<Complex> rs;
    for (int i = 0; i < deg; ++i) rs.push_back(Complex(u(rng), u(rng)));
    // keep roots separated so multiplicities stay 1
    bool ok = true;
    for (size_t i = 0; i < rs.size() && ok; ++i)
      for (size_t j = i + 1; j < rs.size(); ++j)
        if (std::abs(rs[i] - rs[j]) < 0.15) ok = false;
    if (!ok) continue;
    RootSet found = roots(ComplexPoly::from_roots(rs));
    CHECK(found.total_multiplicity() == deg);
    std::vector<Complex> vals;
    for (const auto& e : found.roots) vals.push_back(e.value);
    CHECK(matched_within(vals, rs, 1e-8));
  }
}

TEST_CASE("root ordering is deterministic: descending modulus, ascending argument") {
  // roots i and -i share modulus; arg(i) = pi/2 < arg(-i) = 3pi/2
  auto rs = raw_roots(ComplexPoly{1, 0, 1});
  REQUIRE(rs.size() == 2);
  CHECK(std::abs(rs[0] - I) < 1e-12);
  CHECK(std::abs(rs[1] + I) < 1e-12);
}

TEST_CASE("sylvester resultant values") {
  ComplexPoly t_minus_1{-1, 1}, t_minus_2{-2, 1};
  CHECK(std::abs(sylvester_resultant(t_minus_1, t_minus_1).value) < 1e-12);
  CHECK(std::abs(sylvester_resultant(t_minus_1, t_minus_2).value - Complex(1)) < 1e-12);
  // res(t^2+1, t^2-3t+2) = (1-3i)(1+3i) = 10
  ComplexPoly f{1, 0, 1}, g{2, -3, 1};
  CHECK(std::abs(sylvester_resultant(f, g).value - Complex(10)) < 1e-10);
}

TEST_CASE("resultant vanishes iff root sets intersect") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Complex> fr{Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
    std::vector<Complex> gr{Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
    bool share = trial % 2 == 0;
    if (share) gr[0] = fr[1];
    auto rv = sylvester_resultant(ComplexPoly::from_roots(fr), ComplexPoly::from_roots(gr));
    if (share) {
      CHECK(std::abs(rv.value) < 1e-10 * rv.scale * 1e6);
    } else {
      double mind = 1e300;
      for (Complex a : fr)
        for (Complex b : gr) mind = std::min(mind, std::abs(a - b));
      if (mind > 1e-3) CHECK(std::abs(rv.value) > 1e-12);
    }
  }
}

TEST_CASE("divide_exact strips factors exactly") {
  ComplexPoly um1{-1, 1}, up1{1, 1};
  ComplexPoly p = um1 * um1 * up1 * up1;
  ComplexPoly q = divide_exact(p, um1, 2);
  CHECK(q.degree() == 2);
  CHECK(std::abs(q(Complex(-1)) - Complex(0)) < 1e-12);
  CHECK(std::abs(q(1.0) - Complex(4)) < 1e-12);  // (1+1)^2

  ComplexPoly lin = divide_exact(ComplexPoly{-1, 0, 1}, um1, 1);
  CHECK(std::abs(lin(0.0) - Complex(1)) < 1e-12);
  CHECK(lin.degree() == 1);

  CHECK_THROWS_AS(divide_exact(ComplexPoly{1, 0, 1}, um1, 1), NotDivisible);
}

TEST_CASE("divide then re-multiply reproduces the input") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> dr{Complex(u(rng), u(rng))};
    std::vector<Complex> qr{Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
    ComplexPoly d = ComplexPoly::from_roots(dr);
    ComplexPoly q = ComplexPoly::from_roots(qr);
    int k = 1 + int(rng() % 2);
    ComplexPoly p = q;
    for (int i = 0; i < k; ++i) p = p * d;
    ComplexPoly got = divide_exact(p, d, k);
    ComplexPoly back = got;
    for (int i = 0; i < k; ++i) back = back * d;
    CHECK((back - p).norm1() < 1e-10 * std::max(1.0, p.norm1()));
  }
}

TEST_CASE("affine composition") {
  ComplexPoly p{-4, 3, 1};  // z^2+3z-4
  ComplexPoly q = p.compose_affine(Complex(-1.5), Complex(2.5));
  // q(w) = p(-1.5 + 2.5w); zeros at w = -1, 1
  CHECK(std::abs(q(Complex(-1))) < 1e-12);
  CHECK(std::abs(q(Complex(1))) < 1e-12);
}

TEST_CASE("aberth refinement matches clean roots and fixes ill-conditioned ones") {
  // Chebyshev-like: roots packed in [-1, 1]; degree 40 monomial form is
  // already at the double noise floor, so expand the product in dd
  std::vector<Complex> rs;
  const int deg = 40;
  for (int i = 0; i < deg; ++i) rs.push_back(std::cos((2.0 * i + 1) / (2 * deg) * M_PI));
  PolyDD pd;
  pd.c = {dd::Complex(1.0)};
  for (Complex r : rs) {
    PolyDD lin;
    lin.c = {dd::Complex(-r), dd::Complex(1.0)};
    pd = mul(pd, lin);
  }
  auto found = aberth_roots(pd);
  REQUIRE(found.size() == size_t(deg));
  std::vector<Complex> expect = rs;
  sort_canonical(expect);
  double worst = 0;
  for (size_t i = 0; i < found.size(); ++i) {
    double best = 1e300;
    for (Complex e : expect) best = std::min(best, std::abs(found[i] - e));
    worst = std::max(worst, best);
  }
  CHECK(worst < 1e-10);
}

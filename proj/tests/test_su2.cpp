#include <catch2/catch_amalgamated.hpp>

#include "harmeig/su2.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace harmeig;

namespace {

SU2Elem elem_i_diag() { return su2_diag(Cyc::i()); }                 // diag(i, -i)
SU2Elem elem_j() { return SU2Elem{Cyc::zero(), Cyc::one()}; }        // ((0,-1),(1,0))
SU2Elem elem_half_turn() {
  const Cyc h = Rat(1, 2) * (Cyc::one() + Cyc::i());                 // (1+i)/2
  return SU2Elem{h, h};
}
SU2Elem elem_sixth() { return su2_diag(Cyc::zeta_pow(4)); }          // diag(e^{i pi/3}, e^{-i pi/3})
SU2Elem elem_third() { return su2_diag(Cyc::zeta_pow(8)); }          // diag(e^{2 pi i/3}, .)

std::vector<SU2Elem> element_pool() {
  std::vector<SU2Elem> gens = {elem_i_diag(), elem_j(), elem_half_turn(),
                               elem_sixth(), elem_third()};
  std::vector<SU2Elem> pool = {SU2Elem::identity()};
  auto add = [&pool](const SU2Elem& g) {
    for (const auto& h : pool)
      if (h == g) return;
    pool.push_back(g);
  };
  for (const auto& g : gens) add(g);
  for (const auto& g : gens)
    for (const auto& h : gens) add(g * h);
  for (const auto& g : gens)
    for (const auto& h : gens) add(g * h.inverse());
  return pool;
}

Cyc det3(const Mat& m) {
  return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
         m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
         m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
}

}  // namespace

TEST_CASE("group element validity and inversion") {
  CHECK(SU2Elem::identity().is_valid());
  CHECK(elem_j().is_valid());
  CHECK(elem_half_turn().is_valid());
  for (const auto& g : element_pool()) {
    REQUIRE(g.is_valid());
    REQUIRE(g * g.inverse() == SU2Elem::identity());
  }
  SU2Elem bad{Cyc(Rat(2)), Cyc::zero()};
  CHECK_FALSE(bad.is_valid());
  CHECK_THROWS_AS(rho(2, bad), std::domain_error);
  CHECK_THROWS_AS(adjoint(bad), std::domain_error);
}

TEST_CASE("derived representation closed forms") {
  // n = 2: drho(E3) = diag(2i, 0, -2i)
  Mat e3 = drho(2, LieElem::E3);
  CHECK(e3.at(0, 0) == Rat(2) * Cyc::i());
  CHECK(e3.at(1, 1) == Cyc::zero());
  CHECK(e3.at(2, 2) == Rat(-2) * Cyc::i());

  // n = 3, k = 1: drho(E1) m_1 = -2 m_2 + 1 m_0
  Mat e1 = drho(3, LieElem::E1);
  CHECK(e1.at(2, 1) == Cyc(Rat(-2)));
  CHECK(e1.at(0, 1) == Cyc::one());
  // n = 3, k = 1: drho(E2) m_1 = 2i m_2 + i m_0
  Mat e2 = drho(3, LieElem::E2);
  CHECK(e2.at(2, 1) == Rat(2) * Cyc::i());
  CHECK(e2.at(0, 1) == Cyc::i());
}

TEST_CASE("bracket relations hold in every representation up to n = 12") {
  for (int n = 0; n <= 12; ++n) {
    const Mat e1 = drho(n, LieElem::E1);
    const Mat e2 = drho(n, LieElem::E2);
    const Mat e3 = drho(n, LieElem::E3);
    const Cyc two = Cyc(Rat(2));
    REQUIRE(e1 * e2 - e2 * e1 == two * e3);
    REQUIRE(e2 * e3 - e3 * e2 == two * e1);
    REQUIRE(e3 * e1 - e1 * e3 == two * e2);
  }
}

TEST_CASE("substitution representation is a homomorphism") {
  auto pool = element_pool();
  std::mt19937_64 rng(811u);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int iter = 0; iter < 50; ++iter) {
    const SU2Elem g = pool[pick(rng)], h = pool[pick(rng)];
    const SU2Elem gh = g * h;
    for (int n = 0; n <= 8; ++n)
      REQUIRE(rho(n, gh) == rho(n, g) * rho(n, h));
  }
}

TEST_CASE("antidiagonal element acts by signed index flip") {
  // ((0,-1),(1,0)) sends m_k -> (-1)^k m_{6-k} on V_6
  const Mat r = rho(6, elem_j());
  for (int k = 0; k <= 6; ++k)
    for (int j = 0; j <= 6; ++j) {
      const Cyc expect = (j == 6 - k) ? Cyc(Rat(k % 2 == 0 ? 1 : -1)) : Cyc::zero();
      REQUIRE(r.at(j, k) == expect);
    }
}

TEST_CASE("diagonal elements act by weights") {
  const Cyc w = Cyc::zeta_pow(8);
  for (int n : {2, 5, 6}) {
    const Mat r = rho(n, su2_diag(w));
    for (int k = 0; k <= n; ++k)
      for (int j = 0; j <= n; ++j) {
        const Cyc expect = (j == k) ? Cyc::zeta_pow(8L * (n - 2 * k)) : Cyc::zero();
        REQUIRE(r.at(j, k) == expect);
      }
  }
}

TEST_CASE("adjoint matrices are special orthogonal and multiplicative") {
  auto pool = element_pool();
  for (const auto& g : pool) {
    const Mat ad = adjoint(g);
    REQUIRE(ad.transpose() * ad == Mat::identity(3));
    REQUIRE(det3(ad) == Cyc::one());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        REQUIRE(ad.at(i, j).is_real());
  }
  const SU2Elem g = elem_half_turn(), h = elem_sixth();
  CHECK(adjoint(g * h) == adjoint(g) * adjoint(h));

  // ((0,-1),(1,0)) fixes E1 and flips E2, E3
  Mat flip = adjoint(elem_j());
  Mat expect(3, 3);
  expect.at(0, 0) = Cyc::one();
  expect.at(1, 1) = -Cyc::one();
  expect.at(2, 2) = -Cyc::one();
  CHECK(flip == expect);

  // diag(w, conj w) rotates the (E1, E2) plane and fixes E3
  const Mat rot = adjoint(elem_third());
  CHECK(rot.at(2, 2) == Cyc::one());
  CHECK(rot.at(0, 2) == Cyc::zero());
  CHECK(rot.at(2, 0) == Cyc::zero());
  // rotation angle has cos = Re(w^2) = cos(4 pi / 3) = -1/2
  CHECK(rot.at(0, 0) == Cyc(Rat(-1, 2)));
  CHECK(rot.at(1, 1) == Cyc(Rat(-1, 2)));
}

TEST_CASE("gram diagonal") {
  const auto g2 = gram(2);
  CHECK(g2 == std::vector<Rat>{Rat(2), Rat(1), Rat(2)});
  const auto g4 = gram(4);
  CHECK(g4 == std::vector<Rat>{Rat(24), Rat(6), Rat(4), Rat(6), Rat(24)});
}

TEST_CASE("structure map squares to parity sign") {
  std::mt19937_64 rng(6021u);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int n = 0; n <= 6; ++n) {
    std::vector<Cyc> u(n + 1);
    for (auto& x : u) {
      x = Cyc(Rat(num(rng)));
      x += Rat(num(rng)) * Cyc::i();
    }
    const auto uu = star(n, star(n, u));
    for (int l = 0; l <= n; ++l) {
      const Cyc expect = (n % 2 == 0) ? u[l] : -u[l];
      REQUIRE(uu[l] == expect);
    }
  }
  // lowest nontrivial example: n = 1 sends (1, 0) to (0, 1)
  const auto s = star(1, {Cyc::one(), Cyc::zero()});
  CHECK(s[0] == Cyc::zero());
  CHECK(s[1] == Cyc::one());
}

TEST_CASE("monomial-basis generators transport to the unitary ladder") {
  // On the unitary basis v_k = m_k / sqrt(k!(n-k)!) the generators act by
  //   E1: v_k -> sqrt(k(n-k+1)) v_{k-1} - sqrt((k+1)(n-k)) v_{k+1}
  //   E2: v_k -> i sqrt(k(n-k+1)) v_{k-1} + i sqrt((k+1)(n-k)) v_{k+1}
  //   E3: v_k -> i (n-2k) v_k
  using C = std::complex<double>;
  for (int n = 1; n <= 10; ++n) {
    std::vector<double> root_g(n + 1);
    for (int k = 0; k <= n; ++k)
      root_g[k] = std::sqrt(rat_to_double(Rat(factorial(k) * factorial(n - k))));
    for (auto le : {LieElem::E1, LieElem::E2, LieElem::E3}) {
      const Mat d = drho(n, le);
      for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
          const C transported = d.at(j, k).to_float() * (root_g[j] / root_g[k]);
          C ladder = 0.0;
          const double lo = std::sqrt(double(k) * (n - k + 1));
          const double hi = std::sqrt(double(k + 1) * (n - k));
          if (le == LieElem::E1) {
            if (j == k - 1) ladder = lo;
            if (j == k + 1) ladder = -hi;
          } else if (le == LieElem::E2) {
            if (j == k - 1) ladder = C(0, lo);
            if (j == k + 1) ladder = C(0, hi);
          } else {
            if (j == k) ladder = C(0, double(n - 2 * k));
          }
          REQUIRE(std::abs(transported - ladder) < 1e-12);
        }
    }
  }
}

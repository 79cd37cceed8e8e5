#include <catch2/catch_amalgamated.hpp>

#include "harmeig/cyclotomic.hpp"
#include "harmeig/linalg.hpp"

#include <complex>
#include <random>

using namespace harmeig;

namespace {

Cyc random_cyc(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 9);
  std::uniform_int_distribution<int> keep(0, 3);
  Cyc a;
  for (int j = 0; j < Cyc::kDeg; ++j)
    if (keep(rng) != 0) a.coeff(j) = Rat(num(rng), den(rng));
  return a;
}

}  // namespace

TEST_CASE("rational parsing and rendering") {
  CHECK(rat_parse("3/4").value() == Rat(3, 4));
  CHECK(rat_parse("-6/8").value() == Rat(-3, 4));
  CHECK(rat_parse("7").value() == Rat(7));
  CHECK(rat_to_string(Rat(-3, 4)) == "-3/4");
  CHECK(rat_to_string(Rat(8)) == "8/1");
  CHECK_FALSE(rat_parse("1/0").has_value());
  CHECK_FALSE(rat_parse("a/b").has_value());
  CHECK_FALSE(rat_parse("").has_value());
  CHECK_FALSE(rat_parse("1.5").has_value());
}

TEST_CASE("known cyclotomic constants") {
  const Cyc i = Cyc::i();
  CHECK(i * i == -Cyc::one());
  CHECK(Cyc::sqrt2() * Cyc::sqrt2() == Cyc(Rat(2)));
  CHECK(Cyc::sqrt3() * Cyc::sqrt3() == Cyc(Rat(3)));
  CHECK(Cyc::sqrt6() * Cyc::sqrt6() == Cyc(Rat(6)));
  CHECK(Cyc::sqrt2() * Cyc::sqrt3() == Cyc::sqrt6());

  // Primitive 8th and 6th roots of unity sit at zeta^3 and zeta^4.
  const Cyc e8 = Cyc::zeta_pow(3);
  CHECK(e8 * e8 == i);
  const Cyc e6 = Cyc::zeta_pow(4);
  CHECK(e6 * e6 * e6 == -Cyc::one());
  CHECK(Cyc::zeta_pow(12) == -Cyc::one());
  CHECK(Cyc::zeta_pow(24) == Cyc::one());
  CHECK(Cyc::zeta_pow(-1) == Cyc::zeta_pow(23));
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(20240816u);
  for (int iter = 0; iter < 1000; ++iter) {
    Cyc a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("inverses on random nonzero elements") {
  std::mt19937_64 rng(977u);
  int done = 0;
  while (done < 200) {
    Cyc a = random_cyc(rng);
    if (a.is_zero()) continue;
    REQUIRE(a * a.inv() == Cyc::one());
    ++done;
  }
  CHECK_THROWS_AS(Cyc::zero().inv(), std::domain_error);
}

TEST_CASE("conjugation is an involutive automorphism") {
  std::mt19937_64 rng(31337u);
  for (int iter = 0; iter < 300; ++iter) {
    Cyc a = random_cyc(rng), b = random_cyc(rng);
    REQUIRE(a.conj().conj() == a);
    REQUIRE((a * b).conj() == a.conj() * b.conj());
    REQUIRE((a + b).conj() == a.conj() + b.conj());
    // a * conj(a) is real and non-negative
    Cyc norm = a * a.conj();
    REQUIRE(norm.is_real());
  }
  CHECK(Cyc::i().conj() == -Cyc::i());
  CHECK(Cyc::sqrt2().conj() == Cyc::sqrt2());
  CHECK(Cyc::sqrt2().is_real());
  CHECK_FALSE(Cyc::i().is_real());
}

TEST_CASE("float embedding is consistent with exact arithmetic") {
  std::mt19937_64 rng(4242u);
  auto close = [](std::complex<double> x, std::complex<double> y) {
    return std::abs(x - y) < 1e-12 * (1.0 + std::abs(x) + std::abs(y));
  };
  for (int iter = 0; iter < 200; ++iter) {
    Cyc a = random_cyc(rng), b = random_cyc(rng);
    REQUIRE(close((a * b).to_float(), a.to_float() * b.to_float()));
    REQUIRE(close((a + b).to_float(), a.to_float() + b.to_float()));
  }
  CHECK(std::abs(Cyc::i().to_float() - std::complex<double>(0, 1)) < 1e-15);
  CHECK(std::abs(Cyc::sqrt2().to_float().real() - std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(Cyc::sqrt2().to_float().imag()) < 1e-15);
}

TEST_CASE("exact row reduction, kernels, column spaces") {
  // 2x3 with a one-dimensional kernel
  Mat m(2, 3);
  m.at(0, 0) = Cyc::one();
  m.at(0, 1) = Cyc(Rat(2));
  m.at(0, 2) = Cyc(Rat(3));
  m.at(1, 0) = Cyc(Rat(2));
  m.at(1, 1) = Cyc(Rat(4));
  m.at(1, 2) = Cyc::zeta_pow(0);
  CHECK(rank(m) == 2);
  Mat ker = nullspace(m);
  REQUIRE(ker.cols() == 1);
  // residual must vanish exactly
  CHECK((m * ker).is_zero());

  Mat cs = column_space(m);
  CHECK(cs.cols() == 2);
  CHECK(in_span(cs, m.col(2)));

  Mat id3 = Mat::identity(3);
  CHECK(rank(id3) == 3);
  CHECK(nullspace(id3).cols() == 0);

  // singular complex example: rows proportional by i
  Mat s(2, 2);
  s.at(0, 0) = Cyc::one();
  s.at(0, 1) = Cyc::i();
  s.at(1, 0) = Cyc::i();
  s.at(1, 1) = -Cyc::one();
  CHECK(rank(s) == 1);
  Mat ks = nullspace(s);
  REQUIRE(ks.cols() == 1);
  CHECK((s * ks).is_zero());
}

TEST_CASE("kron respects multiplication") {
  std::mt19937_64 rng(555u);
  Mat a(2, 2), b(2, 2), c(2, 2), d(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      a.at(i, j) = random_cyc(rng);
      b.at(i, j) = random_cyc(rng);
      c.at(i, j) = random_cyc(rng);
      d.at(i, j) = random_cyc(rng);
    }
  CHECK(kron(a, b) * kron(c, d) == kron(a * c, b * d));
}

#include <catch2/catch_amalgamated.hpp>

#include <array>

#include "detset/json_io.hpp"
#include "detset/matrix.hpp"
#include "detset/random.hpp"

using namespace detset;

TEST_CASE("determinant on fixed instances") {
  ZRing z;
  CHECK(det(Matrix<ZRing>::identity(z, 3)) == 1);
  // first row and diagonal b, rest a
  Matrix<ZRing> m = Matrix<ZRing>::from_rows(
      z, {{Int(3), Int(3)}, {Int(2), Int(3)}});
  CHECK(det(m) == 3);
  CHECK_THROWS_MATCHES(det(Matrix<ZRing>(z, 2, 3)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::not_square;
                       }));
}

TEST_CASE("the 4x4 sum-of-products display with all-ones entries") {
  ZRing z;
  Matrix<ZRing> m = Matrix<ZRing>::from_rows(
      z, {{Int(0), Int(1), Int(1), Int(1)},
          {Int(1), Int(1), Int(0), Int(0)},
          {Int(1), Int(0), Int(1), Int(0)},
          {Int(1), Int(0), Int(0), Int(1)}});
  CHECK(det(m) == -3);
  CHECK(det_oracle(m) == -3);
  CHECK(permanent(m) == 3);
  CHECK(permanent_oracle(m) == 3);
}

TEST_CASE("elimination agrees with the expansion oracle") {
  SplitMix64 rng(77);
  for (int round = 0; round < 10000; ++round) {
    std::size_t n = 1 + rng.below(6);
    if (round % 2 == 0) {
      Fp ring(std::array<std::uint64_t, 4>{2, 5, 7, 101}[rng.below(4)]);
      Matrix<Fp> m = random_matrix(ring, n, rng);
      REQUIRE(det(m) == det_oracle(m));
    } else {
      ZRing ring;
      Matrix<ZRing> m = random_matrix(ring, n, rng);
      REQUIRE(det(m) == det_oracle(m));
    }
  }
}

TEST_CASE("determinant properties") {
  SplitMix64 rng(101);
  ZRing z;
  Fp f7(7);
  for (int round = 0; round < 200; ++round) {
    std::size_t n = 1 + rng.below(5);
    Matrix<ZRing> m = random_matrix(z, n, rng);
    CHECK(det(transpose(m)) == det(m));
    Matrix<Fp> f = random_matrix(f7, n, rng);
    CHECK(det(transpose(f)) == det(f));
    if (n >= 2) {
      // equal rows force a zero determinant
      for (std::size_t j = 0; j < n; ++j) m.at(n - 1, j) = m.at(0, j);
      CHECK(det(m) == 0);
    }
  }
}

TEST_CASE("big integer growth stays exact") {
  ZRing z;
  // diagonal of 10^6 entries: det = 10^(6*9), far past 64 bits
  Matrix<ZRing> m = Matrix<ZRing>::identity(z, 9);
  for (std::size_t i = 0; i < 9; ++i) m.at(i, i) = Int(1000000);
  CHECK(det(m) == pow(Int(10), 54));
}

TEST_CASE("permanent on fixed instances") {
  ZRing z;
  CHECK(permanent(Matrix<ZRing>::identity(z, 5)) == 1);
  Matrix<ZRing> ones = Matrix<ZRing>::from_rows(
      z, {{Int(1), Int(1)}, {Int(1), Int(1)}});
  CHECK(permanent(ones) == 2);
  CHECK(permanent_oracle(ones) == 2);
}

TEST_CASE("permanent agrees with the naive oracle") {
  SplitMix64 rng(202);
  for (int round = 0; round < 200; ++round) {
    std::size_t n = 1 + rng.below(8);
    if (round % 2 == 0) {
      Fp ring(std::array<std::uint64_t, 3>{3, 7, 101}[rng.below(3)]);
      Matrix<Fp> m = random_matrix(ring, n, rng);
      REQUIRE(permanent(m) == permanent_oracle(m));
    } else {
      ZRing ring;
      Matrix<ZRing> m = random_matrix(ring, n, rng);
      REQUIRE(permanent(m) == permanent_oracle(m));
    }
  }
}

TEST_CASE("block assembly and entrywise difference") {
  ZRing z;
  Matrix<ZRing> a = Matrix<ZRing>::from_rows(z, {{Int(1), Int(2)}});
  Matrix<ZRing> b = Matrix<ZRing>::from_rows(z, {{Int(3), Int(4)}});
  Matrix<ZRing> c = Matrix<ZRing>::from_rows(z, {{Int(5), Int(6)}});
  Matrix<ZRing> d = Matrix<ZRing>::from_rows(z, {{Int(7), Int(8)}});
  Matrix<ZRing> blk = block2x2(a, b, c, d);
  CHECK(blk.rows() == 2);
  CHECK(blk.cols() == 4);
  CHECK(blk.at(1, 3) == 8);
  CHECK(sub(d, c).at(0, 0) == 2);
  CHECK_THROWS_AS(block2x2(a, b, Matrix<ZRing>(z, 1, 3), d), Error);
  CHECK_THROWS_AS(sub(a, Matrix<ZRing>(z, 2, 2)), Error);
}

TEST_CASE("matrix JSON round trip") {
  SplitMix64 rng(303);
  Fp f13(13);
  Matrix<Fp> m = random_matrix(f13, 4, rng);
  Json j = matrix_to_json(m);
  CHECK(j["p"] == 13);
  CHECK(matrix_from_json(f13, j) == m);

  ZRing z;
  Matrix<ZRing> big = Matrix<ZRing>::identity(z, 2);
  big.at(0, 1) = pow(Int(2), 100);  // exceeds int64, serialized as a string
  Json jz = matrix_to_json(big);
  CHECK(matrix_from_json(z, jz) == big);
}

#include "catch_amalgamated.hpp"
#include "localh/linalg.hpp"
#include "localh/rng.hpp"

using namespace localh;

namespace {

template <class F>
Matrix<F> random_matrix(const F& f, SeededRng& rng, std::size_t r, std::size_t c, int zero_percent) {
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng.uniform(0, 99) >= zero_percent) m.set(i, j, f.from_int(rng.uniform(-5, 5)));
  return m;
}

// rank-deficient on purpose: the last rows are combinations of the first
template <class F>
Matrix<F> low_rank(const F& f, SeededRng& rng, std::size_t r, std::size_t c, std::size_t k) {
  const auto a = random_matrix(f, rng, r, k, 0);
  const auto b = random_matrix(f, rng, k, c, 0);
  return a * b;
}

}  // namespace

TEST_CASE("rank of small integer matrices", "[linalg]") {
  RationalField q;
  CHECK(rank(Matrix<RationalField>::from_ints(q, {{1, 2}, {2, 4}})) == 1);
  CHECK(rank(Matrix<RationalField>::from_ints(q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
  CHECK(rank(Matrix<RationalField>::identity(q, 5)) == 5);
  CHECK(rank(Matrix<RationalField>(q, 3, 4)) == 0);
  CHECK(rank(Matrix<RationalField>(q, 0, 0)) == 0);
  // singular mod 3 only
  PrimeField f3(3);
  CHECK(rank(Matrix<PrimeField>::from_ints(f3, {{1, 1}, {1, 4}})) == 1);
  CHECK(rank(Matrix<RationalField>::from_ints(q, {{1, 1}, {1, 4}})) == 2);
}

TEST_CASE("kernel, image and solve on a fixed matrix", "[linalg]") {
  RationalField q;
  const auto m = Matrix<RationalField>::from_ints(q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  const auto k = kernel_basis(m);
  REQUIRE(k.rows() == 1);
  const auto v = to_dense(q, k.row(0), 3);
  CHECK(m.apply(v) == std::vector<Rational>{0, 0, 0});
  CHECK(v[0] * 2 == v[1] * -1);
  CHECK(image_basis(m).rows() == 2);

  const auto x = solve(m, {Rational(6), Rational(15), Rational(24)});
  REQUIRE(x);
  CHECK(m.apply(*x) == std::vector<Rational>{6, 15, 24});
  CHECK_FALSE(solve(m, {Rational(1), Rational(0), Rational(0)}));
}

TEST_CASE("row space intersection", "[linalg]") {
  RationalField q;
  const auto a = Matrix<RationalField>::from_ints(q, {{1, 0, 0}, {0, 1, 0}});
  const auto b = Matrix<RationalField>::from_ints(q, {{0, 1, 0}, {0, 0, 1}});
  const auto i = intersect_rowspaces(a, b);
  REQUIRE(i.rows() == 1);
  CHECK(to_dense(q, i.row(0), 3) == std::vector<Rational>{0, 1, 0});
  const auto c = Matrix<RationalField>::from_ints(q, {{1, 1, 1}});
  CHECK(intersect_rowspaces(a, c).rows() == 0);
}

TEST_CASE("dimension mismatches are rejected", "[linalg]") {
  RationalField q;
  const auto m = Matrix<RationalField>::from_ints(q, {{1, 2}, {3, 4}});
  CHECK_THROWS_AS(m * Matrix<RationalField>(q, 3, 1), DimensionMismatch);
  CHECK_THROWS_AS(m.apply({Rational(1)}), DimensionMismatch);
  CHECK_THROWS_AS(solve(m, {Rational(1)}), DimensionMismatch);
  CHECK_THROWS_AS(intersect_rowspaces(m, Matrix<RationalField>(q, 1, 3)), DimensionMismatch);
  CHECK_THROWS_AS(Matrix<RationalField>::from_ints(q, {{1, 2}, {3}}), DimensionMismatch);
}

TEST_CASE("prime field arithmetic", "[linalg][field]") {
  PrimeField f(7);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.neg(0) == 0);
  CHECK_THROWS(PrimeField(8));
  CHECK(is_prime(kDefaultPrime));
}

TEST_CASE("rank-nullity and kernel annihilation on seeded matrices", "[linalg][property]") {
  RationalField q;
  PrimeField p(kDefaultPrime);
  SeededRng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 9));
    const std::size_t c = static_cast<std::size_t>(rng.uniform(1, 9));
    const auto m = trial % 2 ? random_matrix(q, rng, r, c, 60)
                             : low_rank(q, rng, r, c, static_cast<std::size_t>(rng.uniform(1, 3)));
    const auto k = kernel_basis(m);
    CHECK(rank(m) + k.rows() == c);
    for (std::size_t i = 0; i < k.rows(); ++i) {
      const auto y = m.apply(to_dense(q, k.row(i), c));
      for (const auto& e : y) CHECK(e == 0);
    }
    // every image basis vector is reachable
    const auto im = image_basis(m);
    CHECK(im.rows() == rank(m));
    for (std::size_t i = 0; i < im.rows(); ++i) CHECK(solve(m, to_dense(q, im.row(i), r)));
    // the same integers over a large prime give the same rank
    Matrix<PrimeField> mp(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) mp.set(i, j, p.from_int(static_cast<std::int64_t>(m.at(i, j).convert_to<long long>())));
    CHECK(rank(mp) == rank(m));
  }
}

TEST_CASE("sparse and dense elimination agree", "[linalg][property]") {
  RationalField q;
  PrimeField p(101);
  SeededRng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 20));
    const std::size_t c = static_cast<std::size_t>(rng.uniform(1, 20));
    const auto mq = random_matrix(q, rng, r, c, 90);
    CHECK(sparse_rank(mq) == dense_rank(mq));
    const auto mp = random_matrix(p, rng, r, c, 85);
    CHECK(sparse_rank(mp) == dense_rank(mp));
  }
}

TEST_CASE("row echelon reduction and tracked combinations", "[linalg]") {
  RationalField q;
  RowEchelon<RationalField> ech(q, 3, true);
  CHECK(ech.insert({{0, Rational(1)}, {1, Rational(1)}}));
  CHECK(ech.insert({{1, Rational(1)}, {2, Rational(1)}}));
  CHECK_FALSE(ech.insert({{0, Rational(1)}, {2, Rational(-1)}}));
  CHECK(ech.rank() == 2);
  CHECK(ech.contains({{0, Rational(2)}, {1, Rational(3)}, {2, Rational(1)}}));
  CHECK_FALSE(ech.contains({{2, Rational(1)}}));
}

TEST_CASE("quotient space coordinates", "[linalg]") {
  RationalField q;
  QuotientSpace<RationalField> qs(q, 3);
  qs.add_relation({{0, Rational(1)}, {1, Rational(-1)}});
  CHECK(qs.add_representative({{0, Rational(1)}}));
  CHECK_FALSE(qs.add_representative({{1, Rational(1)}}));
  CHECK(qs.add_representative({{2, Rational(1)}}));
  CHECK(qs.dim() == 2);
  const auto c = qs.coordinates({{1, Rational(3)}, {2, Rational(2)}});
  REQUIRE(c);
  CHECK(*c == std::vector<Rational>{3, 2});
  CHECK_THROWS_AS(qs.add_relation({{2, Rational(1)}}), std::logic_error);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "qfa/linalg.hpp"

using namespace qfa;

namespace {

ComplexVector vec(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("unitarity defect of identity and a scaled matrix") {
  CHECK(unitarity_defect(ComplexMatrix::Identity(3, 3)) == 0.0);
  CHECK(is_unitary(ComplexMatrix::Identity(4, 4)));
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 1.1;
  CHECK(unitarity_defect(m) == doctest::Approx(0.21));
  CHECK_FALSE(is_unitary(m));
}

TEST_CASE("complete_unitary keeps given columns and completes to a unitary") {
  const double h = 1.0 / std::sqrt(2.0);
  PartialMatrix p{4, {}};
  p.columns[0] = vec({h, 0.0, h, 0.0});
  p.columns[2] = vec({0.0, Complex(0.0, 1.0), 0.0, 0.0});
  const ComplexMatrix u = complete_unitary(p);
  CHECK(is_unitary(u, 1e-10));
  CHECK(u.col(0) == p.columns[0]);
  CHECK(u.col(2) == p.columns[2]);
}

TEST_CASE("complete_unitary is deterministic and fills standard basis when possible") {
  PartialMatrix p{3, {}};
  p.columns[1] = vec({0.0, 0.0, 1.0});
  const ComplexMatrix u = complete_unitary(p);
  // seeds e0 then e1 fill columns 0 and 2
  CHECK(u(0, 0) == Complex(1.0));
  CHECK(u(1, 2) == Complex(1.0));
  CHECK(complete_unitary(p) == u);
}

TEST_CASE("complete_unitary rejects non-orthogonal and non-normalised columns") {
  PartialMatrix p{3, {}};
  p.columns[0] = vec({1.0, 0.0, 0.0});
  p.columns[1] = vec({std::sqrt(0.5), std::sqrt(0.5), 0.0});
  try {
    complete_unitary(p);
    FAIL("expected CompletionError");
  } catch (const CompletionError& e) {
    CHECK(e.first() == 0);
    CHECK(e.second() == 1);
  }
  PartialMatrix q{2, {}};
  q.columns[1] = vec({0.5, 0.5});
  CHECK_THROWS_AS(complete_unitary(q), CompletionError);
  PartialMatrix bad{2, {}};
  bad.columns[3] = vec({1.0, 0.0});
  CHECK_THROWS_AS(complete_unitary(bad), DimensionError);
}

TEST_CASE("complete_unitary on random orthonormal column subsets") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 7;
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    }
    const ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(a).householderQ();
    PartialMatrix p{n, {}};
    for (int j = 0; j < n; j += 2) p.columns[j] = q.col(j);
    const ComplexMatrix u = complete_unitary(p);
    CHECK(is_unitary(u, 1e-10));
    for (const auto& [j, c] : p.columns) CHECK(u.col(j) == c);
  }
}

TEST_CASE("psd_principal_sqrt squares back and rejects indefinite input") {
  RealMatrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  const RealMatrix r = psd_principal_sqrt(m);
  CHECK((r * r - m).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((r - r.transpose()).cwiseAbs().maxCoeff() == 0.0);
  // eigenvalues 3 and 1: sqrt has entries (sqrt3 + 1)/2, (sqrt3 - 1)/2
  CHECK(r(0, 0) == doctest::Approx((std::sqrt(3.0) + 1.0) / 2.0).epsilon(1e-14));
  CHECK(r(0, 1) == doctest::Approx((std::sqrt(3.0) - 1.0) / 2.0).epsilon(1e-14));

  RealMatrix tiny_negative = RealMatrix::Zero(2, 2);
  tiny_negative(0, 0) = -1e-12;
  CHECK(psd_principal_sqrt(tiny_negative).cwiseAbs().maxCoeff() == 0.0);

  RealMatrix neg(2, 2);
  neg << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(psd_principal_sqrt(neg), NotPsdError);
  RealMatrix asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(psd_principal_sqrt(asym), NotPsdError);
}

TEST_CASE("row stochastic check") {
  RealMatrix a(2, 2);
  a << 0.25, 0.75, 1.0, 0.0;
  CHECK(is_row_stochastic(a));
  a(0, 0) = 0.3;
  CHECK_FALSE(is_row_stochastic(a));
  a << -0.1, 1.1, 1.0, 0.0;
  CHECK_FALSE(is_row_stochastic(a));
}

TEST_CASE("embed_stochastic places A / l in the top-left block of a real orthogonal matrix") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 1; n <= 6; ++n) {
    RealMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = u(rng);
      a.row(i) /= a.row(i).sum();
    }
    const StochasticEmbedding e = embed_stochastic(a);
    CHECK(e.scale == doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-15));
    CHECK(embedding_scale(n) == e.scale);
    CHECK(e.unitary.rows() == 2 * n);
    CHECK(is_unitary(e.unitary, 1e-10));
    CHECK(e.unitary.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK((e.unitary.topLeftCorner(n, n).real() - a / e.scale).cwiseAbs().maxCoeff() < 1e-12);
  }
  RealMatrix bad = RealMatrix::Identity(2, 2) * 0.5;
  CHECK_THROWS_AS(embed_stochastic(bad), ValidationError);
}

TEST_CASE("embed_stochastic handles a permutation, where the complement block is singular") {
  RealMatrix p(3, 3);
  p << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  const StochasticEmbedding e = embed_stochastic(p);
  CHECK(is_unitary(e.unitary, 1e-10));
  CHECK((e.unitary.topLeftCorner(3, 3).real() - p / std::sqrt(3.0)).cwiseAbs().maxCoeff() < 1e-12);
}

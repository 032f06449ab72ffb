// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sensel/matrix.hpp"
#include "sensel/rng.hpp"
#include "test_support.hpp"

using namespace sensel;
using namespace sensel::testing;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("sym_eig on the identity") {
  const SymEig eig = sym_eig(Matrix::identity(3));
  for (double lambda : eig.eigenvalues) CHECK(lambda == doctest::Approx(1.0));
}

TEST_CASE("sym_eig on a diagonal matrix sorts ascending with axis eigenvectors") {
  const Matrix a = Matrix::from_rows({{5.0, 0.0}, {0.0, 2.0}});
  const SymEig eig = sym_eig(a);
  CHECK(eig.eigenvalues[0] == doctest::Approx(2.0));
  CHECK(eig.eigenvalues[1] == doctest::Approx(5.0));
  CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(eig.eigenvectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig reconstructs a random symmetric 6x6") {
  Rng rng(7);
  const Matrix a = random_symmetric(rng, 6);
  const SymEig eig = sym_eig(a);
  const Matrix lambda = Matrix::diagonal(eig.eigenvalues);
  const Matrix rebuilt = eig.eigenvectors * lambda * eig.eigenvectors.transpose();
  CHECK(max_abs_diff(rebuilt, a) < 1e-10);
}

TEST_CASE("sym_eig reconstruction bound holds across sizes") {
  Rng rng(21);
  for (int n : {1, 2, 3, 5, 10, 25, 60}) {
    const Matrix a = random_symmetric(rng, n);
    const SymEig eig = sym_eig(a);
    const Matrix rebuilt =
        eig.eigenvectors * Matrix::diagonal(eig.eigenvalues) * eig.eigenvectors.transpose();
    CHECK(max_abs_diff(rebuilt, a) <= 1e-9 * (1.0 + spectral_norm(a)));
  }
}

TEST_CASE("sym_eig rejects non-square input") {
  CHECK_THROWS_AS(sym_eig(Matrix(2, 3)), DimensionError);
}

TEST_CASE("psd_inverse on diagonal and identity") {
  const Matrix inv = psd_inverse(Matrix::from_rows({{2.0, 0.0}, {0.0, 4.0}}));
  CHECK(inv(0, 0) == doctest::Approx(0.5));
  CHECK(inv(1, 1) == doctest::Approx(0.25));
  CHECK(inv(0, 1) == doctest::Approx(0.0));

  CHECK(max_abs_diff(psd_inverse(Matrix::identity(4)), Matrix::identity(4)) < 1e-14);
}

TEST_CASE("psd_inverse product oracle on a random SPD 8x8") {
  Rng rng(11);
  const Matrix a = random_spd(rng, 8);
  const Matrix inv = psd_inverse(a);
  const double lmax = lambda_max_sym(a);
  CHECK(max_abs_diff(a * inv, Matrix::identity(8)) < 1e-9 * lmax);
}

TEST_CASE("psd_inverse is an involution") {
  Rng rng(13);
  const Matrix a = random_spd(rng, 6);
  CHECK(max_abs_diff(psd_inverse(psd_inverse(a)), a) < 1e-9);
}

TEST_CASE("psd_inverse rejects indefinite input and reports lambda_min") {
  const Matrix a = Matrix::from_rows({{1.0, 0.0}, {0.0, -2.0}});
  try {
    psd_inverse(a);
    FAIL("expected SingularityError");
  } catch (const SingularityError& e) {
    CHECK(e.lambda_min == doctest::Approx(-2.0));
  }
}

TEST_CASE("psd_inverse rejects nearly singular input") {
  const Matrix a = Matrix::from_rows({{1.0, 0.0}, {0.0, 1e-15}});
  CHECK_THROWS_AS(psd_inverse(a), SingularityError);
}

TEST_CASE("matrix_exp of zero is the identity") {
  CHECK(max_abs_diff(matrix_exp(Matrix(3, 3)), Matrix::identity(3)) == 0.0);
}

TEST_CASE("matrix_exp of a diagonal matrix exponentiates the diagonal") {
  const Matrix e = matrix_exp(Matrix::from_rows({{1.0, 0.0}, {0.0, -2.0}}));
  CHECK(e(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("matrix_exp matches a 50-term Taylor series oracle") {
  Rng rng(17);
  Matrix a = random_matrix(rng, 5, 5);
  a *= 1.0 / std::max(spectral_norm(a), 1.0);  // ||A|| <= 1

  Matrix series = Matrix::identity(5);
  Matrix term = Matrix::identity(5);
  for (int k = 1; k <= 50; ++k) {
    term = term * a;
    term *= 1.0 / k;
    series += term;
  }
  CHECK(max_abs_diff(matrix_exp(a), series) < 1e-10);
}

TEST_CASE("matrix_exp multiplies over commuting summands") {
  const Matrix a = Matrix::diagonal(std::vector<double>{0.3, -1.0, 2.0});
  const Matrix b = Matrix::diagonal(std::vector<double>{-0.7, 0.5, 1.0});
  const Matrix lhs = matrix_exp(a + b);
  const Matrix rhs = matrix_exp(a) * matrix_exp(b);
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("spectral_norm matches the sym_eig route for symmetric input") {
  Rng rng(19);
  const Matrix a = random_spd(rng, 5);
  CHECK(spectral_norm(a) == doctest::Approx(lambda_max_sym(a)).epsilon(1e-10));
}

TEST_CASE("loewner_geq orders nested SPD matrices") {
  Rng rng(23);
  const Matrix a = random_spd(rng, 4);
  const Matrix bump = random_psd(rng, 4, 2);
  CHECK(loewner_geq(a + bump, a, 1e-12));
  CHECK_FALSE(loewner_geq(a, a + bump, 1e-9));
}

TEST_CASE("lambda_max_psd agrees with sym_eig on larger matrices") {
  Rng rng(29);
  for (int n : {12, 40, 90}) {
    const Matrix a = random_psd(rng, n, n);
    CHECK(lambda_max_psd(a) == doctest::Approx(lambda_max_sym(a)).epsilon(1e-11));
  }
}

TEST_CASE("lambda_min_psd agrees with sym_eig on larger matrices") {
  Rng rng(31);
  for (int n : {12, 40, 90}) {
    const Matrix a = random_spd(rng, n);
    CHECK(lambda_min_psd(a) == doctest::Approx(lambda_min_sym(a)).epsilon(1e-11));
  }
}

TEST_CASE("Cholesky solve, inverse, and trace agree with the eigen route") {
  Rng rng(37);
  const Matrix a = random_spd(rng, 7);
  const Cholesky chol(a);
  const Matrix inv_eig = psd_inverse(a);
  CHECK(max_abs_diff(chol.inverse(), inv_eig) < 1e-10);
  CHECK(chol.trace_of_inverse() == doctest::Approx(inv_eig.trace()).epsilon(1e-10));

  const std::vector<double> b{1.0, -2.0, 0.5, 3.0, 0.0, 1.5, -1.0};
  const std::vector<double> x = chol.solve(b);
  const std::vector<double> back = a * std::span<const double>(x);
  for (int i = 0; i < 7; ++i) CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-9));
}

TEST_CASE("spd_inverse throws on indefinite input") {
  Matrix a = Matrix::identity(3);
  a(2, 2) = -1.0;
  CHECK_THROWS_AS(spd_inverse(a), SingularityError);
}

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace framekit;
using fktest::mat2;
using fktest::rel_err;

namespace {
const Matrix kFib = fktest::mat2(0.0, 1.0, 1.0, 1.0);  // [[0,1],[1,1]]
const Matrix kNilpotent = fktest::mat2(0.0, 1.0, 0.0, 0.0);
}  // namespace

TEST_CASE("hermitian_eig on closed-form cases", "[numeric]") {
    SECTION("identity") {
        const auto eig = hermitian_eig(Matrix::Identity(2, 2));
        REQUIRE(eig.values(0) == Catch::Approx(1.0).margin(1e-14));
        REQUIRE(eig.values(1) == Catch::Approx(1.0).margin(1e-14));
    }
    SECTION("diag(2,1) sorts ascending") {
        const auto eig = hermitian_eig(mat2(2.0, 0.0, 0.0, 1.0));
        REQUIRE(eig.values(0) == Catch::Approx(1.0).margin(1e-14));
        REQUIRE(eig.values(1) == Catch::Approx(2.0).margin(1e-14));
    }
    SECTION("Mercedes-Benz frame operator") {
        // Oracle: direct summation of f_k f_k*, then closed-form 2x2 eigenvalues.
        const double s = std::sqrt(3.0) / 2.0;
        const std::vector<Vector> mb = {fktest::vec2(0.0, 1.0), fktest::vec2(-s, -0.5),
                                        fktest::vec2(s, -0.5)};
        Matrix sum = Matrix::Zero(2, 2);
        for (const auto& f : mb) sum += f * f.adjoint();
        const auto [lo, hi] = fktest::herm2_eigenvalues(sum);
        REQUIRE(lo == Catch::Approx(1.5).margin(1e-12));
        REQUIRE(hi == Catch::Approx(1.5).margin(1e-12));

        const auto eig = hermitian_eig(sum);
        REQUIRE(eig.values(0) == Catch::Approx(lo).margin(1e-12));
        REQUIRE(eig.values(1) == Catch::Approx(hi).margin(1e-12));
    }
    SECTION("rejects non-Hermitian and non-square input") {
        REQUIRE_THROWS_AS(hermitian_eig(kNilpotent), NotHermitianError);
        REQUIRE_THROWS_AS(hermitian_eig(Matrix::Zero(2, 3)), NotSquareError);
    }
}

TEST_CASE("hermitian_eig reconstruction and orthonormality", "[numeric][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Index d = 2 + static_cast<Index>(rng() % 7);  // up to 8
        const Matrix m = fktest::random_hermitian(rng, d);
        const auto eig = hermitian_eig(m);
        const Matrix recon =
            eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
        REQUIRE((m - recon).norm() <= 1e-10 * rel_scale(m.norm()));
        REQUIRE((eig.vectors.adjoint() * eig.vectors - Matrix::Identity(d, d)).norm() <= 1e-10);
        for (Index i = 0; i + 1 < d; ++i) REQUIRE(eig.values(i) <= eig.values(i + 1));
    }
}

TEST_CASE("svd reconstructs with orthonormal factors", "[numeric][property]") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 40; ++trial) {
        const Index rows = 1 + static_cast<Index>(rng() % 8);
        const Index cols = 1 + static_cast<Index>(rng() % 8);
        const Matrix m = fktest::random_matrix(rng, rows, cols);
        const SvdResult f = svd(m);
        const Matrix recon =
            f.left * f.singular_values.cast<Complex>().asDiagonal() * f.right.adjoint();
        REQUIRE((m - recon).norm() <= 1e-10 * rel_scale(m.norm()));
        const Index k = f.singular_values.size();
        REQUIRE((f.left.adjoint() * f.left - Matrix::Identity(k, k)).norm() <= 1e-10);
        REQUIRE((f.right.adjoint() * f.right - Matrix::Identity(k, k)).norm() <= 1e-10);
        for (Index i = 0; i + 1 < k; ++i)
            REQUIRE(f.singular_values(i) >= f.singular_values(i + 1));
        REQUIRE(f.singular_values(k - 1) >= 0.0);
    }
}

TEST_CASE("operator_norm", "[numeric]") {
    REQUIRE(operator_norm(Matrix::Zero(3, 3)) == 0.0);
    REQUIRE(operator_norm(kNilpotent) == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(operator_norm(mat2(0.9, 0.0, 0.0, 0.5)) == Catch::Approx(0.9).margin(1e-14));
}

TEST_CASE("spectral_radius", "[numeric]") {
    REQUIRE(spectral_radius(kNilpotent) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(spectral_radius(mat2(0.9, 0.0, 0.0, 0.5)) == Catch::Approx(0.9).margin(1e-12));
    // Oracle: roots of lambda^2 - lambda - 1.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    REQUIRE(spectral_radius(kFib) == Catch::Approx(golden).margin(1e-12));
    REQUIRE_THROWS_AS(spectral_radius(Matrix::Zero(2, 3)), NotSquareError);
}

TEST_CASE("spectral radius never exceeds the operator norm", "[numeric][property]") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const Index d = 1 + static_cast<Index>(rng() % 8);
        const Matrix m = fktest::random_matrix(rng, d, d);
        REQUIRE(spectral_radius(m) <= operator_norm(m) + 1e-10);
    }
}

TEST_CASE("Gelfand trend along doubled powers", "[numeric][property]") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        const Index d = 2 + static_cast<Index>(rng() % 5);  // up to 6
        Matrix m = fktest::random_matrix(rng, d, d);
        m /= operator_norm(m);
        const double r = spectral_radius(m);
        double prev = std::numeric_limits<double>::infinity();
        for (unsigned long k : {8UL, 16UL, 32UL}) {
            const double gap =
                std::pow(operator_norm(matrix_power(m, k)), 1.0 / static_cast<double>(k)) - r;
            REQUIRE(gap >= -1e-10);
            REQUIRE(gap <= prev + 1e-6);
            prev = gap;
        }
    }
}

TEST_CASE("pseudoinverse closed-form cases", "[numeric]") {
    REQUIRE(rel_err(pseudoinverse(Matrix::Identity(3, 3)), Matrix::Identity(3, 3)) < 1e-14);
    REQUIRE(rel_err(pseudoinverse(mat2(2.0, 0.0, 0.0, 0.0)), mat2(0.5, 0.0, 0.0, 0.0)) < 1e-14);

    // Oracle: normal equations (A*A)^{-1} A* for the full-column-rank 2x1 case.
    Matrix ones(2, 1);
    ones << Complex(1.0), Complex(1.0);
    const Matrix oracle = (ones.adjoint() * ones).inverse() * ones.adjoint();
    REQUIRE(rel_err(pseudoinverse(ones), oracle) < 1e-14);
    REQUIRE(oracle(0, 0).real() == Catch::Approx(0.5).margin(1e-15));
    REQUIRE(oracle(0, 1).real() == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("pseudoinverse satisfies the Moore-Penrose identities", "[numeric][property]") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        const Index d = 2 + static_cast<Index>(rng() % 5);
        const Index n = 2 + static_cast<Index>(rng() % 5);
        // Rank-deficient by construction: product through a thin middle factor.
        const Index k = 1 + static_cast<Index>(rng() % std::min(d, n));
        const Matrix m = fktest::random_matrix(rng, d, k) * fktest::random_matrix(rng, k, n);
        const Matrix p = pseudoinverse(m);
        const double scale = rel_scale(m.norm());
        REQUIRE((m * p * m - m).norm() <= 1e-9 * scale);
        REQUIRE((p * m * p - p).norm() <= 1e-9 * rel_scale(p.norm()));
        REQUIRE(((m * p).adjoint() - m * p).norm() <= 1e-9 * scale);
        REQUIRE(((p * m).adjoint() - p * m).norm() <= 1e-9 * scale);
    }
}

TEST_CASE("matrix_power", "[numeric]") {
    std::mt19937_64 rng(15);
    const Matrix m = fktest::random_matrix(rng, 3, 3);
    REQUIRE(rel_err(matrix_power(m, 0), Matrix::Identity(3, 3)) == 0.0);

    const Matrix d3 = matrix_power(mat2(0.5, 0.0, 0.0, 2.0), 3);
    REQUIRE(d3(0, 0).real() == Catch::Approx(0.125).margin(1e-15));
    REQUIRE(d3(1, 1).real() == Catch::Approx(8.0).margin(1e-15));

    // Oracle: hand multiplication of [[0,1],[1,1]]^2.
    REQUIRE(rel_err(matrix_power(kFib, 2), mat2(1.0, 1.0, 1.0, 2.0)) < 1e-15);
    REQUIRE_THROWS_AS(matrix_power(Matrix::Zero(2, 3), 2), NotSquareError);
}

TEST_CASE("try_inverse", "[numeric]") {
    SECTION("identity") {
        const auto r = try_inverse(Matrix::Identity(2, 2));
        REQUIRE(is_invertible(r));
        REQUIRE(rel_err(inverse(r), Matrix::Identity(2, 2)) < 1e-14);
    }
    SECTION("nilpotent is rejected with a sigma_min witness") {
        const auto r = try_inverse(kNilpotent);
        REQUIRE_FALSE(is_invertible(r));
        REQUIRE(std::get<NotInvertible>(r).sigma_min <= 1e-14);
        REQUIRE_THROWS_AS(inverse(r), NotInvertibleError);
    }
    SECTION("2x2 adjugate oracle") {
        // det = -1, adj([[0,1],[1,1]]) / det = [[-1,1],[1,0]]
        const auto r = try_inverse(kFib);
        REQUIRE(is_invertible(r));
        REQUIRE(rel_err(inverse(r), mat2(-1.0, 1.0, 1.0, 0.0)) < 1e-14);
        REQUIRE((kFib * inverse(r) - Matrix::Identity(2, 2)).norm() <= 1e-9);
    }
}

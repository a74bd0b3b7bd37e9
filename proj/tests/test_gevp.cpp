#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "pencil_oracle.hpp"
#include "plate/gevp.hpp"
#include "plate/problem.hpp"
#include "plate/quadrature.hpp"

using namespace plate;
using std::numbers::pi;

TEST(Pencil, DiagonalExample) {
    Matrix a(2, 2), b = Matrix::identity(2);
    a(0, 0) = 2;
    a(1, 1) = 8;
    const auto r = solve_pencil(a, b);
    EXPECT_NEAR(r.taus[0], 2.0, 1e-15);
    EXPECT_NEAR(r.taus[1], 8.0, 1e-15);
    EXPECT_NEAR(r.vectors[0][0], 1.0, 1e-15);
    EXPECT_NEAR(r.vectors[1][1], 1.0, 1e-15);
}

TEST(Pencil, HandComputedExample) {
    Matrix a(2, 2), b(2, 2);
    a(0, 0) = a(1, 1) = 2;
    a(0, 1) = a(1, 0) = 1;
    b(0, 0) = 2;
    b(1, 1) = 1;
    const auto r = solve_pencil(a, b);
    EXPECT_NEAR(r.taus[0], (3 - std::sqrt(3.0)) / 2, 1e-14);
    EXPECT_NEAR(r.taus[1], (3 + std::sqrt(3.0)) / 2, 1e-14);
}

TEST(Pencil, CharacteristicPolynomialOracle) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 3;
        Matrix a(n, n), b(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                a(i, j) = a(j, i) = u(rng);
                b(i, j) = b(j, i) = u(rng);
            }
        }
        for (std::size_t i = 0; i < n; ++i) b(i, i) += static_cast<double>(n);
        const auto r = solve_pencil(a, b);
        const auto ref = oracle_test::pencil_eigenvalues(a, b);
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_NEAR(r.taus[j], ref[j], 1e-10 * std::max(1.0, std::abs(ref[j])));
            const auto& v = r.vectors[j];
            const auto av = a * v;
            const auto bv = b * v;
            EXPECT_NEAR(dot(v, av) / dot(v, bv), r.taus[j], 1e-10 * std::max(1.0, std::abs(r.taus[j])));
        }
    }
}

TEST(Pencil, ShapeErrors) {
    EXPECT_THROW(solve_pencil(Matrix(2, 3), Matrix(2, 2)), std::invalid_argument);
    Matrix b(2, 2);
    b(0, 0) = 1;
    b(1, 1) = -1;
    EXPECT_THROW(solve_pencil(Matrix::identity(2), b), assembly_error);
}

namespace {

SolveOutcome run(Domain d, const CoefficientField& a, const CoefficientField& b, BasisSpec spec) {
    Problem p;
    p.domain = d;
    p.alpha = a;
    p.beta = b;
    p.basis = spec;
    return solve_problem(p);
}

}  // namespace

TEST(PlateSolve, DiskTable1FirstValue) {
    const auto out = run(Domain::disk, constant_field(0.25), constant_field(10),
                         {Ordering::lex_block, ParityFilter::cosine_only, 0, 5, 4});
    EXPECT_NEAR(out.result.taus[0], 0.8361309908, 1e-5 * 0.8361309908);
}

TEST(PlateSolve, InvariantsOnVariableCoefficients) {
    const auto out = run(Domain::square, catalog("alpha_xy"), catalog("beta_poly"),
                         {Ordering::ascending_lambda, ParityFilter::both, 40, 0, 0});
    const auto& r = out.result;
    for (std::size_t j = 0; j < r.size(); ++j) {
        EXPECT_GT(r.taus[j], 0.0);
        if (j) EXPECT_LE(r.taus[j - 1], r.taus[j]);
        EXPECT_LE(r.residuals[j], 1e-9);
        EXPECT_NEAR(norm2(r.vectors[j]), 1.0, 1e-14);
        const auto bv = out.system.B * r.vectors[j];
        for (std::size_t k = 0; k < j; ++k) {
            const auto bk = out.system.B * r.vectors[k];
            const double scale = std::sqrt(dot(r.vectors[j], bv) * dot(r.vectors[k], bk));
            EXPECT_NEAR(dot(r.vectors[k], bv) / scale, 0.0, 1e-8);
        }
    }
}

TEST(PlateSolve, CoefficientMonotonicity) {
    const BasisSpec spec{Ordering::lex_block, ParityFilter::cosine_only, 0, 5, 4};
    const auto base = run(Domain::disk, constant_field(0.25), constant_field(10), spec).result.taus;
    const auto up_alpha = run(Domain::disk, catalog("alpha_step"), constant_field(10), spec).result.taus;
    const auto up_beta = run(Domain::disk, constant_field(0.25), catalog("beta_step"), spec).result.taus;
    for (std::size_t j = 0; j < base.size(); ++j) {
        EXPECT_GE(up_alpha[j], base[j] - 1e-10 * base[j]);
        EXPECT_LE(up_beta[j], base[j] + 1e-10 * base[j]);
    }
}

TEST(PlateSolve, BasisGrowthNeverIncreases) {
    Problem p;
    p.domain = Domain::square;
    p.alpha = catalog("alpha_xy");
    p.beta = catalog("beta_poly");
    p.basis = {Ordering::ascending_lambda, ParityFilter::both, 0, 0, 0};
    p.quad.panels = 6;  // one rule for all sizes keeps the spaces nested exactly
    std::vector<double> prev;
    for (std::size_t n : {5u, 10u, 20u, 35u}) {
        const auto t = solve_problem(p, n).result.taus;
        for (std::size_t j = 0; j < prev.size(); ++j) EXPECT_LE(t[j], prev[j] * (1 + 1e-10));
        prev = t;
    }
}

TEST(Eigenfunction, ConstantSquareModeAndNormalization) {
    const auto out = run(Domain::square, constant_field(1), constant_field(1),
                         {Ordering::ascending_lambda, ParityFilter::both, 9, 0, 0});
    const std::vector<Point> pts{Point::cartesian(0.5, 0.5), Point::cartesian(0.2, 0.7), Point::cartesian(0.9, 0.1)};
    const auto u = eigenfunction_field(out.result, out.basis, 1, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_NEAR(u[i], 2 * std::sin(pi * pts[i].x1) * std::sin(pi * pts[i].x2), 1e-8);
    }
    EXPECT_GT(u[0], 0.0);
    const std::vector<Point> edge{Point::cartesian(0.0, 0.4), Point::cartesian(1.0, 0.4), Point::cartesian(0.3, 1.0)};
    for (double v : eigenfunction_field(out.result, out.basis, 2, edge)) EXPECT_NEAR(v, 0.0, 1e-10);
    EXPECT_THROW(eigenfunction_field(out.result, out.basis, 0, pts), std::domain_error);
    EXPECT_THROW(eigenfunction_field(out.result, out.basis, 10, pts), std::domain_error);
}

TEST(Eigenfunction, UnitL2NormByQuadrature) {
    const auto out = run(Domain::disk, constant_field(0.25), catalog("beta_gauss"),
                         {Ordering::lex_block, ParityFilter::cosine_only, 0, 5, 4});
    const auto rule = disk_rule(16, 16, {}, 8, 4);
    for (std::size_t j = 1; j <= 3; ++j) {
        const auto u = eigenfunction_field(out.result, out.basis, j, rule.points);
        double s = 0.0;
        for (std::size_t q = 0; q < u.size(); ++q) s += rule.weights[q] * u[q] * u[q];
        EXPECT_NEAR(s, 1.0, 1e-7) << j;
    }
}

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "plate/basis.hpp"
#include "plate/problem.hpp"
#include "plate/quadrature.hpp"

using namespace plate;
using std::numbers::pi;

TEST(Descriptors, SineWithZeroOrderRejected) {
    EXPECT_THROW(ModeDescriptor::disk(0, 1, Parity::sine), std::domain_error);
    EXPECT_THROW(ModeDescriptor::disk(1, 0, Parity::cosine), std::domain_error);
    EXPECT_THROW(ModeDescriptor::square(0, 1), std::domain_error);
    EXPECT_NO_THROW(ModeDescriptor::disk(1, 1, Parity::sine));
}

TEST(DiskBasis, CosineBlockHas24Pairs) {
    const auto b = enumerate_disk(Block{5, 4, std::nullopt}, ParityFilter::cosine_only);
    ASSERT_EQ(b.size(), 24u);
    EXPECT_EQ(b[0].mode, ModeDescriptor::disk(0, 1, Parity::cosine));
    EXPECT_EQ(b[4].mode, ModeDescriptor::disk(1, 1, Parity::cosine));
    for (const auto& p : b) EXPECT_EQ(p.mode.parity(), Parity::cosine);
}

TEST(DiskBasis, FirstAscendingPair) {
    const auto b = enumerate_disk(FirstN{1}, ParityFilter::both);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].mode, ModeDescriptor::disk(0, 1, Parity::cosine));
    EXPECT_NEAR(b[0].lambda, 5.783185962946785, 1e-11);
}

TEST(DiskBasis, AscendingAgreesWithBruteForce) {
    // Brute force: every (n, m) with n, m small enough, both parities, sorted.
    std::vector<double> all;
    for (int n = 0; n <= 30; ++n) {
        for (double j : bessel_roots(n, 12).roots) {
            all.push_back(j * j);
            if (n > 0) all.push_back(j * j);
        }
    }
    std::sort(all.begin(), all.end());
    const auto b = enumerate_disk(FirstN{150}, ParityFilter::both);
    ASSERT_EQ(b.size(), 150u);
    std::set<ModeDescriptor> seen;
    for (std::size_t i = 0; i < b.size(); ++i) {
        EXPECT_NEAR(b[i].lambda, all[i], 1e-9 * all[i]);
        if (i) EXPECT_LE(b[i - 1].lambda, b[i].lambda);
        EXPECT_TRUE(seen.insert(b[i].mode).second);
    }
}

TEST(SquareBasis, Enumeration) {
    const auto first = enumerate_square(FirstN{3});
    EXPECT_EQ(first[0].mode, ModeDescriptor::square(1, 1));
    EXPECT_EQ(first[1].mode, ModeDescriptor::square(1, 2));
    EXPECT_EQ(first[2].mode, ModeDescriptor::square(2, 1));
    EXPECT_NEAR(first[0].lambda, 2 * pi * pi, 1e-12);

    const auto block = enumerate_square(Block{2, 2, std::nullopt});
    ASSERT_EQ(block.size(), 4u);
    std::multiset<double> lam;
    for (const auto& p : block) lam.insert(std::round(p.lambda / (pi * pi)));
    EXPECT_EQ(lam, (std::multiset<double>{2, 5, 5, 8}));
}

TEST(SquareBasis, LexTruncation) {
    const auto b = enumerate_square(Block{5, 5, std::size_t{10}});
    ASSERT_EQ(b.size(), 10u);
    EXPECT_EQ(b[9].mode, ModeDescriptor::square(2, 5));
}

TEST(Evaluation, PointValues) {
    const auto sq = enumerate_square(FirstN{1})[0];
    EXPECT_NEAR(eval_phi(sq, Point::cartesian(0.5, 0.5)), 2.0, 1e-15);
    EXPECT_NEAR(eval_neg_laplacian_phi(sq, Point::cartesian(0.5, 0.5)), 4 * pi * pi, 1e-12);
    for (const auto& p : enumerate_square(FirstN{20})) {
        EXPECT_EQ(eval_phi(p, Point::cartesian(0.0, 0.3)), 0.0);
        EXPECT_NEAR(eval_phi(p, Point::cartesian(1.0, 0.3)), 0.0, 1e-14);
    }
    const auto d = enumerate_disk(FirstN{1}, ParityFilter::both)[0];
    EXPECT_NEAR(eval_phi(d, Point::polar(1.0, 0.7)), 0.0, 1e-10);
    EXPECT_NEAR(eval_neg_laplacian_phi(d, Point::polar(0.0, 0.0)), d.lambda * d.norm_const, 1e-12);
    EXPECT_THROW(eval_phi(d, Point::cartesian(1.0, 1.0)), std::domain_error);
}

namespace {

void expect_orthonormal(const BasisSet& b, const QuadRule& rule) {
    std::vector<std::vector<double>> v(b.size()), lv(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (const auto& p : rule.points) {
            v[i].push_back(eval_phi(b[i], p));
            lv[i].push_back(eval_neg_laplacian_phi(b[i], p));
        }
    }
    double worst = 0.0, worst_res = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = i; j < b.size(); ++j) {
            double g = 0.0, r = 0.0;
            for (std::size_t q = 0; q < rule.size(); ++q) {
                g += rule.weights[q] * v[i][q] * v[j][q];
                r += rule.weights[q] * (lv[i][q] - b[i].lambda * v[i][q]) * v[j][q];
            }
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
            worst_res = std::max(worst_res, std::abs(r));
        }
    }
    EXPECT_LE(worst, 1e-8);
    EXPECT_LE(worst_res, 1e-8);
}

}  // namespace

TEST(Orthonormality, SquareDefaultRule) {
    const auto b = enumerate_square(FirstN{60});
    expect_orthonormal(b, build_rule(b, QuadSpec{}, constant_field(1), constant_field(1)));
}

TEST(Orthonormality, DiskDefaultRule) {
    const auto b = enumerate_disk(FirstN{60}, ParityFilter::both);
    expect_orthonormal(b, build_rule(b, QuadSpec{}, constant_field(1), constant_field(1)));
}

TEST(Orthonormality, DiskCosineBlock) {
    const auto b = enumerate_disk(Block{5, 4, std::nullopt}, ParityFilter::cosine_only);
    expect_orthonormal(b, build_rule(b, QuadSpec{}, constant_field(1), constant_field(1)));
}

TEST(BasisFromModes, KeepsOrderAndRejectsDuplicates) {
    std::vector<ModeDescriptor> modes{ModeDescriptor::square(2, 1), ModeDescriptor::square(1, 1)};
    const auto b = basis_from_modes(Domain::square, modes);
    ASSERT_EQ(b.size(), 2u);
    EXPECT_EQ(b[0].mode, modes[0]);
    modes.push_back(ModeDescriptor::square(2, 1));
    EXPECT_THROW(basis_from_modes(Domain::square, modes), std::domain_error);
}

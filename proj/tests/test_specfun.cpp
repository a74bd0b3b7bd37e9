#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "plate/specfun.hpp"

using namespace plate;

namespace {

// Independent root oracle: bisection on the standard library Bessel function.
double reference_root(int n, double lo, double hi) {
    double flo = std::cyl_bessel_j(static_cast<double>(n), lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = std::cyl_bessel_j(static_cast<double>(n), mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(Bessel, MatchesStandardLibrary) {
    for (int n : {0, 1, 2, 5, 10, 20, 35, 50}) {
        for (double x = 0.0; x <= 120.0; x += 0.37) {
            const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
            EXPECT_NEAR(bessel_j(n, x), ref, 1e-12 + 1e-10 * std::abs(ref)) << "n=" << n << " x=" << x;
        }
    }
}

TEST(Bessel, SeriesAndMillerAgreeNearSwitch) {
    for (int n = 0; n <= 10; ++n) {
        for (double x : {1.5, 1.9, 2.0, 2.5}) {
            EXPECT_NEAR(detail::bessel_j_series(n, x), detail::bessel_j_miller(n, x), 1e-14);
        }
    }
}

TEST(Bessel, KnownValues) {
    EXPECT_DOUBLE_EQ(bessel_j(0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(bessel_j(3, 0.0), 0.0);
    EXPECT_NEAR(bessel_j(0, 1.0), 0.7651976865579666, 1e-15);
    EXPECT_NEAR(bessel_j(1, 1.0), 0.4400505857449335, 1e-15);
}

TEST(Bessel, DomainErrors) {
    EXPECT_THROW(bessel_j(-1, 1.0), std::domain_error);
    EXPECT_THROW(bessel_j(51, 1.0), std::domain_error);
    EXPECT_THROW(bessel_j(0, -0.5), std::domain_error);
    EXPECT_THROW(bessel_j(0, 501.0), std::domain_error);
}

TEST(BesselRoots, FirstRootsKnown) {
    EXPECT_NEAR(bessel_roots(0, 1).roots[0], 2.404825557695773, 1e-12);
    EXPECT_NEAR(bessel_roots(1, 1).roots[0], 3.831705970207512, 1e-12);
    EXPECT_NEAR(bessel_roots(0, 2).roots[1], 5.520078110286311, 1e-12);
}

TEST(BesselRoots, MatchReferenceBisection) {
    for (int n : {0, 1, 3, 7, 15, 30, 50}) {
        const auto table = bessel_roots(n, 20);
        ASSERT_EQ(table.roots.size(), 20u);
        EXPECT_EQ(table.order, n);
        for (double j : table.roots) {
            const double ref = reference_root(n, j - 0.1, j + 0.1);
            EXPECT_NEAR(j, ref, 1e-11 * std::max(1.0, ref)) << "n=" << n;
        }
    }
}

TEST(BesselRoots, StrictlyIncreasingAndInterlaced) {
    for (int n = 0; n < 10; ++n) {
        const auto a = bessel_roots(n, 15).roots;
        const auto b = bessel_roots(n + 1, 15).roots;
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (k > 0) EXPECT_GT(a[k], a[k - 1]);
            EXPECT_LT(a[k], b[k]);
            if (k + 1 < a.size()) EXPECT_LT(b[k], a[k + 1]);
            EXPECT_GT(a[k], n);
        }
    }
}

TEST(BesselRoots, BelowLimit) {
    const auto t = bessel_roots_below(0, 10.0);
    ASSERT_EQ(t.roots.size(), 3u);
    EXPECT_LT(t.roots.back(), 10.0);
    EXPECT_TRUE(bessel_roots_below(20, 5.0).roots.empty());
}

TEST(BesselRoots, ArgumentErrors) {
    EXPECT_THROW(bessel_roots(-1, 3), std::domain_error);
    EXPECT_THROW(bessel_roots(51, 3), std::domain_error);
    EXPECT_THROW(bessel_roots(0, 0), std::domain_error);
    EXPECT_THROW(bessel_roots(0, 101), std::domain_error);
}

TEST(GaussLegendre, WeightsSumToTwo) {
    for (int k = 1; k <= 64; ++k) {
        const auto g = gauss_legendre(k);
        double s = 0.0;
        for (double w : g.weights) s += w;
        EXPECT_NEAR(s, 2.0, 1e-13) << k;
    }
}

TEST(GaussLegendre, ExactForMonomials) {
    for (int k : {1, 2, 3, 5, 8, 12, 20, 32}) {
        const auto g = gauss_legendre(k);
        for (int p = 0; p <= 2 * k - 1; ++p) {
            double s = 0.0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
            const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
            EXPECT_NEAR(s, exact, 1e-13) << "k=" << k << " p=" << p;
        }
    }
}

TEST(GaussLegendre, NodesSymmetricAndSorted) {
    const auto g = gauss_legendre(12);
    for (std::size_t i = 0; i < 12; ++i) {
        EXPECT_NEAR(g.nodes[i], -g.nodes[11 - i], 1e-15);
        EXPECT_NEAR(g.weights[i], g.weights[11 - i], 1e-15);
        if (i) EXPECT_LT(g.nodes[i - 1], g.nodes[i]);
    }
}

TEST(GaussLegendre, OrderRange) {
    EXPECT_THROW(gauss_legendre(0), std::domain_error);
    EXPECT_THROW(gauss_legendre(65), std::domain_error);
}

TEST(Bessel, ThreeTermRecurrence) {
    for (int n = 1; n < 50; ++n) {
        for (double x = 0.05; x <= 200.0; x *= 1.3) {
            const double res = bessel_j(n - 1, x) + bessel_j(n + 1, x) - 2.0 * n / x * bessel_j(n, x);
            EXPECT_LE(std::abs(res), 1e-10) << "n=" << n << " x=" << x;
        }
    }
}

TEST(BesselRoots, ValuesVanishAndGapsExceedOne) {
    for (int n : {0, 4, 25}) {
        const auto t = bessel_roots(n, 30);
        for (std::size_t k = 0; k < t.roots.size(); ++k) {
            EXPECT_LE(std::abs(bessel_j(n, t.roots[k])), 10 * kRootTolerance);
            if (k) EXPECT_GT(t.roots[k] - t.roots[k - 1], 1.0);
        }
    }
}

TEST(GaussLegendre, LowOrders) {
    const auto g1 = gauss_legendre(1);
    EXPECT_DOUBLE_EQ(g1.nodes[0], 0.0);
    EXPECT_DOUBLE_EQ(g1.weights[0], 2.0);
    const auto g2 = gauss_legendre(2);
    EXPECT_NEAR(g2.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(g2.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(g2.weights[0], 1.0, 1e-15);
    for (int k = 1; k <= 64; ++k)
        for (double w : gauss_legendre(k).weights) EXPECT_GT(w, 0.0);
}

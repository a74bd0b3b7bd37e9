#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "plate/coeff.hpp"
#include "plate/expr.hpp"

using namespace plate;

TEST(Catalog, PointValues) {
    EXPECT_EQ(constant_field(0.25)(Point::cartesian(0.3, 0.1)), 0.25);
    EXPECT_DOUBLE_EQ(catalog("beta_gauss")(Point::polar(0.0, 0.0)), 12.0);
    EXPECT_DOUBLE_EQ(catalog("alpha_step")(Point::polar(0.5, 1.0)), 0.5);
    EXPECT_DOUBLE_EQ(catalog("alpha_step")(Point::polar(0.1, 1.0)), 0.25);
    EXPECT_DOUBLE_EQ(catalog("beta_step")(Point::polar(0.7, 2.0)), 12.0);
    EXPECT_DOUBLE_EQ(catalog("alpha_xy")(Point::cartesian(0.5, 0.5)), 0.5);
    EXPECT_DOUBLE_EQ(catalog("beta_poly")(Point::cartesian(1.0, 1.0)), 22.0);
    EXPECT_DOUBLE_EQ(catalog("alpha_rsin2")(Point::polar(1.0, std::numbers::pi / 2)), 1.25);
}

TEST(Catalog, OpenConditionAtJump) {
    EXPECT_DOUBLE_EQ(catalog("alpha_step")(Point::polar(0.25, 0.0)), 0.25);
    EXPECT_DOUBLE_EQ(catalog("beta_step")(Point::polar(0.5, 0.0)), 10.0);
    EXPECT_EQ(catalog("alpha_step").jump_radii(), std::vector<double>{0.25});
    EXPECT_EQ(catalog("beta_step").jump_radii(), std::vector<double>{0.5});
}

TEST(Catalog, UnknownAndBadKeys) {
    EXPECT_THROW(catalog("gamma"), std::out_of_range);
    EXPECT_THROW(catalog("alpha_const(x)"), std::out_of_range);
    EXPECT_THROW(catalog("beta_const(-1)"), std::invalid_argument);
    EXPECT_TRUE(is_catalog_key("alpha_const(2.5)"));
    EXPECT_FALSE(is_catalog_key("x1 + 1"));
}

TEST(Catalog, EveryFieldValidatesOnItsDomain) {
    for (const char* k : {"alpha_rsin2", "beta_gauss", "alpha_step", "beta_step"})
        EXPECT_TRUE(validate(catalog(k), Domain::disk, 64).ok) << k;
    for (const char* k : {"alpha_xy", "beta_poly"}) EXPECT_TRUE(validate(catalog(k), Domain::square, 64).ok) << k;
}

TEST(Validate, Examples) {
    const auto rep = validate(constant_field(10.0), Domain::square, 16);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.observed_min, 10.0);
    EXPECT_EQ(rep.observed_max, 10.0);

    const auto xy = validate(catalog("alpha_xy"), Domain::square, 16);
    EXPECT_TRUE(xy.ok);
    EXPECT_GE(xy.observed_min, 0.25);
    EXPECT_LE(xy.observed_max, 1.25);

    const CoefficientField zero_at_corner([](const Point& p) { return p.x1 + p.x2; }, 0.5, 2.0, "x1 + x2");
    EXPECT_FALSE(validate(zero_at_corner, Domain::square, 16).ok);

    EXPECT_THROW(validate(constant_field(1.0), Domain::disk, 4), std::domain_error);
}

TEST(Field, DeclaredBoundsChecked) {
    EXPECT_THROW(CoefficientField([](const Point&) { return 1.0; }, 0.0, 1.0, "bad"), std::invalid_argument);
    EXPECT_THROW(CoefficientField([](const Point&) { return 1.0; }, 2.0, 1.0, "bad"), std::invalid_argument);
    const auto s = catalog("alpha_xy").scaled(2.0);
    EXPECT_DOUBLE_EQ(s(Point::cartesian(1.0, 1.0)), 2.5);
    EXPECT_DOUBLE_EQ(s.declared_max(), 2.5);
}

// Every coefficient of the examples written in the expression grammar,
// compared against its closed form at random points.
TEST(Expression, MatchesClosedForms) {
    struct Case {
        const char* text;
        Domain domain;
        double (*closed)(const Point&);
    };
    const Case cases[] = {
        {"1/4 + r*sin(theta)^2", Domain::disk,
         [](const Point& p) { return 0.25 + p.r * std::sin(p.theta) * std::sin(p.theta); }},
        {"10 + 2*exp(-r^2)", Domain::disk, [](const Point& p) { return 10.0 + 2.0 * std::exp(-p.r * p.r); }},
        {"1/4*(1 + step(r - 0.25))", Domain::disk, [](const Point& p) { return 0.25 * (1.0 + step(p.r - 0.25)); }},
        {"10 + 2*step(r - 1/2)", Domain::disk, [](const Point& p) { return 10.0 + 2.0 * step(p.r - 0.5); }},
        {"x1*x2 + 1/4", Domain::square, [](const Point& p) { return p.x1 * p.x2 + 0.25; }},
        {"(x1^2 + 1)*(x2^2 + 10)", Domain::square,
         [](const Point& p) { return (p.x1 * p.x1 + 1.0) * (p.x2 * p.x2 + 10.0); }},
        {"sqrt(x1 + 1) * cos(pi*x2/4)", Domain::square,
         [](const Point& p) { return std::sqrt(p.x1 + 1.0) * std::cos(std::numbers::pi * p.x2 / 4.0); }},
    };
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& c : cases) {
        const auto e = Expression::parse(c.text);
        for (int i = 0; i < 100; ++i) {
            const Point p = c.domain == Domain::square
                                ? Point::cartesian(u(rng), u(rng))
                                : Point::polar(std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
            const double want = c.closed(p);
            EXPECT_NEAR(e(p), want, 1e-14 * std::max(1.0, std::abs(want))) << c.text;
        }
    }
}

TEST(Expression, Precedence) {
    const Point p = Point::cartesian(0.5, 0.25);
    EXPECT_DOUBLE_EQ(Expression::parse("2^3^2")(p), 512.0);
    EXPECT_DOUBLE_EQ(Expression::parse("-2^2")(p), -4.0);
    EXPECT_DOUBLE_EQ(Expression::parse("2*-3")(p), -6.0);
    EXPECT_DOUBLE_EQ(Expression::parse("1 - 2 - 3")(p), -4.0);
    EXPECT_DOUBLE_EQ(Expression::parse("8/4/2")(p), 1.0);
    EXPECT_DOUBLE_EQ(Expression::parse("x1 + x2*2")(p), 1.0);
    EXPECT_DOUBLE_EQ(Expression::parse("2^-1")(p), 0.5);
}

TEST(Expression, Errors) {
    for (const char* bad : {"", "1 +", "foo(1)", "sin 1", "(1", "1)", "x3", "2 $ 3", "step(r"}) {
        EXPECT_THROW(Expression::parse(bad), std::invalid_argument) << bad;
    }
    try {
        Expression::parse("1 + * 2");
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos) << e.what();
    }
}

TEST(Expression, JumpRadii) {
    EXPECT_EQ(Expression::parse("10 + 2*step(r - 0.5)").jump_radii(), std::vector<double>{0.5});
    EXPECT_EQ(Expression::parse("1 + step(r - 1/4) + step(r - 3/4)").jump_radii(),
              (std::vector<double>{0.25, 0.75}));
    EXPECT_TRUE(Expression::parse("step(x1 - 0.5) + 1").jump_radii().empty());
}

TEST(MakeCoefficient, ExpressionAndCatalog) {
    const auto f = make_coefficient("10+2*exp(-r^2)", Domain::disk);
    const auto g = catalog("beta_gauss");
    for (double r : {0.0, 0.3, 0.77, 1.0}) EXPECT_DOUBLE_EQ(f(Point::polar(r, 0.4)), g(Point::polar(r, 0.4)));
    EXPECT_NEAR(f.declared_min(), g.declared_min(), 1e-12);
    EXPECT_TRUE(make_coefficient("2.5", Domain::square).is_constant());
    EXPECT_EQ(make_coefficient("1/4*(1 + step(r - 0.25))", Domain::disk).jump_radii(), std::vector<double>{0.25});
    EXPECT_THROW(make_coefficient("-1", Domain::square), std::invalid_argument);
    EXPECT_THROW(make_coefficient("x1 - 0.5", Domain::square), std::invalid_argument);
    EXPECT_THROW(make_coefficient("1/x1", Domain::square), std::invalid_argument);
}

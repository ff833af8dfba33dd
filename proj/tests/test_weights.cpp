#include "nalab/errors.hpp"
#include "nalab/specfun.hpp"
#include "nalab/weights.hpp"

#include <doctest.h>

#include <cmath>

using namespace nalab;

namespace {

std::shared_ptr<const AnnularGrid> grid(int J = 40)
{
    return std::make_shared<const AnnularGrid>(SpaceParams::canonical(), J);
}

} // namespace

TEST_CASE("closed-form weights at annulus midpoints")
{
    const auto g = grid();
    const Weight one = materialize(WeightSpec{weight::Constant{}}, g);
    const Weight exp_r = materialize(WeightSpec{weight::ExpRadial{-0.3}}, g);
    const Weight strong = materialize(WeightSpec{weight::ExpStrong{3.0}}, g);
    const Weight eta = materialize(eta_product(WeightSpec{weight::ExpStrong{2.0}}), g);
    for (int j = 1; j <= 40; ++j) {
        const double d = j - 0.5;
        CHECK(one[j] == 1.0);
        CHECK(exp_r[j] == doctest::Approx(std::exp(-0.6 * d)).epsilon(1e-15));
        CHECK(strong[j] == doctest::Approx(std::exp(4.0 * d)).epsilon(1e-15));
        CHECK(eta[j] == doctest::Approx(std::exp(2.0 * d + 1.0 / (1.0 + d))).epsilon(1e-14));
    }
    CHECK(exp_r.profile(0.25) == doctest::Approx(std::exp(-0.15)));
    CHECK(eta.label() == "EtaProduct(ExpStrong(2))");
    CHECK_THROWS_AS(materialize(WeightSpec{weight::ExpStrong{0.5}}, g), DomainError);
}

TEST_CASE("custom weights")
{
    const auto g = grid(10);
    const Weight pw = materialize(power_law(2.0), g);
    CHECK(pw[3] == doctest::Approx(6.25));
    CHECK(pw.profile(3.0) == doctest::Approx(9.0));

    weight::Custom raw;
    raw.label = "raw";
    raw.values.assign(10, 2.0);
    const Weight w = materialize(WeightSpec{raw}, g);
    CHECK_FALSE(w.has_profile());
    CHECK_THROWS_AS(w.profile(1.0), UnsupportedError);
    raw.values.assign(9, 2.0);
    CHECK_THROWS_AS(materialize(WeightSpec{raw}, g), DomainError);
    raw.values.assign(10, 2.0);
    raw.values[4] = 0.0;
    CHECK_THROWS_AS(materialize(WeightSpec{raw}, g), DomainError);
}

TEST_CASE("spherical weight follows the Jacobi function")
{
    const auto g = grid(30);
    const SpaceParams& p = g->params();
    const Weight u = materialize(WeightSpec{weight::SphericalU{2.0}}, g);
    const double kappa = 2.0 * p.rho + p.varrho;
    for (int j : {1, 5, 17, 30}) {
        const double d = j - 0.5;
        const double exact = jacobi_phi(JacobiParams{p.sigma, p.tau, cplx(0.0, kappa)}, d).real();
        CHECK(u[j] == doctest::Approx(exact).epsilon(1e-8));
        CHECK(u.error[j - 1] <= 1e-8 * u[j]);
    }
    // Between nodes the cubic Hermite table stays close to the exact value.
    const double t = 7.3;
    const double exact = jacobi_phi(JacobiParams{p.sigma, p.tau, cplx(0.0, kappa)}, t).real();
    CHECK(u.profile(t) == doctest::Approx(exact).epsilon(1e-8));
    CHECK_THROWS_AS(u.profile(40.0), RangeError);
    CHECK_THROWS_AS(materialize(WeightSpec{weight::SphericalU{0.5}}, g), DomainError);
}

TEST_CASE("Jacobi-V weight")
{
    const auto g = grid(30);
    const SpaceParams& p = g->params();
    const double gamma = -0.3;
    const Weight v = materialize(WeightSpec{weight::JacobiV{gamma}}, g);
    const JacobiParams jp{p.sigma, p.tau, cplx(0.0, -2.0 * p.rho * gamma - p.varrho)};
    for (int j : {1, 2, 10, 30}) {
        const double d = j - 0.5;
        const double pre = std::pow(d, 2.0 * p.sigma) / (1.0 + std::pow(d, 2.0 * p.sigma));
        CHECK(v[j] == doctest::Approx(pre * std::abs(jacobi_phi_second(jp, d))).epsilon(1e-8));
    }
    CHECK_THROWS_AS(materialize(WeightSpec{weight::JacobiV{-0.7}}, g), DomainError);
    CHECK_THROWS_AS(materialize(WeightSpec{weight::JacobiV{0.0}}, g), DomainError);
}

TEST_CASE("weight masses")
{
    const auto g = grid(60);
    const Weight w = materialize(WeightSpec{weight::ExpRadial{-0.5}}, g);
    const std::vector<int> E = {1, 4, 9, 50};
    double direct = 0.0;
    for (int j : E)
        direct += w[j] * g->measure(j);
    CHECK(weight_mass(w, E) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(log_weight_mass(w, E) == doctest::Approx(std::log(direct)).epsilon(1e-14));
    CHECK(std::isinf(log_weight_mass(w, {})));
    CHECK(weight_mass(w, {}) == 0.0);
}

TEST_CASE("weight powers")
{
    const auto g = grid(20);
    const Weight w = materialize(WeightSpec{weight::ExpRadial{-0.5}}, g);
    const Weight w2 = weight_power(w, 2.0);
    for (int j = 1; j <= 20; ++j)
        CHECK(w2[j] == doctest::Approx(w[j] * w[j]).epsilon(1e-14));
    CHECK(w2.profile(1.0) == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS_AS(weight_power(w, 0.0), DomainError);
}

TEST_CASE("weight spec names")
{
    CHECK(WeightSpec{weight::Constant{}}.name() == "Constant");
    CHECK(WeightSpec{weight::ExpRadial{-0.5}}.name() == "ExpRadial(-0.5)");
    CHECK(eta_product(WeightSpec{weight::Constant{}}).name() == "EtaProduct(Constant)");
}

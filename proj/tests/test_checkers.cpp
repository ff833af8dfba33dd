#include "nalab/checkers.hpp"
#include "nalab/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nalab;

namespace {

RadialModel model(int J = 60, int N_max = 15)
{
    return RadialModel(SpaceParams::canonical(), J, KernelOptions{N_max, Normalization::peak, false});
}

Weight make(const WeightSpec& spec, const RadialModel& m)
{
    return materialize(spec, m.grid_ptr());
}

RadialFunction uniform(const RadialModel& m, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(m.J_max(), 0.0);
    for (int j = 0; j < m.window(); ++j)
        v[j] = u(rng);
    return radial_function(m, v);
}

void check_witness(const CheckReport& rep, const WitnessContext& ctx)
{
    INFO("report " << rep.id);
    const double again = reevaluate_witness(rep, ctx);
    CHECK(std::abs(again - rep.constant) <= 1e-10 * std::max(1.0, std::abs(rep.constant)));
}

} // namespace

TEST_CASE("set families")
{
    const SetFamily s = SetFamily::singletons(10);
    CHECK(s.sets.size() == 10);
    const SetFamily d = SetFamily::dyadic_blocks(10);
    // Blocks of length 2 (5), 4 (2), 8 (1).
    CHECK(d.sets.size() == 8);
    CHECK(SetFamily::standard(10).sets.size() == 18);
    const SetFamily r1 = SetFamily::random_unions(30, 7, 20), r2 = SetFamily::random_unions(30, 7, 20);
    CHECK(r1.sets == r2.sets);
    CHECK(r1.sets != SetFamily::random_unions(30, 8, 20).sets);
    for (const auto& S : r1.sets)
        for (int j : S)
            CHECK((j >= 1 && j <= 30));
}

TEST_CASE("stability and lambda grid")
{
    CHECK(stability(1.0, 1.1).stable);
    CHECK_FALSE(stability(1.0, 1.3).stable);
    CHECK_FALSE(stability(1.0, INFINITY).stable);
    const auto g = default_lambda_grid();
    CHECK(g.size() == 201);
    CHECK(g.front() == std::exp2(-40.0));
    CHECK(g.back() == std::exp2(10.0));
}

TEST_CASE("local condition")
{
    const RadialModel m = model(20, 5);
    const Weight one = make(WeightSpec{weight::Constant{}}, m);
    CHECK(ap_loc_product(one, 2.0, 0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    const CheckReport rep = check_ap_loc(one, 2.0, {0.5, 2.0});
    CHECK(rep.constant == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.verdict == Verdict::pass);
    check_witness(rep, {.weight = &one, .p = 2.0});

    const Weight wg = make(WeightSpec{weight::ExpRadial{-0.75}}, m);
    const CheckReport rg = check_ap_loc(wg, 2.0, {0.25, 2.0});
    CHECK(std::isfinite(rg.constant));
    CHECK(rg.verdict == Verdict::pass);
    check_witness(rg, {.weight = &wg, .p = 2.0});

    // t^{−ℓ} is not locally integrable at 0.
    const Weight sing = make(power_law(-m.grid().params().ell), m);
    CHECK(std::isinf(ap_loc_product(sing, 2.0, 0.0, 0.5)));
    CHECK(std::isinf(check_ap_loc(sing, 2.0, {0.5, 2.0}).constant));

    weight::Custom raw;
    raw.values.assign(20, 1.0);
    CHECK_THROWS_AS(check_ap_loc(make(WeightSpec{raw}, m), 2.0), UnsupportedError);
}

TEST_CASE("large-scale ratio against the band double sum")
{
    const RadialModel m = model(40, 10);
    const Weight one = make(WeightSpec{weight::Constant{}}, m);
    const double p = 2.0, alpha = 0.8, beta = 0.5;
    const SetFamily fam = SetFamily::singletons(m.window());
    double best = 0.0;
    for (int N = 1; N <= m.N_max(); ++N)
        for (int i = 1; i <= m.window(); ++i)
            for (int j = 1; j <= m.window(); ++j) {
                const double q = m.kernel(N).entry(i, j);
                const double den = std::exp(2.0 * beta * N) * std::pow(m.grid().measure(i), alpha / p) *
                                   std::pow(m.grid().measure(j), 1.0 - alpha / p);
                best = std::max(best, q / den);
            }
    const CheckReport rep = check_large_scale(m, one, p, alpha, beta, fam);
    CHECK(rep.constant == doctest::Approx(best).epsilon(1e-10));
    check_witness(rep, {.model = &m, .weight = &one, .p = p, .alpha = alpha, .beta = beta});

    const CheckReport nec = check_necessary(m, one, p, fam);
    double best_nec = 0.0;
    for (int N = 1; N <= m.N_max(); ++N)
        for (int i = 1; i <= m.window(); ++i)
            for (int j = 1; j <= m.window(); ++j)
                best_nec = std::max(best_nec, m.kernel(N).entry(i, j) /
                                                  (std::exp(2.0 * N) * std::sqrt(m.grid().measure(i) * m.grid().measure(j))));
    CHECK(nec.constant == doctest::Approx(best_nec).epsilon(1e-10));
    check_witness(nec, {.model = &m, .weight = &one, .p = p});

    CHECK_THROWS_AS(check_large_scale(m, one, p, 0.5, 1.0, fam), DomainError);
    CHECK_THROWS_AS(check_large_scale(m, one, p, 0.4, 0.5, fam), DomainError);
    CHECK_THROWS_AS(large_scale_ratio(m, one, p, 1.0, 0.5, 1, {m.window() + 1}, {1}), RangeError);
    CHECK_THROWS_AS(check_necessary(m, one, p, SetFamily{}), UnsupportedError);
}

TEST_CASE("large-scale constant is monotone in the exponents on heavy sets")
{
    const RadialModel m = model(40, 10);
    const Weight w = make(WeightSpec{weight::ExpRadial{-0.5}}, m);
    SetFamily fam;
    for (const auto& S : SetFamily::standard(m.window()).sets)
        if (weight_mass(w, S) >= 1.0)
            fam.sets.push_back(S);
    REQUIRE(fam.sets.size() > 10);
    const double base = check_large_scale(m, w, 2.0, 0.7, 0.5, fam).constant;
    CHECK(check_large_scale(m, w, 2.0, 0.7, 0.6, fam).constant <= base * (1 + 1e-12));
    CHECK(check_large_scale(m, w, 2.0, 0.9, 0.5, fam).constant <= base * (1 + 1e-12));
    CHECK(check_large_scale(m, w, 2.0, 0.9, 0.6, fam).constant <= base * (1 + 1e-12));
}

TEST_CASE("easy check")
{
    const RadialModel m = model();
    const Weight w = make(WeightSpec{weight::ExpStrong{2.0}}, m);
    const CheckReport rep = check_easy_check(m, w, 2.0, -1.0);
    CHECK(std::isfinite(rep.constant));
    CHECK(rep.meta["certified_alpha"].get<double>() == doctest::Approx(0.5));
    check_witness(rep, {.model = &m, .weight = &w, .p = 2.0, .eta = -1.0});

    const Weight one = make(WeightSpec{weight::Constant{}}, m);
    CHECK(std::isfinite(check_easy_check(m, one, 2.0, 0.0).constant));
    CHECK_THROWS_AS(check_easy_check(m, one, 2.0, 1.0), DomainError);

    // Super-critical growth: the supremum keeps increasing with N_max.
    const WeightSpec fast{weight::ExpRadial{5.0}};
    const RadialModel small = model(60, 5), large = model(60, 25);
    const double c5 = check_easy_check(small, make(fast, small), 2.0, 0.0).constant;
    const double c25 = check_easy_check(large, make(fast, large), 2.0, 0.0).constant;
    CHECK(c25 > 100.0 * c5);
}

TEST_CASE("M_s w against w")
{
    const RadialModel m = model();
    const Weight one = make(WeightSpec{weight::Constant{}}, m);
    const CheckReport rep = check_msw(m, one, 2.0);
    CHECK(rep.constant <= 4.0);
    check_witness(rep, {.model = &m, .weight = &one, .s = 2.0});

    const Weight wg = make(WeightSpec{weight::ExpRadial{-0.3}}, m);
    const CheckReport rg = check_msw(m, wg, 2.0);
    CHECK(std::isfinite(rg.constant));
    check_witness(rg, {.model = &m, .weight = &wg, .s = 2.0});
}

TEST_CASE("classical A_p products")
{
    const RadialModel m = model(80, 25);
    const Weight one = make(WeightSpec{weight::Constant{}}, m);
    const CheckReport flat = check_classical_ap(m, one, 2.0, 5, 30);
    CHECK(std::abs(flat.fit->slope) < 1e-10);
    for (double v : flat.meta["products"].get<std::vector<double>>())
        CHECK((v >= 1.0 - 1e-12 && v <= 16.0));
    check_witness(flat, {.model = &m, .weight = &one, .p = 2.0});

    const Weight mild = make(WeightSpec{weight::ExpRadial{-0.25}}, m);
    CHECK(check_classical_ap(m, mild, 2.0, 5, 30).fit->slope <= 1e-2);

    CHECK_THROWS_AS(classical_ap_product(m, one, 2.0, 41), RangeError);
    CHECK_THROWS_AS(check_classical_ap(m, one, 2.0, 5, 5), DomainError);
}

TEST_CASE("weak and strong type ratios")
{
    const RadialModel m = model(80, 25);
    const Weight w = make(eta_product(WeightSpec{weight::ExpStrong{2.0}}), m);
    const RadialFunction f = indicator(m, 1);
    const CheckReport weak = weak_type_ratio(m, w, 2.0, f, default_lambda_grid());
    CHECK(std::isfinite(weak.constant));
    check_witness(weak, {.model = &m, .weight = &w, .f = &f, .p = 2.0});

    const CheckReport strong = strong_type_ratio(m, w, 2.0, f, 20, 50);
    REQUIRE(strong.fit);
    const auto partial = strong.meta["partial_sums"].get<std::vector<double>>();
    CHECK(partial.size() == 50);
    for (std::size_t n = 1; n < partial.size(); ++n)
        CHECK(partial[n] >= partial[n - 1]);
    check_witness(strong, {.model = &m, .weight = &w, .f = &f, .p = 2.0});
    CHECK_THROWS_AS(strong_type_ratio(m, w, 2.0, f, 20, 60), RangeError);

    const RadialFunction zero = radial_function(m, std::vector<double>(80, 0.0));
    const CheckReport z = weak_type_ratio(m, w, 2.0, zero, default_lambda_grid());
    CHECK(z.constant == 0.0);
    CHECK(z.meta["zero_function"] == true);
}

TEST_CASE("Fefferman-Stein ratios")
{
    const RadialModel m = model(100, 30);
    const Weight w = make(WeightSpec{weight::ExpRadial{-1.0}}, m);
    const auto lambdas = default_lambda_grid();
    for (int j : {1, 10, 25}) {
        const RadialFunction f = indicator(m, j);
        const CheckReport s2 = fs_ratio(m, w, 2.0, f, lambdas);
        const CheckReport s11 = fs_ratio(m, w, 1.1, f, lambdas);
        CHECK(s2.constant <= s11.constant * (1 + 1e-12));
        check_witness(s2, {.model = &m, .weight = &w, .f = &f, .s = 2.0});
        const CheckReport k1 = fs_ratio(m, w, 1.0, f, lambdas, 1);
        check_witness(k1, {.model = &m, .weight = &w, .f = &f, .s = 1.0, .k = 1});
    }
    const RadialFunction zero = radial_function(m, std::vector<double>(100, 0.0));
    CHECK(fs_ratio(m, w, 2.0, zero, lambdas).constant == 0.0);
    CHECK_THROWS_AS(fs_ratio(m, w, 0.5, indicator(m, 1), lambdas), DomainError);
    CHECK_THROWS_AS(fs_ratio(m, w, 1.0, indicator(m, 60), lambdas, 2), RangeError);
}

TEST_CASE("Fefferman-Stein and weak type agree for the constant weight")
{
    const RadialModel m = model(80, 25);
    const Weight one = make(WeightSpec{weight::Constant{}}, m);
    const auto lambdas = default_lambda_grid();
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const RadialFunction f = uniform(m, seed);
        const double fs = fs_ratio(m, one, 2.0, f, lambdas).constant;
        const double weak = weak_type_ratio(m, one, 1.0, f, lambdas).constant;
        CHECK(fs >= weak * (1 - 1e-12));
        CHECK(fs <= 4.0 * weak);
    }
}

TEST_CASE("vector-valued ratios")
{
    const TreeSpace tree(2, 5);
    std::mt19937_64 rng(3);
    const VertexFunction f = random_dirac_sum(tree, rng, 6, 5);
    const CheckReport one = vector_valued_ratio_tree(tree, 2.0, 2.0, {f});
    const TreeMaximal mf = tree_maximal(tree, f);
    double num = 0.0, den = 0.0;
    for (TreeSpace::Vertex x = 0; x < tree.size(); ++x) {
        den += f[x] * f[x];
        if (!mf.boundary[x])
            num += mf.values[x] * mf.values[x];
    }
    CHECK(one.constant == doctest::Approx(std::sqrt(num / den)).epsilon(1e-13));

    const std::vector<VertexFunction> zeros(3, VertexFunction(tree.size(), 0.0));
    const CheckReport z = vector_valued_ratio_tree(tree, 3.0, 2.0, zeros);
    CHECK(z.constant == 0.0);
    CHECK(z.meta["zero_function"] == true);
    CHECK_THROWS_AS(vector_valued_ratio_tree(tree, 2.0, 3.0, {f}), DomainError);

    const std::vector<VertexFunction> fs = {f, random_dirac_sum(tree, rng, 6, 5)};
    const CheckReport many = vector_valued_ratio_tree(tree, 3.0, 2.0, fs);
    check_witness(many, {.p = 3.0, .r = 2.0, .tree = &tree, .tree_functions = &fs});

    const RadialModel m = model(60, 15);
    const std::vector<RadialFunction> rf = {uniform(m, 1), uniform(m, 2)};
    const CheckReport rad = vector_valued_ratio_radial(m, 3.0, 2.0, rf);
    CHECK(std::isfinite(rad.constant));
    CHECK(rad.constant > 0.0);
    check_witness(rad, {.model = &m, .p = 3.0, .r = 2.0, .radial_functions = &rf});
}

TEST_CASE("json serialization")
{
    CheckReport rep;
    rep.id = "x";
    rep.constant = INFINITY;
    rep.fit = LineFit{1.5, 0.0, 0.9};
    const auto j = to_json(rep);
    CHECK(j["constant"] == "inf");
    CHECK(j["slope"] == 1.5);
    CHECK(j["verdict"] == "report");
    for (const char* key : {"id", "constant", "witness", "slope", "r2", "verdict", "meta"})
        CHECK(j.contains(key));
}

#include "nalab/experiments.hpp"

#include "nalab/errors.hpp"
#include "nalab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

namespace nalab {

namespace {

using nlohmann::json;

const std::set<std::string> kSupremumCheckers = {"msw", "easy-check", "necessary", "large-scale", "weak-type", "fs"};

double param(const json& p, const char* key, double fallback)
{
    return p.contains(key) ? p.at(key).get<double>() : fallback;
}

int int_param(const json& p, const char* key, int fallback)
{
    return p.contains(key) ? static_cast<int>(std::lround(p.at(key).get<double>())) : fallback;
}

std::pair<int, int> range_param(const json& p, const char* key, int lo, int hi)
{
    if (!p.contains(key))
        return {lo, hi};
    const auto r = p.at(key).get<std::vector<int>>();
    if (r.size() != 2)
        throw ConfigError(std::string("checker: '") + key + "' needs two integers");
    return {r[0], r[1]};
}

RadialModel model_for(const ExperimentConfig& c, int J_max)
{
    return RadialModel(c.space, J_max, c.kernel_options());
}

RadialModel model_at(int J_max, int N_max)
{
    return RadialModel(SpaceParams::canonical(), J_max, KernelOptions{N_max, Normalization::peak, false});
}

Weight weight_at(const WeightSpec& spec, const RadialModel& model)
{
    return materialize(spec, model.grid_ptr());
}

SetFamily family_for(const json& p, int window, std::uint64_t seed)
{
    const std::string kind = p.contains("family") ? p.at("family").get<std::string>() : "standard";
    if (kind == "standard")
        return SetFamily::standard(window);
    if (kind == "singletons")
        return SetFamily::singletons(window);
    if (kind == "dyadic")
        return SetFamily::dyadic_blocks(window);
    if (kind == "random")
        return SetFamily::random_unions(window, seed, int_param(p, "family_count", 64));
    throw ConfigError("checker: unknown family '" + kind + "'");
}

// {"indicator": j} or {"uniform": true}; the default is χ_{Ω_1}.
RadialFunction function_for(const json& p, const RadialModel& model, std::uint64_t seed)
{
    if (!p.contains("f"))
        return indicator(model, 1);
    const json& f = p.at("f");
    if (!f.is_object() || f.size() != 1)
        throw ConfigError("checker: 'f' must be {\"indicator\": j} or {\"uniform\": true}");
    if (f.contains("indicator"))
        return indicator(model, f.at("indicator").get<int>());
    if (f.contains("uniform")) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> v(model.J_max(), 0.0);
        for (int j = 0; j < model.window(); ++j)
            v[j] = u(rng);
        return radial_function(model, v);
    }
    throw ConfigError("checker: unknown function spec");
}

std::vector<RadialFunction> uniform_functions(const RadialModel& model, std::mt19937_64& rng, int count)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<RadialFunction> out;
    for (int n = 0; n < count; ++n) {
        std::vector<double> v(model.J_max(), 0.0);
        for (int j = 0; j < model.window(); ++j)
            v[j] = u(rng);
        out.push_back(radial_function(model, v));
    }
    return out;
}

CheckReport run_tree(const ExperimentConfig& c)
{
    const TreeSpace tree(c.tree_k, c.tree_depth);
    const json& p = c.checker_params;
    if (c.checker == "weak-11")
        return tree_weak11_family(tree, c.seed, int_param(p, "cases", 100), int_param(p, "count", 20));
    if (c.checker == "kolmogorov")
        return kolmogorov_family(tree, param(p, "q", 0.5), c.seed, int_param(p, "cases", 100));
    if (c.checker == "vector-valued")
        return tree_vector_valued(tree, c.seed, int_param(p, "count", 20), param(p, "p", 3.0), param(p, "r", 2.0));
    throw ConfigError("backend 'tree' does not support checker '" + c.checker + "'");
}

CheckReport run_radial(const ExperimentConfig& c, int J_max)
{
    const json& p = c.checker_params;
    const RadialModel model = model_for(c, J_max);
    const Weight w = weight_at(parse_weight_spec(c.weight), model);
    const std::string& id = c.checker;

    if (id == "ap-loc")
        return check_ap_loc(w, param(p, "p", 2.0), ApLocOptions{param(p, "sweep_step", 0.1), 2.0});
    if (id == "large-scale")
        return check_large_scale(model, w, param(p, "p", 2.0), param(p, "alpha", 0.5), param(p, "beta", 0.5),
                                 family_for(p, model.window(), c.seed));
    if (id == "necessary")
        return check_necessary(model, w, param(p, "p", 2.0), family_for(p, model.window(), c.seed));
    if (id == "easy-check")
        return check_easy_check(model, w, param(p, "p", 2.0), param(p, "eta", 0.0));
    if (id == "msw")
        return check_msw(model, w, param(p, "s", 2.0));
    if (id == "classical-ap") {
        const auto [lo, hi] = range_param(p, "j_range", 5, std::min(30, J_max / 2));
        return check_classical_ap(model, w, param(p, "p", 2.0), lo, hi);
    }
    if (id == "weak-type")
        return weak_type_ratio(model, w, param(p, "p", 2.0), function_for(p, model, c.seed), default_lambda_grid());
    if (id == "strong-type") {
        const auto [lo, hi] = range_param(p, "cut_range", 20, std::min(60, model.window()));
        return strong_type_ratio(model, w, param(p, "p", 2.0), function_for(p, model, c.seed), lo, hi);
    }
    if (id == "fs")
        return fs_ratio(model, w, param(p, "s", 2.0), function_for(p, model, c.seed), default_lambda_grid(),
                        int_param(p, "k", 1));
    if (id == "vector-valued") {
        std::mt19937_64 rng(c.seed);
        return vector_valued_ratio_radial(model, param(p, "p", 3.0), param(p, "r", 2.0),
                                          uniform_functions(model, rng, int_param(p, "count", 20)));
    }
    throw ConfigError("backend 'radial' does not support checker '" + id + "'");
}

json number(double x)
{
    return std::isfinite(x) ? json(x) : json(x > 0 ? "inf" : "nan");
}

// Attaches the refinement result and sets the verdict from it.
void judge_stability(CheckReport& coarse, const CheckReport& fine, double tolerance = kDriftTolerance)
{
    const Stability st = stability(coarse.constant, fine.constant, tolerance);
    coarse.meta["refined_J_max"] = fine.meta.value("J_max", 0);
    coarse.meta["refined_constant"] = number(fine.constant);
    coarse.meta["drift"] = number(st.drift);
    coarse.verdict = st.stable ? Verdict::pass : Verdict::fail;
}

double log_slope(const std::vector<double>& xs, const std::vector<double>& values, LineFit* fit_out = nullptr)
{
    std::vector<double> ys;
    for (double v : values)
        ys.push_back(std::log(v));
    const LineFit fit = fit_line(xs, ys);
    if (fit_out)
        *fit_out = fit;
    return fit.slope;
}

bool within(double value, double target, double rel)
{
    return std::abs(value - target) <= rel * std::abs(target);
}

// ---- experiment drivers ----------------------------------------------------------

// Supremum constant at J and 2J with fixed N_max, judged by drift.
template <class Run>
CheckReport refined(int J, int N_max, Run run)
{
    const RadialModel coarse_model = model_at(J, N_max);
    const RadialModel fine_model = model_at(2 * J, N_max);
    CheckReport rep = run(coarse_model);
    judge_stability(rep, run(fine_model));
    return rep;
}

ExperimentOutcome ex_trivial(std::uint64_t seed)
{
    ExperimentOutcome out;
    const WeightSpec one{weight::Constant{}};
    auto msw = refined(80, 25, [&](const RadialModel& m) { return check_msw(m, weight_at(one, m), 2.0); });
    const bool msw_ok = msw.verdict == Verdict::pass && msw.constant <= 4.0;
    msw.verdict = msw_ok ? Verdict::pass : Verdict::fail;

    const RadialModel model = model_at(80, 25);
    CheckReport ap = check_ap_loc(weight_at(one, model), 2.0);
    const bool ap_ok = std::abs(ap.constant - 1.0) <= 1e-9;
    ap.verdict = ap_ok ? Verdict::pass : Verdict::fail;

    auto nec = refined(40, 12, [&](const RadialModel& m) {
        return check_necessary(m, weight_at(one, m), 2.0, SetFamily::standard(m.window()));
    });

    out.pass = msw_ok && ap_ok && nec.verdict == Verdict::pass;
    out.summary = {{"msw", msw.constant}, {"ap_loc", ap.constant}, {"necessary", nec.constant}};
    out.reports = {{"msw s=2", msw}, {"ap-loc p=2", ap}, {"necessary p=2", nec}};
    (void)seed;
    return out;
}

ExperimentOutcome ex_blesa(std::uint64_t)
{
    ExperimentOutcome out;
    out.pass = true;
    const std::vector<std::pair<double, double>> cases = {{-0.3, 2.0}, {-0.5, 2.0}, {-1.0, 1.05}};
    for (const auto& [gamma, s] : cases) {
        const WeightSpec spec{weight::ExpRadial{gamma}};
        auto rep = refined(60, 25, [&](const RadialModel& m) { return check_msw(m, weight_at(spec, m), s); });
        out.pass = out.pass && rep.verdict == Verdict::pass;
        out.summary["gamma=" + std::to_string(gamma).substr(0, 5)] = rep.constant;
        out.reports.emplace_back("msw gamma=" + std::to_string(gamma).substr(0, 5), rep);
    }
    // Outside the range γs ∈ [−1, 0): reported only.
    const WeightSpec outside{weight::ExpRadial{-0.75}};
    auto rep = refined(60, 25, [&](const RadialModel& m) { return check_msw(m, weight_at(outside, m), 2.0); });
    rep.verdict = Verdict::report;
    out.reports.emplace_back("msw gamma=-0.75 (report only)", rep);
    return out;
}

ExperimentOutcome ex_beta_eq_alpha(std::uint64_t)
{
    ExperimentOutcome out;
    const WeightSpec spec{weight::ExpStrong{2.0}};
    auto easy = refined(60, 25, [&](const RadialModel& m) { return check_easy_check(m, weight_at(spec, m), 2.0, -1.0); });
    auto large = refined(40, 12, [&](const RadialModel& m) {
        return check_large_scale(m, weight_at(spec, m), 2.0, 0.5, 0.5, SetFamily::standard(m.window()));
    });
    out.pass = easy.verdict == Verdict::pass && large.verdict == Verdict::pass;
    out.summary = {{"easy_check", easy.constant}, {"large_scale", large.constant}};
    out.reports = {{"easy-check p=2 eta=-1", easy}, {"large-scale alpha=beta=1/2", large}};
    return out;
}

ExperimentOutcome ex_spherical(std::uint64_t)
{
    ExperimentOutcome out;
    const WeightSpec u{weight::SphericalU{2.0}};
    auto easy = refined(60, 25, [&](const RadialModel& m) { return check_easy_check(m, weight_at(u, m), 2.0, -1.0); });
    out.pass = easy.verdict == Verdict::pass;
    out.reports.emplace_back("easy-check SphericalU p=2", easy);

    // Growth rate of the spherical weight against e^{2ρ(p−1)d}.
    const RadialModel big = model_at(30, 3);
    const Weight wu = weight_at(u, big);
    std::vector<double> xs, vals;
    for (int j = 16; j <= 25; ++j) {
        xs.push_back(big.grid().midpoint(j));
        vals.push_back(wu[j]);
    }
    CheckReport slope;
    slope.id = "log-slope";
    LineFit fit;
    slope.constant = log_slope(xs, vals, &fit);
    slope.fit = fit;
    const bool slope_ok = within(fit.slope, 2.0, 0.02);
    slope.verdict = slope_ok ? Verdict::pass : Verdict::fail;
    slope.meta = {{"weight", wu.label()}, {"target", 2.0}, {"tolerance", 0.02}};
    out.pass = out.pass && slope_ok;
    out.reports.emplace_back("log-slope SphericalU", slope);

    for (double gamma : {-0.3, -0.45}) {
        const WeightSpec v{weight::JacobiV{gamma}};
        auto rep = refined(60, 25, [&](const RadialModel& m) { return check_msw(m, weight_at(v, m), 2.0); });
        out.pass = out.pass && rep.verdict == Verdict::pass;
        out.reports.emplace_back("msw JacobiV gamma=" + std::to_string(gamma).substr(0, 5), rep);
    }
    out.summary = {{"easy_check", easy.constant}, {"spherical_slope", fit.slope}};
    return out;
}

WeightSpec notstrong_weight()
{
    return eta_product(WeightSpec{weight::ExpStrong{2.0}});
}

ExperimentOutcome ex_notstrong(std::uint64_t)
{
    ExperimentOutcome out;
    const WeightSpec spec = notstrong_weight();
    auto weak = refined(80, 25, [&](const RadialModel& m) {
        return weak_type_ratio(m, weight_at(spec, m), 2.0, indicator(m, 1), default_lambda_grid());
    });
    const RadialModel model = model_at(130, 64);
    CheckReport strong = strong_type_ratio(model, weight_at(spec, model), 2.0, indicator(model, 1), 20, 60);
    const bool strong_ok = strong.fit && strong.fit->slope >= 0.5;
    strong.verdict = strong_ok ? Verdict::pass : Verdict::fail;
    out.pass = weak.verdict == Verdict::pass && strong_ok;
    out.summary = {{"weak_ratio", weak.constant}, {"strong_slope", strong.fit ? strong.fit->slope : 0.0}};
    out.reports = {{"weak-type p=2", weak}, {"strong-type partial sums", strong}};
    return out;
}

ExperimentOutcome ex_apnot(std::uint64_t)
{
    ExperimentOutcome out;
    const RadialModel model = model_at(80, 25);
    const double rho = model.grid().params().rho;
    CheckReport rep = check_classical_ap(model, weight_at(WeightSpec{weight::ExpRadial{-0.75}}, model), 2.0, 5, 30);
    const double target = -2.0 * rho * (2.0 * -0.75 + 1.0);
    out.pass = within(rep.fit->slope, target, 0.10);
    rep.verdict = out.pass ? Verdict::pass : Verdict::fail;
    rep.meta["target_slope"] = target;
    out.summary = {{"slope", rep.fit->slope}, {"target", target}};
    out.reports = {{"classical-ap gamma=-0.75", rep}};
    return out;
}

ExperimentOutcome ex_growthnec(std::uint64_t)
{
    ExperimentOutcome out;
    const WeightSpec spec{weight::ExpRadial{-1.0}};
    auto nec = refined(40, 12, [&](const RadialModel& m) {
        return check_necessary(m, weight_at(spec, m), 2.0, SetFamily::standard(m.window()));
    });

    // Weak-type ratios along f = χ_{Ω_j}: growth in j rules out weak type.
    const RadialModel model = model_at(80, 25);
    const Weight w = weight_at(spec, model);
    std::vector<double> js, ratios;
    for (int j = 5; j <= 30; ++j) {
        js.push_back(j);
        ratios.push_back(weak_type_ratio(model, w, 2.0, indicator(model, j), default_lambda_grid()).constant);
    }
    CheckReport growth;
    growth.id = "weak-type growth";
    LineFit fit;
    log_slope(js, ratios, &fit);
    growth.fit = fit;
    growth.constant = ratios.back();
    growth.witness.j = 30;
    const bool grows = fit.slope > 0.0 && ratios.back() >= 3.0 * ratios.front();
    growth.verdict = grows ? Verdict::pass : Verdict::fail;
    growth.meta = {{"ratios", ratios}, {"j_range", {5, 30}}, {"p", 2.0}, {"weight", w.label()}};

    out.pass = nec.verdict == Verdict::pass && grows;
    out.summary = {{"necessary", nec.constant}, {"weak_ratio_j5", ratios.front()}, {"weak_ratio_j30", ratios.back()}};
    out.reports = {{"necessary p=2", nec}, {"weak-type along indicators", growth}};
    return out;
}

ExperimentOutcome thm_fs_failure(std::uint64_t)
{
    ExperimentOutcome out;
    out.pass = true;
    const RadialModel model = model_at(150, 45);
    const Weight w = weight_at(WeightSpec{weight::ExpRadial{-1.0}}, model);
    const auto lambdas = default_lambda_grid();
    json summary;

    for (int k : {1, 2}) {
        std::vector<double> js, cs;
        for (int j = 10; j <= 40; ++j) {
            js.push_back(j);
            cs.push_back(fs_ratio(model, w, 1.0, indicator(model, j), lambdas, k).constant);
        }
        double band_lo = INFINITY, band_hi = 0.0;
        bool increasing = true;
        for (std::size_t n = 0; n < cs.size(); ++n) {
            band_lo = std::min(band_lo, cs[n] / js[n]);
            band_hi = std::max(band_hi, cs[n] / js[n]);
            if (n > 0 && cs[n] < cs[n - 1])
                increasing = false;
        }
        const double growth = cs.back() / cs.front();
        CheckReport rep;
        rep.id = "fs";
        rep.constant = cs.back();
        rep.witness.j = 40;
        LineFit fit = fit_line(js, cs);
        rep.fit = fit;
        const bool ok = increasing && growth >= 3.0 && band_hi / band_lo <= 1.5;
        rep.verdict = ok ? Verdict::pass : Verdict::fail;
        rep.meta = {{"s", 1.0}, {"k", k}, {"c", cs}, {"c40_over_c10", growth},
                    {"c_over_j_band", {band_lo, band_hi}}, {"increasing", increasing}};
        out.pass = out.pass && ok;
        summary["k=" + std::to_string(k)] = {{"c40_over_c10", growth}, {"band", {band_lo, band_hi}}};
        out.reports.emplace_back("fs s=1 k=" + std::to_string(k), rep);
    }

    double previous = INFINITY;
    bool monotone = true;
    for (double s : {1.1, 1.25, 1.5, 2.0}) {
        CheckReport sup;
        sup.id = "fs";
        for (int j = 1; j <= 30; ++j) {
            const double c = fs_ratio(model, w, s, indicator(model, j), lambdas).constant;
            if (c > sup.constant) {
                sup.constant = c;
                sup.witness.j = j;
            }
        }
        monotone = monotone && sup.constant <= previous;
        previous = sup.constant;
        sup.verdict = std::isfinite(sup.constant) ? Verdict::report : Verdict::fail;
        sup.meta = {{"s", s}, {"j_range", {1, 30}}};
        summary["sup_s=" + std::to_string(s).substr(0, 4)] = sup.constant;
        out.reports.emplace_back("fs s=" + std::to_string(s).substr(0, 4), sup);
    }
    summary["s_sweep_monotone"] = monotone;
    out.pass = out.pass && monotone;
    out.summary = summary;
    return out;
}

ExperimentOutcome mf_lower(std::uint64_t)
{
    ExperimentOutcome out;
    const RadialModel model = model_at(80, 35);
    const RadialFunction mf = maximal_dis(model, indicator(model, 1)).as_function();
    std::vector<double> js, vals;
    for (int j = 5; j <= 30; ++j) {
        js.push_back(j);
        vals.push_back(mf[j]);
    }
    CheckReport rep;
    rep.id = "mf-lower";
    LineFit fit;
    log_slope(js, vals, &fit);
    rep.fit = fit;
    rep.constant = fit.slope;
    const double target = -2.0 * model.grid().params().rho;
    out.pass = within(fit.slope, target, 0.10);
    rep.verdict = out.pass ? Verdict::pass : Verdict::fail;
    rep.meta = {{"target_slope", target}, {"j_range", {5, 30}}, {"J_max", 80}, {"N_max", 35}};
    out.summary = {{"slope", fit.slope}, {"target", target}};
    out.reports = {{"log-slope of M chi_1", rep}};
    return out;
}

ExperimentOutcome tree_weak11(std::uint64_t seed)
{
    ExperimentOutcome out;
    double lo = INFINITY, hi = 0.0;
    for (int k : {2, 3, 4}) {
        const CheckReport rep = tree_weak11_family(TreeSpace(k, 8), seed, 100, 20);
        lo = std::min(lo, rep.constant);
        hi = std::max(hi, rep.constant);
        out.reports.emplace_back("weak-11 k=" + std::to_string(k), rep);
    }
    out.pass = hi < 2.0 * lo;
    out.summary = {{"min", lo}, {"max", hi}, {"spread", hi / lo}};
    return out;
}

ExperimentOutcome kolmogorov(std::uint64_t seed)
{
    ExperimentOutcome out;
    out.pass = true;
    const TreeSpace tree(2, 8);
    for (double q : {0.3, 0.5, 0.7}) {
        const CheckReport rep = kolmogorov_family(tree, q, seed, 100);
        out.pass = out.pass && rep.verdict == Verdict::pass;
        out.summary["q=" + std::to_string(q).substr(0, 3)] = rep.meta["holds"];
        out.reports.emplace_back("kolmogorov q=" + std::to_string(q).substr(0, 3), rep);
    }
    return out;
}

ExperimentOutcome vector_valued(std::uint64_t seed)
{
    ExperimentOutcome out;
    const TreeSpace tree(2, 8);
    double lo = INFINITY, hi = 0.0;
    for (std::uint64_t n = 0; n < 10; ++n) {
        const CheckReport rep = tree_vector_valued(tree, seed + n, 20, 3.0, 2.0);
        lo = std::min(lo, rep.constant);
        hi = std::max(hi, rep.constant);
        out.reports.emplace_back("vector-valued seed=" + std::to_string(seed + n), rep);
    }
    out.pass = std::isfinite(hi) && hi < 2.0 * lo;
    out.summary = {{"min", lo}, {"max", hi}, {"spread", hi / lo}};
    return out;
}

using Driver = std::function<ExperimentOutcome(std::uint64_t)>;

const std::vector<std::pair<std::string, Driver>>& drivers()
{
    static const std::vector<std::pair<std::string, Driver>> table = {
        {"ex-trivial", ex_trivial},       {"ex-blesa", ex_blesa},         {"ex-beta-eq-alpha", ex_beta_eq_alpha},
        {"ex-spherical", ex_spherical},   {"ex-notstrong", ex_notstrong}, {"ex-apnot", ex_apnot},
        {"ex-growthnec", ex_growthnec},   {"thm-fs-failure", thm_fs_failure}, {"mf-lower", mf_lower},
        {"tree-weak11", tree_weak11},     {"kolmogorov", kolmogorov},     {"vector-valued", vector_valued},
    };
    return table;
}

} // namespace

CheckReport run_checker(const ExperimentConfig& config)
{
    try {
        if (config.backend == "tree")
            return run_tree(config);
        CheckReport rep = run_radial(config, config.J_max);
        const bool refine = config.checker_params.value("refine", true);
        if (refine && kSupremumCheckers.count(config.checker))
            judge_stability(rep, run_radial(config, 2 * config.J_max));
        rep.meta["seed"] = config.seed;
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("checker parameters: ") + e.what());
    }
}

std::vector<SweepRow> sweep(const ExperimentConfig& config)
{
    std::vector<std::pair<std::string, std::vector<double>>> axes(config.axes.begin(), config.axes.end());
    std::vector<SweepRow> rows;
    std::vector<std::size_t> index(axes.size(), 0);
    while (true) {
        ExperimentConfig cell = config;
        SweepRow row;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const std::string& name = axes[a].first;
            const double v = axes[a].second[index[a]];
            row.params.push_back(v);
            if (name.rfind("weight.", 0) == 0) {
                cell.weight[name.substr(7)] = v;
                parse_weight_spec(cell.weight);
            } else if (name == "grid.J_max") {
                cell.J_max = static_cast<int>(v);
            } else if (name == "grid.N_max") {
                cell.N_max = static_cast<int>(v);
            } else if (name == "seed") {
                cell.seed = static_cast<std::uint64_t>(v);
            } else {
                cell.checker_params[name] = v;
            }
        }
        if (cell.N_max < 1 || cell.N_max > cell.J_max - 2)
            throw ConfigError("sweep: cell with N_max outside 1..J_max-2");
        row.report = run_checker(cell);
        rows.push_back(std::move(row));

        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++index[a] < axes[a].second.size())
                break;
            index[a] = 0;
            if (a == 0)
                return rows;
        }
        if (axes.empty())
            return rows;
    }
}

CheckReport tree_weak11_family(const TreeSpace& tree, std::uint64_t seed, int cases, int masses)
{
    std::mt19937_64 rng(seed);
    CheckReport rep;
    rep.id = "weak-11";
    double mean = 0.0;
    for (int n = 0; n < cases; ++n) {
        const VertexFunction f = random_dirac_sum(tree, rng, masses, tree.depth());
        const WeakConstant wc = tree_weak_constant(tree, f, tree_maximal(tree, f), false);
        mean += wc.value / cases;
        if (wc.value > rep.constant) {
            rep.constant = wc.value;
            rep.witness.lambda = wc.lambda;
            rep.witness.i = n;
        }
    }
    rep.verdict = std::isfinite(rep.constant) ? Verdict::report : Verdict::fail;
    rep.meta = {{"k", tree.k()}, {"depth", tree.depth()}, {"cases", cases}, {"masses", masses},
                {"seed", seed}, {"mean", mean}};
    return rep;
}

CheckReport kolmogorov_family(const TreeSpace& tree, double q, std::uint64_t seed, int cases)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<TreeSpace::Vertex> vertex(0, tree.size() - 1);
    std::uniform_int_distribution<int> size(1, 64);
    CheckReport rep;
    rep.id = "kolmogorov";
    int holds = 0;
    double worst = 0.0;
    for (int n = 0; n < cases; ++n) {
        const VertexFunction f = random_dirac_sum(tree, rng, 20, tree.depth());
        std::set<TreeSpace::Vertex> B;
        const int want = size(rng);
        while (static_cast<int>(B.size()) < want)
            B.insert(vertex(rng));
        const KolmogorovReport k = tree_kolmogorov(tree, q, f, {B.begin(), B.end()});
        holds += k.holds;
        if (k.lhs / k.rhs > worst) {
            worst = k.lhs / k.rhs;
            rep.witness.i = n;
        }
    }
    rep.constant = worst; // largest lhs / rhs
    rep.verdict = holds == cases ? Verdict::pass : Verdict::fail;
    rep.meta = {{"q", q}, {"cases", cases}, {"holds", holds}, {"seed", seed}, {"k", tree.k()},
                {"depth", tree.depth()}};
    return rep;
}

CheckReport tree_vector_valued(const TreeSpace& tree, std::uint64_t seed, int functions, double p, double r)
{
    std::mt19937_64 rng(seed);
    std::vector<VertexFunction> fs;
    for (int n = 0; n < functions; ++n)
        fs.push_back(random_dirac_sum(tree, rng, 20, tree.depth()));
    CheckReport rep = vector_valued_ratio_tree(tree, p, r, fs);
    rep.meta["seed"] = seed;
    rep.verdict = std::isfinite(rep.constant) ? Verdict::report : Verdict::fail;
    return rep;
}

const std::vector<std::string>& experiment_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, run] : drivers())
            v.push_back(id);
        return v;
    }();
    return ids;
}

ExperimentOutcome reproduce(const std::string& id, std::uint64_t seed)
{
    for (const auto& [name, run] : drivers())
        if (name == id) {
            ExperimentOutcome out = run(seed);
            out.id = id;
            out.seed = seed;
            return out;
        }
    throw ConfigError("unknown experiment id '" + id + "'");
}

} // namespace nalab

#include "nalab/checkers.hpp"

#include "nalab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace nalab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_sets_in_window(const std::vector<int>& S, int window, const char* who)
{
    for (int j : S)
        if (j < 1 || j > window)
            throw RangeError(std::string(who) + ": set leaves the valid window");
}

struct LogSum {
    double top = kNegInf;
    double acc = 0.0;

    void add(double l)
    {
        if (l == kNegInf)
            return;
        if (l > top) {
            acc = acc * std::exp(top - l) + 1.0;
            top = l;
        } else {
            acc += std::exp(l - top);
        }
    }
    double value() const { return top == kNegInf ? kNegInf : top + std::log(acc); }
};

double largest_ratio(const RadialModel& model, const Weight& w, double p, double alpha, double beta,
                     const SetFamily& family, Witness& witness, int& skipped)
{
    if (family.sets.empty())
        throw UnsupportedError("large-scale check: empty set family");
    double best = -1.0;
    skipped = 0;
    for (int N = 1; N <= model.N_max(); ++N)
        for (const auto& E : family.sets)
            for (const auto& F : family.sets) {
                if (E.empty() || F.empty()) {
                    ++skipped;
                    continue;
                }
                const double r = large_scale_ratio(model, w, p, alpha, beta, N, E, F);
                if (r > best) {
                    best = r;
                    witness.N = N;
                    witness.E = E;
                    witness.F = F;
                }
            }
    return best;
}

nlohmann::json window_meta(const RadialModel& model)
{
    return {{"J_max", model.J_max()}, {"N_max", model.N_max()}, {"window", model.window()}};
}

double vector_norm_ratio(double num, double den, double p)
{
    return den > 0.0 ? std::pow(num / den, 1.0 / p) : 0.0;
}

} // namespace

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::report: return "report";
    }
    return "report";
}

Stability stability(double coarse, double fine, double tolerance)
{
    Stability s{coarse, fine, kInf, false};
    if (std::isfinite(coarse) && std::isfinite(fine) && coarse > 0.0) {
        s.drift = std::abs(fine - coarse) / coarse;
        s.stable = s.drift < tolerance;
    }
    return s;
}

std::vector<double> default_lambda_grid()
{
    std::vector<double> g;
    for (int q = -160; q <= 40; ++q)
        g.push_back(std::exp2(q / 4.0));
    return g;
}

SetFamily SetFamily::singletons(int window)
{
    SetFamily f;
    f.kind = Kind::singletons;
    for (int j = 1; j <= window; ++j)
        f.sets.push_back({j});
    return f;
}

SetFamily SetFamily::dyadic_blocks(int window)
{
    SetFamily f;
    f.kind = Kind::dyadic_blocks;
    for (int len = 2; len <= window; len *= 2)
        for (int start = 1; start + len - 1 <= window; start += len) {
            std::vector<int> block(len);
            for (int t = 0; t < len; ++t)
                block[t] = start + t;
            f.sets.push_back(std::move(block));
        }
    return f;
}

SetFamily SetFamily::standard(int window)
{
    SetFamily f = singletons(window);
    SetFamily blocks = dyadic_blocks(window);
    f.kind = Kind::singletons_and_blocks;
    f.sets.insert(f.sets.end(), blocks.sets.begin(), blocks.sets.end());
    return f;
}

SetFamily SetFamily::random_unions(int window, std::uint64_t seed, int count)
{
    SetFamily f;
    f.kind = Kind::random_unions;
    f.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size_dist(1, std::min(8, window));
    std::uniform_int_distribution<int> index_dist(1, window);
    for (int n = 0; n < count; ++n) {
        std::set<int> s;
        const int size = size_dist(rng);
        while (static_cast<int>(s.size()) < size)
            s.insert(index_dist(rng));
        f.sets.emplace_back(s.begin(), s.end());
    }
    return f;
}

// ---- local condition ---------------------------------------------------------

double ap_loc_product(const Weight& w, double p, double a, double b)
{
    if (!(p > 1.0))
        throw DomainError("A_p,loc: p must exceed 1");
    if (!w.has_profile())
        throw UnsupportedError("A_p,loc: weight '" + w.label() + "' has no continuum profile");
    const SpaceParams& params = w.grid().params();
    const double dual = -1.0 / (p - 1.0);

    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    bool converged = true;
    auto integrate = [&](auto&& g) {
        double err = 0.0;
        const double v = GK::integrate(g, a, b, 12, 1e-11, &err);
        if (!std::isfinite(v) || !(err <= 1e-7 * std::abs(v)))
            converged = false;
        return v;
    };
    const double mu = integrate([&](double t) { return density(params, t); });
    const double i1 = integrate([&](double t) { return w.profile(t) * density(params, t); });
    const double i2 = integrate([&](double t) { return std::pow(w.profile(t), dual) * density(params, t); });
    if (!converged || !(mu > 0.0))
        return kInf;
    return (i1 / mu) * std::pow(i2 / mu, p - 1.0);
}

CheckReport check_ap_loc(const Weight& w, double p, const ApLocOptions& options)
{
    if (!w.has_profile())
        throw UnsupportedError("A_p,loc: weight '" + w.label() + "' has no continuum profile");
    const double top = w.grid().J_max();

    auto sweep = [&](double step, Witness& wit) {
        double best = 0.0;
        const int starts = static_cast<int>(std::llround(top / step));
        const int lengths = static_cast<int>(std::llround(options.max_length / step));
        for (int s = 0; s < starts; ++s)
            for (int l = 1; l <= lengths; ++l) {
                const double a = s * step, b = (s + l) * step;
                if (b > top + 1e-12)
                    break;
                const double v = ap_loc_product(w, p, a, b);
                if (v > best || std::isinf(v)) {
                    best = v;
                    wit.t_lo = a;
                    wit.t_hi = b;
                }
                if (std::isinf(v))
                    return best;
            }
        return best;
    };

    CheckReport rep;
    rep.id = "ap-loc";
    rep.constant = sweep(options.sweep_step, rep.witness);
    Witness fine_witness;
    const double fine = sweep(options.sweep_step / 2.0, fine_witness);
    const Stability st = stability(rep.constant, fine, 0.05);
    rep.verdict = st.stable ? Verdict::pass : Verdict::fail;
    rep.meta = {{"p", p},
                {"sweep_step", options.sweep_step},
                {"max_length", options.max_length},
                {"refined_constant", std::isfinite(fine) ? nlohmann::json(fine) : nlohmann::json("inf")},
                {"drift", std::isfinite(st.drift) ? nlohmann::json(st.drift) : nlohmann::json("inf")},
                {"weight", w.label()}};
    return rep;
}

// ---- large-scale conditions ----------------------------------------------------

double large_scale_ratio(const RadialModel& model, const Weight& w, double p, double alpha, double beta, int N,
                         const std::vector<int>& E, const std::vector<int>& F)
{
    check_sets_in_window(E, model.window(), "large_scale_ratio");
    check_sets_in_window(F, model.window(), "large_scale_ratio");
    if (E.empty() || F.empty())
        throw DomainError("large_scale_ratio: empty set");
    const ProductKernel& K = model.kernel(N);
    LogSum q;
    for (int i : E)
        for (int j : F)
            if (std::abs(i - j) <= N + 1)
                q.add(K.log_entry(i, j) + std::log(w[j]));
    const double log_q = q.value();
    if (log_q == kNegInf)
        return 0.0;
    const double log_den = 2.0 * model.grid().params().rho * beta * N + alpha / p * log_weight_mass(w, E) +
                           (1.0 - alpha / p) * log_weight_mass(w, F);
    return std::exp(log_q - log_den);
}

CheckReport check_large_scale(const RadialModel& model, const Weight& w, double p, double alpha, double beta,
                              const SetFamily& family)
{
    if (!(beta > 0.0 && beta < 1.0) || !(beta <= alpha && alpha < p))
        throw DomainError("check_large_scale: need 0 < beta < 1 and beta <= alpha < p");
    CheckReport rep;
    rep.id = "large-scale";
    int skipped = 0;
    rep.constant = largest_ratio(model, w, p, alpha, beta, family, rep.witness, skipped);
    rep.meta = window_meta(model);
    rep.meta["p"] = p;
    rep.meta["alpha"] = alpha;
    rep.meta["beta"] = beta;
    rep.meta["family_size"] = family.sets.size();
    rep.meta["family_seed"] = family.seed;
    rep.meta["skipped"] = skipped;
    rep.meta["weight"] = w.label();
    rep.verdict = std::isfinite(rep.constant) ? Verdict::report : Verdict::fail;
    return rep;
}

CheckReport check_necessary(const RadialModel& model, const Weight& w, double p, const SetFamily& family)
{
    if (!(p > 1.0))
        throw DomainError("check_necessary: p must exceed 1");
    CheckReport rep;
    rep.id = "necessary";
    int skipped = 0;
    rep.constant = largest_ratio(model, w, p, 1.0, 1.0, family, rep.witness, skipped);
    rep.meta = window_meta(model);
    rep.meta["p"] = p;
    rep.meta["family_size"] = family.sets.size();
    rep.meta["family_seed"] = family.seed;
    rep.meta["skipped"] = skipped;
    rep.meta["weight"] = w.label();
    rep.verdict = std::isfinite(rep.constant) ? Verdict::report : Verdict::fail;
    return rep;
}

double easy_check_term(const RadialModel& model, const Weight& w, double p, double eta, int N, int i, int j)
{
    const AnnularGrid& grid = model.grid();
    const double a = annular_intersection(grid, i, N, grid.midpoint(j));
    if (a == 0.0)
        return 0.0;
    const double rho = grid.params().rho;
    const double log_num = std::log(w[i]) + std::log(a);
    const double log_den = rho * (N + i - j) * (p - eta) + 2.0 * rho * N * eta + std::log(w[j]);
    return std::exp(log_num - log_den);
}

CheckReport check_easy_check(const RadialModel& model, const Weight& w, double p, double eta)
{
    if (!(eta < 1.0))
        throw DomainError("check_easy_check: eta must be below 1");
    CheckReport rep;
    rep.id = "easy-check";
    double best = -1.0;
    const int J = model.J_max();
    for (int N = 1; N <= model.N_max(); ++N)
        for (int j = 1; j <= model.window(); ++j)
            for (int i = std::max(1, j - N); i <= std::min(J, j + N); ++i) {
                const double v = easy_check_term(model, w, p, eta, N, i, j);
                if (v > best) {
                    best = v;
                    rep.witness.N = N;
                    rep.witness.i = i;
                    rep.witness.j = j;
                }
            }
    rep.constant = best;
    rep.meta = window_meta(model);
    rep.meta["p"] = p;
    rep.meta["eta"] = eta;
    rep.meta["certified_alpha"] = p / (p + 1.0 - eta);
    rep.meta["certified_beta"] = p / (p + 1.0 - eta);
    rep.meta["weight"] = w.label();
    rep.verdict = std::isfinite(best) ? Verdict::report : Verdict::fail;
    return rep;
}

CheckReport check_msw(const RadialModel& model, const Weight& w, double s)
{
    const RadialFunction ms = maximal_s(model, w, s);
    CheckReport rep;
    rep.id = "msw";
    double best = -1.0;
    for (int i = 1; i <= ms.valid_hi; ++i) {
        const double r = ms[i] / w[i];
        if (r > best) {
            best = r;
            rep.witness.i = i;
        }
    }
    rep.constant = best;
    const double s_dual = s / (s - 1.0);
    rep.meta = window_meta(model);
    rep.meta["s"] = s;
    rep.meta["certified_alpha_over_p"] = s_dual / (s_dual + 1.0);
    rep.meta["certified_beta"] = s_dual / (s_dual + 1.0);
    rep.meta["weight"] = w.label();
    rep.verdict = std::isfinite(best) ? Verdict::report : Verdict::fail;
    return rep;
}

double classical_ap_product(const RadialModel& model, const Weight& w, double p, int j)
{
    if (!(p > 1.0))
        throw DomainError("classical A_p: p must exceed 1");
    const AnnularGrid& grid = model.grid();
    if (j < 1 || 2 * j > grid.J_max())
        throw RangeError("classical A_p: ball B(x_j, j) leaves the grid");
    const double D = grid.midpoint(j);
    const double dual = -1.0 / (p - 1.0);
    double mass = 0.0, iw = 0.0, idual = 0.0;
    for (int i = 1; i <= grid.J_max(); ++i) {
        const double a = annular_intersection(grid, i, j, D);
        if (a == 0.0)
            continue;
        mass += a;
        iw += a * w[i];
        idual += a * std::pow(w[i], dual);
    }
    return (iw / mass) * std::pow(idual / mass, p - 1.0);
}

CheckReport check_classical_ap(const RadialModel& model, const Weight& w, double p, int j_lo, int j_hi)
{
    if (j_lo < 1 || j_hi <= j_lo)
        throw DomainError("check_classical_ap: need 1 <= j_lo < j_hi");
    CheckReport rep;
    rep.id = "classical-ap";
    std::vector<double> xs, ys, products;
    double best = -1.0;
    for (int j = j_lo; j <= j_hi; ++j) {
        const double v = classical_ap_product(model, w, p, j);
        products.push_back(v);
        xs.push_back(j);
        ys.push_back(std::log(v));
        if (v > best) {
            best = v;
            rep.witness.j = j;
        }
    }
    rep.constant = best;
    rep.fit = fit_line(xs, ys);
    rep.meta = window_meta(model);
    rep.meta["p"] = p;
    rep.meta["j_range"] = {j_lo, j_hi};
    rep.meta["products"] = products;
    rep.meta["weight"] = w.label();
    return rep;
}

// ---- operator inequalities -------------------------------------------------------

double weak_level_term(const Weight& w, const RadialFunction& g, double p, double lambda)
{
    return std::pow(lambda, p) * distribution_mass(w, g, lambda);
}

double lp_norm_p(const Weight& w, const RadialFunction& f, double p)
{
    double total = 0.0;
    for (int j = 1; j <= f.valid_hi; ++j)
        if (f[j] != 0.0)
            total += std::pow(f[j], p) * w[j] * w.grid().measure(j);
    return total;
}

CheckReport weak_type_ratio(const RadialModel& model, const Weight& w, double p, const RadialFunction& f,
                            const std::vector<double>& lambda_grid)
{
    CheckReport rep;
    rep.id = "weak-type";
    rep.meta = window_meta(model);
    rep.meta["p"] = p;
    rep.meta["weight"] = w.label();
    const double den = lp_norm_p(w, f, p);
    if (den == 0.0) {
        rep.meta["zero_function"] = true;
        return rep;
    }
    const RadialFunction mf = maximal_dis(model, f).as_function();
    double best = 0.0;
    for (double lam : lambda_grid) {
        const double v = weak_level_term(w, mf, p, lam);
        if (v > best) {
            best = v;
            rep.witness.lambda = lam;
        }
    }
    rep.constant = best / den;
    rep.verdict = std::isfinite(rep.constant) ? Verdict::report : Verdict::fail;
    return rep;
}

CheckReport strong_type_ratio(const RadialModel& model, const Weight& w, double p, const RadialFunction& f,
                              int cut_lo, int cut_hi)
{
    if (cut_lo < 1 || cut_hi <= cut_lo || cut_hi > model.window())
        throw RangeError("strong_type_ratio: cut range must lie inside the valid window");
    CheckReport rep;
    rep.id = "strong-type";
    rep.meta = window_meta(model);
    rep.meta["p"] = p;
    rep.meta["weight"] = w.label();
    rep.meta["cut_range"] = {cut_lo, cut_hi};
    rep.witness.j = cut_hi;
    const double den = lp_norm_p(w, f, p);
    if (den == 0.0) {
        rep.meta["zero_function"] = true;
        return rep;
    }
    const RadialFunction mf = maximal_dis(model, f).as_function();
    std::vector<double> xs, ys, partial;
    double acc = 0.0;
    for (int j = 1; j <= cut_hi; ++j) {
        acc += std::pow(mf[j], p) * w[j] * w.grid().measure(j);
        partial.push_back(acc / den);
        if (j >= cut_lo) {
            xs.push_back(j);
            ys.push_back(acc / den);
        }
    }
    rep.constant = partial.back();
    rep.fit = fit_line(xs, ys);
    rep.meta["partial_sums"] = partial;
    rep.meta["norm_p"] = den;
    return rep;
}

RadialFunction fs_majorant(const RadialModel& model, const Weight& w, double s, int k)
{
    if (s > 1.0)
        return maximal_s(model, w, s);
    if (s == 1.0)
        return iterate_maximal(model, w, k);
    throw DomainError("fs_ratio: s must be at least 1");
}

CheckReport fs_ratio(const RadialModel& model, const Weight& w, double s, const RadialFunction& f,
                     const std::vector<double>& lambda_grid, int k)
{
    CheckReport rep;
    rep.id = "fs";
    rep.meta = window_meta(model);
    rep.meta["s"] = s;
    rep.meta["k"] = k;
    rep.meta["weight"] = w.label();

    const RadialFunction G = fs_majorant(model, w, s, k);
    double den = 0.0;
    for (int j = 1; j <= model.J_max(); ++j) {
        if (f[j] == 0.0)
            continue;
        if (j > G.valid_hi)
            throw RangeError("fs_ratio: support of f leaves the window of the majorant");
        den += f[j] * G[j] * model.grid().measure(j);
    }
    rep.meta["majorant_window"] = G.valid_hi;
    if (den == 0.0) {
        rep.meta["zero_function"] = true;
        return rep;
    }
    const RadialFunction mf = maximal_dis(model, f).as_function();
    double best = 0.0;
    for (double lam : lambda_grid) {
        const double v = lam * distribution_mass(w, mf, lam);
        if (v > best) {
            best = v;
            rep.witness.lambda = lam;
        }
    }
    rep.constant = best / den;
    rep.meta["denominator"] = den;
    rep.verdict = std::isfinite(rep.constant) ? Verdict::report : Verdict::fail;
    return rep;
}

CheckReport vector_valued_ratio_tree(const TreeSpace& tree, double p, double r,
                                     const std::vector<VertexFunction>& functions)
{
    if (!(r > 1.0 && r <= p))
        throw DomainError("vector_valued_ratio: need 1 < r <= p");
    CheckReport rep;
    rep.id = "vector-valued";
    rep.meta = {{"backend", "tree"}, {"k", tree.k()}, {"depth", tree.depth()}, {"p", p}, {"r", r},
                {"count", functions.size()}};

    const auto n = static_cast<std::size_t>(tree.size());
    // A boundary-flagged value Mf_n(x) is dropped from the numerator.
    std::vector<double> mf_r(n, 0.0), f_r(n, 0.0);
    std::int64_t masked = 0;
    for (const auto& f : functions) {
        const TreeMaximal mf = tree_maximal(tree, f);
        for (std::size_t x = 0; x < n; ++x) {
            f_r[x] += std::pow(f[x], r);
            if (mf.boundary[x])
                ++masked;
            else
                mf_r[x] += std::pow(mf.values[x], r);
        }
    }
    double num = 0.0, den = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        den += std::pow(f_r[x], p / r);
        num += std::pow(mf_r[x], p / r);
    }
    rep.constant = vector_norm_ratio(num, den, p);
    rep.meta["masked_values"] = masked;
    rep.meta["total_values"] = static_cast<std::int64_t>(n * functions.size());
    if (den == 0.0)
        rep.meta["zero_function"] = true;
    return rep;
}

CheckReport vector_valued_ratio_radial(const RadialModel& model, double p, double r,
                                       const std::vector<RadialFunction>& functions)
{
    if (!(r > 1.0 && r <= p))
        throw DomainError("vector_valued_ratio: need 1 < r <= p");
    CheckReport rep;
    rep.id = "vector-valued";
    rep.meta = window_meta(model);
    rep.meta["backend"] = "radial";
    rep.meta["p"] = p;
    rep.meta["r"] = r;
    rep.meta["count"] = functions.size();

    const int J = model.J_max();
    std::vector<double> mf_r(J, 0.0), f_r(J, 0.0);
    for (const auto& f : functions) {
        const RadialFunction mf = maximal_dis(model, f).as_function();
        for (int j = 1; j <= J; ++j) {
            mf_r[j - 1] += std::pow(mf[j], r);
            f_r[j - 1] += std::pow(f[j], r);
        }
    }
    double num = 0.0, den = 0.0;
    for (int j = 1; j <= J; ++j) {
        den += std::pow(f_r[j - 1], p / r) * model.grid().measure(j);
        if (j <= model.window())
            num += std::pow(mf_r[j - 1], p / r) * model.grid().measure(j);
    }
    rep.constant = vector_norm_ratio(num, den, p);
    if (den == 0.0)
        rep.meta["zero_function"] = true;
    return rep;
}

double reevaluate_witness(const CheckReport& report, const WitnessContext& ctx)
{
    const Witness& wt = report.witness;
    auto need = [](const void* ptr, const char* what) {
        if (!ptr)
            throw DomainError(std::string("reevaluate_witness: missing ") + what);
    };
    const std::string& id = report.id;
    if (id == "vector-valued") {
        if (ctx.tree) {
            need(ctx.tree_functions, "tree functions");
            return vector_valued_ratio_tree(*ctx.tree, ctx.p, ctx.r, *ctx.tree_functions).constant;
        }
        need(ctx.model, "model");
        need(ctx.radial_functions, "radial functions");
        return vector_valued_ratio_radial(*ctx.model, ctx.p, ctx.r, *ctx.radial_functions).constant;
    }
    need(ctx.weight, "weight");
    const Weight& w = *ctx.weight;
    if (id == "ap-loc")
        return ap_loc_product(w, ctx.p, wt.t_lo, wt.t_hi);
    need(ctx.model, "model");
    const RadialModel& model = *ctx.model;
    if (id == "large-scale")
        return large_scale_ratio(model, w, ctx.p, ctx.alpha, ctx.beta, wt.N, wt.E, wt.F);
    if (id == "necessary")
        return large_scale_ratio(model, w, ctx.p, 1.0, 1.0, wt.N, wt.E, wt.F);
    if (id == "easy-check")
        return easy_check_term(model, w, ctx.p, ctx.eta, wt.N, wt.i, wt.j);
    if (id == "msw")
        return maximal_s(model, w, ctx.s)[wt.i] / w[wt.i];
    if (id == "classical-ap")
        return classical_ap_product(model, w, ctx.p, wt.j);

    need(ctx.f, "function");
    const RadialFunction& f = *ctx.f;
    if (id == "weak-type") {
        const double den = lp_norm_p(w, f, ctx.p);
        if (den == 0.0)
            return 0.0;
        return weak_level_term(w, maximal_dis(model, f).as_function(), ctx.p, wt.lambda) / den;
    }
    if (id == "strong-type") {
        const double den = lp_norm_p(w, f, ctx.p);
        if (den == 0.0)
            return 0.0;
        const RadialFunction mf = maximal_dis(model, f).as_function();
        double acc = 0.0;
        for (int j = 1; j <= wt.j; ++j)
            acc += std::pow(mf[j], ctx.p) * w[j] * model.grid().measure(j);
        return acc / den;
    }
    if (id == "fs") {
        const RadialFunction G = fs_majorant(model, w, ctx.s, ctx.k);
        double den = 0.0;
        for (int j = 1; j <= model.J_max(); ++j)
            if (f[j] != 0.0)
                den += f[j] * G[j] * model.grid().measure(j);
        if (den == 0.0)
            return 0.0;
        return wt.lambda * distribution_mass(w, maximal_dis(model, f).as_function(), wt.lambda) / den;
    }
    throw UnsupportedError("reevaluate_witness: unknown report id '" + id + "'");
}

nlohmann::json to_json(const CheckReport& report)
{
    auto number = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(x > 0 ? "inf" : "nan"); };
    nlohmann::json j;
    j["id"] = report.id;
    j["constant"] = number(report.constant);
    j["witness"] = {{"N", report.witness.N},         {"E", report.witness.E},
                    {"F", report.witness.F},         {"i", report.witness.i},
                    {"j", report.witness.j},         {"lambda", report.witness.lambda},
                    {"t_lo", report.witness.t_lo},   {"t_hi", report.witness.t_hi}};
    j["slope"] = report.fit ? number(report.fit->slope) : nlohmann::json(nullptr);
    j["r2"] = report.fit ? number(report.fit->r2) : nlohmann::json(nullptr);
    j["verdict"] = to_string(report.verdict);
    j["meta"] = report.meta;
    return j;
}

} // namespace nalab

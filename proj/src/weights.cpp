#include "nalab/weights.hpp"

#include "nalab/errors.hpp"
#include "nalab/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nalab {

namespace {

constexpr int kNodesPerUnit = 64;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Cubic Hermite interpolant on nodes k·h, k = 0..n−1; flat below the first
// populated node.
struct HermiteTable {
    double h = 1.0 / kNodesPerUnit;
    int first = 0;
    std::vector<double> v;
    std::vector<double> dv;

    double operator()(double t) const
    {
        const double x = t / h;
        if (x <= first)
            return v[first];
        const auto k = static_cast<std::size_t>(std::floor(x));
        if (k + 1 >= v.size()) {
            if (k < v.size() && x == static_cast<double>(k))
                return v[k];
            throw RangeError("weight profile evaluated beyond its tabulated range");
        }
        const double s = x - static_cast<double>(k);
        if (s == 0.0)
            return v[k];
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * v[k] + (s3 - 2 * s2 + s) * h * dv[k] +
               (-2 * s3 + 3 * s2) * v[k + 1] + (s3 - s2) * h * dv[k + 1];
    }
};

struct Sampled {
    std::function<double(double)> profile;
    std::vector<double> error; // per annulus
};

std::vector<double> node_grid(int first, int last)
{
    std::vector<double> g;
    for (int k = first; k <= last; ++k)
        g.push_back(static_cast<double>(k) / kNodesPerUnit);
    return g;
}

void check_accuracy(const FunctionTrace& tr, std::size_t k, const char* who)
{
    const double rel = tr.error[k] / std::abs(tr.values[k]);
    if (!(rel < 1e-8))
        throw PrecisionError(std::string(who) + ": special-function value not accurate to 1e-8");
}

Sampled spherical_u(const SpaceParams& params, double p, int J)
{
    if (!(p >= 1.0))
        throw DomainError("SphericalU: p must be at least 1");
    const double kappa = 2.0 * params.rho * (p - 1.0) + params.varrho;
    const JacobiParams jp{params.sigma, params.tau, cplx(0.0, kappa)};
    const int last = J * kNodesPerUnit;
    const auto g = node_grid(0, last);
    const FunctionTrace tr = jacobi_trace(jp, g);

    auto table = std::make_shared<HermiteTable>();
    table->v.resize(g.size());
    table->dv.resize(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        table->v[k] = tr.values[k].real();
        table->dv[k] = tr.derivatives[k].real();
    }
    Sampled out;
    for (int j = 1; j <= J; ++j) {
        const std::size_t k = static_cast<std::size_t>(j * kNodesPerUnit - kNodesPerUnit / 2);
        check_accuracy(tr, k, "SphericalU");
        out.error.push_back(tr.error[k]);
    }
    out.profile = [table](double t) { return (*table)(t); };
    return out;
}

Sampled jacobi_v(const SpaceParams& params, double gamma, int J)
{
    if (!(gamma >= -0.5 && gamma < 0.0))
        throw DomainError("JacobiV: gamma must lie in [-1/2, 0)");
    if (!(params.sigma > 0.0))
        throw DomainError("JacobiV: sigma must be positive");
    const double theta = -2.0 * params.rho * gamma - params.varrho;
    const JacobiParams jp{params.sigma, params.tau, cplx(0.0, theta)};
    const auto g = node_grid(1, J * kNodesPerUnit);
    const FunctionTrace tr = jacobi_second_trace(jp, g);

    const double two_sigma = 2.0 * params.sigma;
    auto table = std::make_shared<HermiteTable>();
    table->first = 1;
    table->v.assign(g.size() + 1, 0.0);
    table->dv.assign(g.size() + 1, 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double t = g[k];
        const double tp = std::pow(t, two_sigma);
        const double pre = tp / (1.0 + tp);
        const double dpre = two_sigma * tp / t / ((1.0 + tp) * (1.0 + tp));
        const cplx phi = tr.values[k];
        const double mod = std::abs(phi);
        const double dmod = mod > 0.0 ? (std::conj(phi) * tr.derivatives[k]).real() / mod : 0.0;
        table->v[k + 1] = pre * mod;
        table->dv[k + 1] = dpre * mod + pre * dmod;
    }
    Sampled out;
    for (int j = 1; j <= J; ++j) {
        const std::size_t k = static_cast<std::size_t>(j * kNodesPerUnit - kNodesPerUnit / 2) - 1;
        check_accuracy(tr, k, "JacobiV");
        const double t = g[k];
        const double tp = std::pow(t, two_sigma);
        out.error.push_back(tp / (1.0 + tp) * tr.error[k]);
    }
    out.profile = [table](double t) { return (*table)(t); };
    return out;
}

std::string fmt_param(const char* name, double x)
{
    std::ostringstream os;
    os << name << '(' << x << ')';
    return os.str();
}

} // namespace

std::string WeightSpec::name() const
{
    return std::visit(overloaded{
                          [](const weight::Constant&) { return std::string("Constant"); },
                          [](const weight::ExpRadial& w) { return fmt_param("ExpRadial", w.gamma); },
                          [](const weight::ExpStrong& w) { return fmt_param("ExpStrong", w.p); },
                          [](const weight::SphericalU& w) { return fmt_param("SphericalU", w.p); },
                          [](const weight::JacobiV& w) { return fmt_param("JacobiV", w.gamma); },
                          [](const weight::EtaProduct& w) {
                              return "EtaProduct(" + (w.base ? w.base->name() : std::string("?")) + ")";
                          },
                          [](const weight::Custom& w) { return "Custom(" + w.label + ")"; },
                      },
                      kind);
}

WeightSpec eta_product(WeightSpec base)
{
    return WeightSpec{weight::EtaProduct{std::make_shared<const WeightSpec>(std::move(base))}};
}

WeightSpec power_law(double exponent)
{
    weight::Custom c;
    c.label = fmt_param("power", exponent);
    c.profile = [exponent](double t) { return std::pow(t, exponent); };
    return WeightSpec{c};
}

Weight::Weight(std::shared_ptr<const AnnularGrid> grid, std::vector<double> values,
               std::function<double(double)> profile, std::string label)
    : error(values.size(), 0.0), grid_(std::move(grid)), values_(std::move(values)),
      profile_(std::move(profile)), label_(std::move(label))
{
    if (!grid_)
        throw DomainError("Weight: missing grid");
    if (static_cast<int>(values_.size()) != grid_->J_max())
        throw DomainError("Weight: value count does not match the grid");
    for (std::size_t j = 0; j < values_.size(); ++j)
        if (!(values_[j] > 0.0) || !std::isfinite(values_[j]))
            throw DomainError("Weight: value at annulus " + std::to_string(j + 1) + " is not positive and finite");
}

double Weight::profile(double t) const
{
    if (!profile_)
        throw UnsupportedError("weight '" + label_ + "' has no continuum profile");
    return profile_(t);
}

Weight materialize(const WeightSpec& spec, std::shared_ptr<const AnnularGrid> grid)
{
    if (!grid)
        throw DomainError("materialize: missing grid");
    const SpaceParams& params = grid->params();
    const double rho = params.rho;
    const int J = grid->J_max();

    auto from_profile = [&](std::function<double(double)> profile, std::vector<double> error = {}) {
        std::vector<double> values(J);
        for (int j = 1; j <= J; ++j)
            values[j - 1] = profile(grid->midpoint(j));
        Weight w(grid, std::move(values), std::move(profile), spec.name());
        if (!error.empty())
            w.error = std::move(error);
        return w;
    };

    return std::visit(
        overloaded{
            [&](const weight::Constant&) { return from_profile([](double) { return 1.0; }); },
            [&](const weight::ExpRadial& w) {
                const double g = w.gamma;
                return from_profile([rho, g](double t) { return std::exp(2.0 * rho * g * t); });
            },
            [&](const weight::ExpStrong& w) {
                if (!(w.p >= 1.0))
                    throw DomainError("ExpStrong: p must be at least 1");
                const double e = 2.0 * rho * (w.p - 1.0);
                return from_profile([e](double t) { return std::exp(e * t); });
            },
            [&](const weight::SphericalU& w) {
                Sampled s = spherical_u(params, w.p, J);
                return from_profile(std::move(s.profile), std::move(s.error));
            },
            [&](const weight::JacobiV& w) {
                Sampled s = jacobi_v(params, w.gamma, J);
                return from_profile(std::move(s.profile), std::move(s.error));
            },
            [&](const weight::EtaProduct& w) {
                if (!w.base)
                    throw DomainError("EtaProduct: missing base weight");
                const Weight base = materialize(*w.base, grid);
                std::vector<double> values(J), error(J);
                for (int j = 1; j <= J; ++j) {
                    const double eta = std::exp(1.0 / (1.0 + grid->midpoint(j)));
                    values[j - 1] = base[j] * eta;
                    error[j - 1] = base.error[j - 1] * eta;
                }
                std::function<double(double)> profile;
                if (base.has_profile())
                    profile = [base](double t) { return base.profile(t) * std::exp(1.0 / (1.0 + t)); };
                Weight out(grid, std::move(values), std::move(profile), spec.name());
                out.error = std::move(error);
                return out;
            },
            [&](const weight::Custom& w) {
                if (w.profile)
                    return from_profile(w.profile);
                return Weight(grid, w.values, {}, spec.name());
            },
        },
        spec.kind);
}

double weight_mass(const Weight& w, const std::vector<int>& E)
{
    double total = 0.0;
    for (int j : E)
        total += w[j] * w.grid().measure(j);
    return total;
}

double log_weight_mass(const Weight& w, const std::vector<int>& E)
{
    if (E.empty())
        return -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    logs.reserve(E.size());
    double top = -std::numeric_limits<double>::infinity();
    for (int j : E) {
        logs.push_back(std::log(w[j]) + w.grid().log_measure(j));
        top = std::max(top, logs.back());
    }
    double acc = 0.0;
    for (double l : logs)
        acc += std::exp(l - top);
    return top + std::log(acc);
}

Weight weight_power(const Weight& w, double s)
{
    if (!(s > 0.0))
        throw DomainError("weight_power: s must be positive");
    std::vector<double> values(w.values());
    for (double& v : values)
        v = std::pow(v, s);
    std::function<double(double)> profile;
    if (w.has_profile())
        profile = [w, s](double t) { return std::pow(w.profile(t), s); };
    Weight out(w.grid_ptr(), std::move(values), std::move(profile), w.label() + "^" + std::to_string(s));
    for (std::size_t j = 0; j < out.error.size(); ++j)
        out.error[j] = s * std::pow(w.values()[j], s - 1.0) * w.error[j];
    return out;
}

} // namespace nalab

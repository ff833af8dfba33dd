#include "nalab/specfun.hpp"

#include "nalab/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace nalab {

namespace {

namespace odeint = boost::numeric::odeint;

using real = long double;
using lcplx = std::complex<real>;
using State = std::array<real, 4>; // Re φ, Im φ, Re φ′, Im φ′

constexpr real kTightTol = 1e-17L;
constexpr real kLooseTol = 1e-15L;
constexpr int kMaxTerms = 2000;

struct JacobiRhs {
    real a1; // 2σ+1
    real a2; // 2τ+1
    real mu_re;
    real mu_im;

    void operator()(const State& x, State& dx, real t) const
    {
        const real th = std::tanh(t);
        const real p = a1 / th + a2 * th;
        dx[0] = x[2];
        dx[1] = x[3];
        dx[2] = -p * x[2] - (mu_re * x[0] - mu_im * x[1]);
        dx[3] = -p * x[3] - (mu_re * x[1] + mu_im * x[0]);
    }
};

JacobiRhs make_rhs(const JacobiParams& jp)
{
    const lcplx lam(jp.lambda.real(), jp.lambda.imag());
    const real vr = jp.varrho();
    const lcplx mu = lam * lam + vr * vr;
    return {2.0L * jp.sigma + 1.0L, 2.0L * jp.tau + 1.0L, mu.real(), mu.imag()};
}

State pack(lcplx v, lcplx dv)
{
    return {v.real(), v.imag(), dv.real(), dv.imag()};
}

cplx value_of(const State& x)
{
    return {static_cast<double>(x[0]), static_cast<double>(x[1])};
}

cplx derivative_of(const State& x)
{
    return {static_cast<double>(x[2]), static_cast<double>(x[3])};
}

// Integrates from times.front() (state x0) through the remaining times,
// which must be monotone in one direction.
std::vector<State> integrate_through(const JacobiRhs& rhs, State x0, const std::vector<real>& times, real tol)
{
    std::vector<State> out;
    out.reserve(times.size());
    if (times.size() == 1) {
        out.push_back(x0);
        return out;
    }
    auto stepper = odeint::make_controlled(tol * 1e-12L, tol, odeint::runge_kutta_fehlberg78<State, real>());
    const real span = times.back() - times.front();
    const real dt0 = std::copysign(std::min<real>(1e-5L, std::abs(span) / 10), span);
    odeint::integrate_times(stepper, rhs, x0, times.begin(), times.end(), dt0,
                            [&out](const State& x, real) { out.push_back(x); });
    return out;
}

// Taylor data of φ at t₀: compose F(a,b;c;z) with z = −sinh²t as power
// series in u = t², six terms.
State taylor_start(const JacobiParams& jp, real t0)
{
    constexpr int n_terms = 6;
    const lcplx il = lcplx(0, 1) * lcplx(jp.lambda.real(), jp.lambda.imag());
    const real vr = jp.varrho();
    const lcplx a = (vr + il) / 2.0L;
    const lcplx b = (vr - il) / 2.0L;
    const lcplx c = jp.sigma + 1.0L;

    // z(u) = −Σ_{n≥1} 2^{2n−1} uⁿ / (2n)!
    std::array<lcplx, n_terms> z{};
    real fact = 1.0L;
    for (int n = 1; n < n_terms; ++n) {
        fact *= (2.0L * n - 1.0L) * (2.0L * n);
        z[n] = -std::ldexp(1.0L, 2 * n - 1) / fact;
    }

    std::array<lcplx, n_terms> coeff{};
    std::array<lcplx, n_terms> power{};
    power[0] = 1.0L;
    lcplx fk = 1.0L;
    for (int k = 0; k < n_terms; ++k) {
        for (int n = 0; n < n_terms; ++n)
            coeff[n] += fk * power[n];
        // power ← power · z, truncated
        std::array<lcplx, n_terms> next{};
        for (int i = 0; i < n_terms; ++i)
            for (int j = 1; i + j < n_terms; ++j)
                next[i + j] += power[i] * z[j];
        power = next;
        fk *= (a + real(k)) * (b + real(k)) / ((c + real(k)) * real(k + 1));
    }

    lcplx v = 0.0L, dv = 0.0L;
    const real u = t0 * t0;
    for (int n = n_terms - 1; n >= 0; --n)
        v = v * u + coeff[n];
    for (int n = n_terms - 1; n >= 1; --n)
        dv = dv * u + real(2 * n) * coeff[n];
    dv *= t0; // Σ 2n c_n t^{2n−1}
    return pack(v, dv);
}

struct PointValue {
    cplx value;
    cplx derivative;
    double error;
};

PointValue phi_series_point(const JacobiParams& jp, double t)
{
    if (t == 0.0)
        return {1.0, 0.0, 0.0};
    const cplx il = cplx(0, 1) * jp.lambda;
    const double vr = jp.varrho();
    const cplx a = (vr + il) / 2.0;
    const cplx b = (vr - il) / 2.0;
    const cplx c = jp.sigma + 1.0;
    const double sh = std::sinh(t);
    const cplx z = -sh * sh;
    const SeriesValue f = hyp2f1(a, b, c, z);
    const SeriesValue df = hyp2f1(a + 1.0, b + 1.0, c + 1.0, z);
    const cplx deriv = a * b / c * df.value * (-2.0 * sh * std::cosh(t));
    return {f.value, deriv, f.error};
}

PointValue phi_second_series_point(const JacobiParams& jp, double t)
{
    const cplx il = cplx(0, 1) * jp.lambda;
    const double vr = jp.varrho();
    const cplx a = (vr - il) / 2.0;
    const cplx b = (jp.sigma - jp.tau + 1.0 - il) / 2.0;
    const cplx c = 1.0 - il;
    const double ch = std::cosh(t);
    const double z = 1.0 / (ch * ch);
    const double log2ch = t + std::log1p(std::exp(-2.0 * t));
    const cplx pre = std::exp((il - vr) * log2ch);
    const SeriesValue f = hyp2f1(a, b, c, z);
    const SeriesValue df = hyp2f1(a + 1.0, b + 1.0, c + 1.0, z);
    const double th = std::tanh(t);
    const cplx value = pre * f.value;
    const cplx deriv = (il - vr) * th * value + pre * (a * b / c) * df.value * (-2.0 * z * th);
    return {value, deriv, std::abs(pre) * f.error};
}

void check_grid(std::span<const double> grid, double lower, const char* who)
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= lower) || !std::isfinite(grid[i]))
            throw DomainError(std::string(who) + ": grid values out of domain");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError(std::string(who) + ": grid must be strictly increasing");
    }
}

void check_second_pole(const JacobiParams& jp)
{
    const double im = jp.lambda.imag();
    if (jp.lambda.real() == 0.0 && std::nearbyint(im) == im)
        throw PoleError("jacobi_phi_second: lambda lies on i·Z");
}

} // namespace

void JacobiParams::validate() const
{
    if (!(tau > -0.5) || !(sigma >= tau))
        throw DomainError("JacobiParams: need sigma >= tau > -1/2");
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw DomainError("JacobiParams: lambda must be finite");
}

std::string_view to_string(TraceMethod m)
{
    switch (m) {
    case TraceMethod::series: return "series";
    case TraceMethod::ode: return "ode";
    case TraceMethod::second_solution: return "second-solution";
    }
    return "unknown";
}

SeriesValue hyp2f1(cplx a, cplx b, cplx c, cplx z)
{
    if (std::abs(z) > 0.9)
        throw DomainError("hyp2f1: |z| > 0.9; use ODE continuation");
    if (c.imag() == 0.0 && c.real() <= 0.0 && std::nearbyint(c.real()) == c.real())
        throw PoleError("hyp2f1: c is a nonpositive integer");

    cplx sum = 1.0, term = 1.0;
    double abs_sum = 1.0;
    int small = 0;
    int n = 0;
    for (; n < kMaxTerms; ++n) {
        term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * z;
        sum += term;
        abs_sum += std::abs(term);
        if (term == 0.0)
            break;
        small = std::abs(term) <= 1e-17 * std::abs(sum) ? small + 1 : 0;
        if (small >= 2)
            break;
    }
    const double az = std::abs(z);
    const double tail = term == 0.0 ? 0.0 : std::abs(term) * az / (1.0 - az);
    const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
    return {sum, tail + rounding, n + 1};
}

cplx jacobi_phi_series(const JacobiParams& jp, double t)
{
    jp.validate();
    if (t < 0.0)
        throw DomainError("jacobi_phi_series: t must be nonnegative");
    return phi_series_point(jp, t).value;
}

cplx jacobi_phi_ode(const JacobiParams& jp, double t)
{
    jp.validate();
    if (!(t >= kTaylorStart))
        throw DomainError("jacobi_phi_ode: t must be at least the Taylor start");
    const std::vector<real> times{kTaylorStart, t};
    return value_of(integrate_through(make_rhs(jp), taylor_start(jp, kTaylorStart), times, kTightTol).back());
}

FunctionTrace jacobi_trace(const JacobiParams& jp, std::span<const double> t_grid)
{
    jp.validate();
    check_grid(t_grid, 0.0, "jacobi_trace");

    FunctionTrace tr;
    const std::size_t n = t_grid.size();
    tr.t.assign(t_grid.begin(), t_grid.end());
    tr.values.resize(n);
    tr.derivatives.resize(n);
    tr.error.resize(n);
    tr.method.resize(n);

    std::vector<real> times{kTaylorStart};
    std::size_t first_ode = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (t_grid[i] <= kSeriesSwitch) {
            const PointValue pv = phi_series_point(jp, t_grid[i]);
            tr.values[i] = pv.value;
            tr.derivatives[i] = pv.derivative;
            tr.error[i] = pv.error;
            tr.method[i] = TraceMethod::series;
        } else {
            if (first_ode == n)
                first_ode = i;
            times.push_back(t_grid[i]);
        }
    }
    if (first_ode == n)
        return tr;

    const JacobiRhs rhs = make_rhs(jp);
    const State x0 = taylor_start(jp, kTaylorStart);
    const auto tight = integrate_through(rhs, x0, times, kTightTol);
    const auto loose = integrate_through(rhs, x0, times, kLooseTol);
    for (std::size_t i = first_ode; i < n; ++i) {
        const std::size_t k = i - first_ode + 1;
        tr.values[i] = value_of(tight[k]);
        tr.derivatives[i] = derivative_of(tight[k]);
        tr.error[i] = std::abs(value_of(loose[k]) - tr.values[i]) +
                      std::numeric_limits<double>::epsilon() * std::abs(tr.values[i]);
        tr.method[i] = TraceMethod::ode;
    }
    return tr;
}

cplx jacobi_phi(const JacobiParams& jp, double t)
{
    const double g[] = {t};
    return jacobi_trace(jp, g).values.front();
}

FunctionTrace jacobi_second_trace(const JacobiParams& jp, std::span<const double> t_grid)
{
    jp.validate();
    check_second_pole(jp);
    check_grid(t_grid, std::numeric_limits<double>::min(), "jacobi_second_trace");

    FunctionTrace tr;
    const std::size_t n = t_grid.size();
    tr.t.assign(t_grid.begin(), t_grid.end());
    tr.values.resize(n);
    tr.derivatives.resize(n);
    tr.error.resize(n);
    tr.method.assign(n, TraceMethod::second_solution);

    // Points below the switch, visited outward-in from the switch.
    std::vector<real> times{kSecondSwitch};
    for (std::size_t i = n; i-- > 0;) {
        if (t_grid[i] >= kSecondSwitch) {
            const PointValue pv = phi_second_series_point(jp, t_grid[i]);
            tr.values[i] = pv.value;
            tr.derivatives[i] = pv.derivative;
            tr.error[i] = pv.error;
        } else {
            times.push_back(t_grid[i]);
        }
    }
    if (times.size() == 1)
        return tr;

    const PointValue start = phi_second_series_point(jp, kSecondSwitch);
    const State x0 = pack(lcplx(start.value.real(), start.value.imag()),
                          lcplx(start.derivative.real(), start.derivative.imag()));
    const JacobiRhs rhs = make_rhs(jp);
    const auto tight = integrate_through(rhs, x0, times, kTightTol);
    const auto loose = integrate_through(rhs, x0, times, kLooseTol);
    // times[k] for k ≥ 1 are the small-t grid points in decreasing order.
    std::size_t k = 1;
    for (std::size_t i = n; i-- > 0;) {
        if (t_grid[i] >= kSecondSwitch)
            continue;
        tr.values[i] = value_of(tight[k]);
        tr.derivatives[i] = derivative_of(tight[k]);
        const double start_rel = start.error / std::max(std::abs(start.value), 1e-300);
        tr.error[i] = std::abs(value_of(loose[k]) - tr.values[i]) +
                      (start_rel + std::numeric_limits<double>::epsilon()) * std::abs(tr.values[i]);
        ++k;
    }
    return tr;
}

cplx jacobi_phi_second(const JacobiParams& jp, double t)
{
    if (!(t > 0.0))
        throw DomainError("jacobi_phi_second: t must be positive");
    const double g[] = {t};
    return jacobi_second_trace(jp, g).values.front();
}

double ode_residual(const FunctionTrace& trace, const JacobiParams& jp)
{
    jp.validate();
    const std::size_t n = trace.size();
    if (n < 5 || trace.values.size() != n)
        throw DomainError("ode_residual: need at least 5 trace points");
    if (!(trace.t.front() > 0.05))
        throw DomainError("ode_residual: trace must start above t = 0.05");
    const double h = trace.t[1] - trace.t[0];
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(trace.t[i] - trace.t[i - 1] - h) > 1e-6 * h)
            throw DomainError("ode_residual: trace grid is not uniform");
    if (h > 0.05)
        throw PrecisionError("ode_residual: grid step above 0.05 is too coarse");

    const double a1 = 2.0 * jp.sigma + 1.0;
    const double a2 = 2.0 * jp.tau + 1.0;
    const double vr = jp.varrho();
    const cplx mu = jp.lambda * jp.lambda + vr * vr;
    const auto& f = trace.values;

    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const cplx d1 = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
        const cplx d2 = (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) / (12.0 * h * h);
        const double t = trace.t[i];
        const double p = a1 / std::tanh(t) + a2 * std::tanh(t);
        const double r = std::abs(d2 + p * d1 + mu * f[i]) / std::max(1.0, std::abs(f[i]));
        worst = std::max(worst, r);
    }
    return worst;
}

std::vector<double> uniform_grid(double lo, double hi, double h)
{
    if (!(h > 0.0) || !(hi >= lo))
        throw DomainError("uniform_grid: need h > 0 and hi >= lo");
    const auto steps = static_cast<std::size_t>(std::llround((hi - lo) / h));
    std::vector<double> g(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        g[i] = lo + static_cast<double>(i) * h;
    return g;
}

ResidualRefinement residual_refinement(const JacobiParams& jp, double t_lo, double t_hi, double h)
{
    const auto coarse_grid = uniform_grid(t_lo, t_hi, h);
    const auto fine_grid = uniform_grid(t_lo, t_hi, h / 2.0);
    ResidualRefinement out;
    out.coarse = ode_residual(jacobi_trace(jp, coarse_grid), jp);
    out.fine = ode_residual(jacobi_trace(jp, fine_grid), jp);
    out.ratio = out.fine > 0.0 ? out.coarse / out.fine : std::numeric_limits<double>::infinity();
    return out;
}

FunctionTrace spherical_profile(const SpaceParams& params, cplx lambda, std::span<const double> d_grid)
{
    std::vector<double> half(d_grid.begin(), d_grid.end());
    for (double& d : half)
        d /= 2.0;
    const JacobiParams jp{params.sigma, params.tau, 2.0 * lambda};
    FunctionTrace tr = jacobi_trace(jp, half);
    tr.t.assign(d_grid.begin(), d_grid.end());
    for (cplx& d : tr.derivatives)
        d /= 2.0;
    return tr;
}

} // namespace nalab

#include "nalab/geometry.hpp"

#include "nalab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nalab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double integrate_density(const SpaceParams& params, double a, double b)
{
    if (b <= a)
        return 0.0;
    auto f = [&params](double t) { return density(params, t); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

} // namespace

SpaceParams SpaceParams::from_dimensions(int m, int k)
{
    if (m <= 0 || m % 2 != 0)
        throw DomainError("SpaceParams: m must be a positive even integer, got " + std::to_string(m));
    if (k < 1)
        throw DomainError("SpaceParams: k must be at least 1 (k = 0 gives tau = -1/2)");

    SpaceParams p;
    p.m = m;
    p.k = k;
    p.dimensional = true;
    p.sigma = (m + k - 1) / 2.0;
    p.tau = (k - 1) / 2.0;
    p.Q = m / 2.0 + k;
    p.rho = p.Q / 2.0;
    p.ell = m + k + 1;
    p.varrho = p.sigma + p.tau + 1.0;
    return p;
}

SpaceParams SpaceParams::from_jacobi(double sigma, double tau)
{
    if (!(tau > -0.5) || !(sigma >= tau))
        throw DomainError("SpaceParams: need sigma >= tau > -1/2");

    SpaceParams p;
    p.sigma = sigma;
    p.tau = tau;
    p.varrho = sigma + tau + 1.0;
    p.Q = p.varrho;
    p.rho = p.varrho / 2.0;
    p.ell = 2.0 * sigma + 2.0;
    return p;
}

double log_density(const SpaceParams& params, double t)
{
    if (t <= 0.0)
        return kNegInf;
    // log(2 sinh(t/2)) and log cosh(t/2) without overflow for large t.
    const double log_sinh2 = t / 2.0 + std::log1p(-std::exp(-t));
    const double log_cosh = t / 2.0 + std::log1p(std::exp(-t)) - std::log(2.0);
    return (2.0 * params.sigma + 1.0) * log_sinh2 + (2.0 * params.tau + 1.0) * log_cosh;
}

double density(const SpaceParams& params, double t)
{
    if (t < 0.0)
        throw DomainError("density: t must be nonnegative");
    if (t == 0.0)
        return 0.0;
    if (t < 1.0)
        return std::pow(2.0 * std::sinh(t / 2.0), 2.0 * params.sigma + 1.0) *
               std::pow(std::cosh(t / 2.0), 2.0 * params.tau + 1.0);
    return std::exp(log_density(params, t));
}

double volume(const SpaceParams& params, double r, double subinterval)
{
    if (r < 0.0)
        throw DomainError("volume: r must be nonnegative");
    if (!(subinterval > 0.0))
        throw DomainError("volume: subinterval width must be positive");

    double total = 0.0;
    for (double a = 0.0; a < r; a += subinterval)
        total += integrate_density(params, a, std::min(a + subinterval, r));
    return total;
}

double ball_intersection(const SpaceParams& params, double s, double t, double d)
{
    if (!(s > 0.0) || !(t > 0.0) || d < 0.0)
        throw DomainError("ball_intersection: need s, t > 0 and d >= 0");
    if (d >= s + t)
        return 0.0;
    return std::min({volume(params, s), volume(params, t), std::exp(params.rho * (s + t - d))});
}

AnnularGrid::AnnularGrid(const SpaceParams& params, int J_max)
    : params_(params), J_max_(J_max)
{
    if (J_max < 1)
        throw DomainError("AnnularGrid: J_max must be positive");

    measures_.resize(J_max);
    volumes_.resize(J_max + 1);
    volumes_[0] = 0.0;
    for (int j = 1; j <= J_max; ++j) {
        measures_[j - 1] = integrate_density(params, j - 1.0, j);
        volumes_[j] = volumes_[j - 1] + measures_[j - 1];
        if (!std::isfinite(volumes_[j]) || !(measures_[j - 1] > 0.0))
            throw RangeError("AnnularGrid: annulus measure overflows at j = " + std::to_string(j));
    }
}

void AnnularGrid::check(int j) const
{
    if (j < 1 || j > J_max_)
        throw RangeError("annulus index " + std::to_string(j) + " outside 1.." + std::to_string(J_max_));
}

double AnnularGrid::measure(int j) const
{
    check(j);
    return measures_[j - 1];
}

double AnnularGrid::log_measure(int j) const
{
    return std::log(measure(j));
}

double AnnularGrid::ball_volume(int N) const
{
    if (N < 0 || N > J_max_)
        throw RangeError("ball_volume: radius " + std::to_string(N) + " outside 0.." + std::to_string(J_max_));
    return volumes_[N];
}

double AnnularGrid::log_ball_volume(int N) const
{
    return std::log(ball_volume(N));
}

double annular_intersection(const AnnularGrid& grid, int j, int N, double D)
{
    if (j < 1 || j > grid.J_max())
        throw RangeError("annular_intersection: annulus index out of range");
    if (N < 1)
        throw RangeError("annular_intersection: N must be positive");
    if (!(D > 0.0))
        throw DomainError("annular_intersection: D must be positive");

    if (j - 1 >= D + N || D >= j + N)
        return 0.0;
    const double vN = N <= grid.J_max() ? grid.ball_volume(N) : volume(grid.params(), N);
    return std::min({grid.measure(j), vN, std::exp(grid.params().rho * (N + j - D))});
}

int ProductKernel::band_lo(int i) const
{
    return std::max(1, i - N_ - 1);
}

int ProductKernel::band_hi(int i) const
{
    return std::min(J_max_, i + N_ + 1);
}

double ProductKernel::log_entry(int i, int j) const
{
    if (i < 1 || i > J_max_ || j < 1 || j > J_max_)
        throw RangeError("ProductKernel: index out of range");
    if (std::abs(i - j) > N_ + 1)
        return kNegInf;
    return log_p_[static_cast<std::size_t>(i - 1) * width_ + (j - i + N_ + 1)];
}

double ProductKernel::entry(int i, int j) const
{
    return std::exp(log_entry(i, j));
}

double ProductKernel::averaging(int i, int j) const
{
    if (i < 1 || i > J_max_ || j < 1 || j > J_max_)
        throw RangeError("ProductKernel: index out of range");
    if (std::abs(i - j) > N_ + 1)
        return 0.0;
    return k_[static_cast<std::size_t>(i - 1) * width_ + (j - i + N_ + 1)];
}

std::vector<double> ProductKernel::apply(const std::vector<double>& f) const
{
    if (static_cast<int>(f.size()) != J_max_)
        throw RangeError("ProductKernel::apply: function length does not match the grid");
    std::vector<double> out(J_max_, 0.0);
    for (int i = 1; i <= J_max_; ++i) {
        const double* row = &k_[static_cast<std::size_t>(i - 1) * width_];
        double acc = 0.0;
        for (int j = band_lo(i); j <= band_hi(i); ++j)
            acc += row[j - i + N_ + 1] * f[j - 1];
        out[i - 1] = acc;
    }
    return out;
}

ProductKernel product_kernel(const AnnularGrid& grid, int N, const KernelOptions& options)
{
    const int J = grid.J_max();
    if (options.N_max < 1 || options.N_max > J - 1)
        throw RangeError("product_kernel: N_max must lie in 1..J_max-1");
    if (N < 1 || N > options.N_max)
        throw RangeError("product_kernel: scale N = " + std::to_string(N) + " outside 1..N_max");
    const int window = J - options.N_max - 1;
    if (window < 1)
        throw RangeError("product_kernel: empty valid window");

    ProductKernel kern;
    kern.N_ = N;
    kern.J_max_ = J;
    kern.width_ = 2 * N + 3;
    kern.log_p_.assign(static_cast<std::size_t>(J) * kern.width_, kNegInf);
    kern.k_.assign(static_cast<std::size_t>(J) * kern.width_, 0.0);

    const double rho = grid.params().rho;
    const double lv = grid.log_ball_volume(N);
    std::vector<double> lm(J);
    for (int j = 1; j <= J; ++j)
        lm[j - 1] = grid.log_measure(j);

    std::vector<double> row_sums(J, 0.0);
    for (int i = 1; i <= J; ++i) {
        for (int j = kern.band_lo(i); j <= kern.band_hi(i); ++j) {
            const std::size_t at = static_cast<std::size_t>(i - 1) * kern.width_ + (j - i + N + 1);
            const double lp = std::min({lm[i - 1] + lm[j - 1], lm[i - 1] + lv, lm[j - 1] + lv,
                                        rho * (N + i + j)});
            kern.log_p_[at] = lp;
            kern.k_[at] = std::exp(lp - lv - lm[i - 1]);
            row_sums[i - 1] += kern.k_[at];
        }
    }

    std::vector<double> window_rows(row_sums.begin(), row_sums.begin() + window);
    switch (options.normalization) {
    case Normalization::none:
        kern.scale_ = 1.0;
        break;
    case Normalization::peak:
        kern.scale_ = *std::max_element(window_rows.begin(), window_rows.end());
        break;
    case Normalization::median: {
        auto mid = window_rows.begin() + window_rows.size() / 2;
        std::nth_element(window_rows.begin(), mid, window_rows.end());
        kern.scale_ = *mid;
        break;
    }
    }

    const double log_scale = std::log(kern.scale_);
    for (std::size_t at = 0; at < kern.k_.size(); ++at) {
        kern.k_[at] /= kern.scale_;
        kern.log_p_[at] -= log_scale;
    }

    if (options.exact_mass) {
        for (int i = 1; i <= J; ++i) {
            const double deficit = 1.0 - row_sums[i - 1] / kern.scale_;
            if (deficit <= 0.0)
                continue;
            const std::size_t at = static_cast<std::size_t>(i - 1) * kern.width_ + (N + 1);
            kern.k_[at] += deficit;
            kern.log_p_[at] = std::log(kern.k_[at]) + lv + lm[i - 1];
        }
    }
    return kern;
}

} // namespace nalab

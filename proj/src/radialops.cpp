#include "nalab/radialops.hpp"

#include "nalab/errors.hpp"

#include <cmath>
#include <string>

namespace nalab {

RadialModel::RadialModel(std::shared_ptr<const AnnularGrid> grid, const KernelOptions& options)
    : grid_(std::move(grid)), options_(options)
{
    if (!grid_)
        throw DomainError("RadialModel: missing grid");
    kernels_.reserve(options.N_max);
    for (int N = 1; N <= options.N_max; ++N)
        kernels_.push_back(product_kernel(*grid_, N, options));
}

RadialModel::RadialModel(const SpaceParams& params, int J_max, const KernelOptions& options)
    : RadialModel(std::make_shared<const AnnularGrid>(params, J_max), options)
{
}

const ProductKernel& RadialModel::kernel(int N) const
{
    if (N < 1 || N > N_max())
        throw RangeError("RadialModel: scale " + std::to_string(N) + " outside 1..N_max");
    return kernels_[N - 1];
}

RadialFunction radial_function(const RadialModel& model, std::vector<double> values)
{
    if (static_cast<int>(values.size()) != model.J_max())
        throw RangeError("radial_function: value count does not match the grid");
    for (double& v : values) {
        if (!std::isfinite(v))
            throw DomainError("radial_function: values must be finite");
        v = std::abs(v);
    }
    return {std::move(values), model.J_max()};
}

RadialFunction indicator(const RadialModel& model, int j)
{
    if (j < 1 || j > model.J_max())
        throw RangeError("indicator: annulus index out of range");
    std::vector<double> v(model.J_max(), 0.0);
    v[j - 1] = 1.0;
    return {std::move(v), model.J_max()};
}

RadialFunction from_weight(const Weight& w)
{
    return {w.values(), w.grid().J_max()};
}

RadialFunction avg(const RadialModel& model, const RadialFunction& f, int N)
{
    const ProductKernel& K = model.kernel(N);
    const int hi = std::min(model.window(), f.valid_hi - model.N_max() - 1);
    if (hi < 1)
        throw RangeError("avg: valid window exhausted");
    return {K.apply(f.values), hi};
}

MaximalResult maximal_dis(const RadialModel& model, const RadialFunction& f)
{
    MaximalResult out;
    out.N_max = model.N_max();
    out.values.assign(model.J_max(), 0.0);
    out.argmax.assign(model.J_max(), 1);
    for (int N = 1; N <= model.N_max(); ++N) {
        const RadialFunction a = avg(model, f, N);
        out.valid_hi = a.valid_hi;
        for (int i = 0; i < model.J_max(); ++i) {
            if (N == 1 || a.values[i] > out.values[i]) {
                out.values[i] = a.values[i];
                out.argmax[i] = N;
            }
        }
    }
    return out;
}

RadialFunction maximal_s(const RadialModel& model, const Weight& w, double s)
{
    if (!(s > 1.0))
        throw DomainError("maximal_s: s must exceed 1");
    RadialFunction ws = from_weight(weight_power(w, s));
    RadialFunction m = maximal_dis(model, ws).as_function();
    for (double& v : m.values)
        v = std::pow(v, 1.0 / s);
    return m;
}

RadialFunction iterate_maximal(const RadialModel& model, const Weight& w, int k)
{
    if (k < 1)
        throw DomainError("iterate_maximal: k must be positive");
    RadialFunction g = from_weight(w);
    for (int pass = 0; pass < k; ++pass)
        g = maximal_dis(model, g).as_function();
    return g;
}

double distribution_mass(const Weight& w, const RadialFunction& g, double lambda)
{
    if (!(lambda > 0.0))
        throw DomainError("distribution_mass: lambda must be positive");
    double total = 0.0;
    for (int j = 1; j <= g.valid_hi; ++j)
        if (g[j] > lambda)
            total += w[j] * w.grid().measure(j);
    return total;
}

} // namespace nalab

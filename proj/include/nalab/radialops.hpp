#pragma once

#include "nalab/geometry.hpp"
#include "nalab/weights.hpp"

#include <memory>
#include <vector>

namespace nalab {

// Annular grid plus the product kernels P_1..P_{N_max}.
class RadialModel {
public:
    RadialModel(std::shared_ptr<const AnnularGrid> grid, const KernelOptions& options);
    RadialModel(const SpaceParams& params, int J_max, const KernelOptions& options);

    const AnnularGrid& grid() const { return *grid_; }
    std::shared_ptr<const AnnularGrid> grid_ptr() const { return grid_; }
    const KernelOptions& options() const { return options_; }
    int J_max() const { return grid_->J_max(); }
    int N_max() const { return options_.N_max; }
    // Rows i ≤ window() see their whole band inside the grid.
    int window() const { return J_max() - N_max() - 1; }
    const ProductKernel& kernel(int N) const;

private:
    std::shared_ptr<const AnnularGrid> grid_;
    KernelOptions options_;
    std::vector<ProductKernel> kernels_;
};

// Nonnegative values on annuli 1..J_max; entries above valid_hi are
// computed but not trustworthy.
struct RadialFunction {
    std::vector<double> values;
    int valid_hi = 0;

    double operator[](int j) const { return values.at(j - 1); }
};

RadialFunction radial_function(const RadialModel& model, std::vector<double> values);
RadialFunction indicator(const RadialModel& model, int j);
RadialFunction from_weight(const Weight& w);

struct MaximalResult {
    std::vector<double> values;
    std::vector<int> argmax; // smallest N attaining the max
    int N_max = 0;
    int valid_lo = 1;
    int valid_hi = 0;

    RadialFunction as_function() const { return {values, valid_hi}; }
};

RadialFunction avg(const RadialModel& model, const RadialFunction& f, int N);
MaximalResult maximal_dis(const RadialModel& model, const RadialFunction& f);
// (M^dis(w^s))^{1/s}
RadialFunction maximal_s(const RadialModel& model, const Weight& w, double s);
// M^dis applied k times; each pass shrinks the window by N_max + 1.
RadialFunction iterate_maximal(const RadialModel& model, const Weight& w, int k);

// Σ_{j ≤ valid_hi, g_j > λ} w_j |Ω_j|.
double distribution_mass(const Weight& w, const RadialFunction& g, double lambda);

} // namespace nalab

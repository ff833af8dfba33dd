#pragma once

#include "nalab/geometry.hpp"

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace nalab {

struct WeightSpec;

namespace weight {

struct Constant {};
// e^{2ργ d}
struct ExpRadial { double gamma = 0.0; };
// e^{2ρ(p−1) d}
struct ExpStrong { double p = 2.0; };
// φ_{iκ}(d) with κ = 2ρ(p−1)+ϱ
struct SphericalU { double p = 2.0; };
// d^{2σ}/(1+d^{2σ}) |Φ_{iθ}(d)| with θ = −2ργ−ϱ
struct JacobiV { double gamma = -0.25; };
// base · e^{1/(1+d)}
struct EtaProduct { std::shared_ptr<const WeightSpec> base; };
// Either a continuum profile or raw annulus values (then no profile).
struct Custom {
    std::string label;
    std::function<double(double)> profile;
    std::vector<double> values;
};

} // namespace weight

struct WeightSpec {
    std::variant<weight::Constant, weight::ExpRadial, weight::ExpStrong, weight::SphericalU,
                 weight::JacobiV, weight::EtaProduct, weight::Custom>
        kind;

    std::string name() const;
};

WeightSpec eta_product(WeightSpec base);
WeightSpec power_law(double exponent); // Custom profile t ↦ t^exponent

class Weight {
public:
    Weight(std::shared_ptr<const AnnularGrid> grid, std::vector<double> values,
           std::function<double(double)> profile = {}, std::string label = {});

    const AnnularGrid& grid() const { return *grid_; }
    std::shared_ptr<const AnnularGrid> grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](int j) const { return values_.at(j - 1); } // 1-based
    bool has_profile() const { return static_cast<bool>(profile_); }
    double profile(double t) const;
    const std::string& label() const { return label_; }

    // Per-annulus absolute error bound of the sampled value (0 for closed forms).
    std::vector<double> error;

private:
    std::shared_ptr<const AnnularGrid> grid_;
    std::vector<double> values_;
    std::function<double(double)> profile_;
    std::string label_;
};

// w_j = profile(D_j); special-function weights are tabulated on a 1/64 grid
// with cubic Hermite interpolation between nodes.
Weight materialize(const WeightSpec& spec, std::shared_ptr<const AnnularGrid> grid);

// Σ_{j∈E} w_j |Ω_j|.
double weight_mass(const Weight& w, const std::vector<int>& E);
// log w(E) by log-sum-exp; −∞ for empty E.
double log_weight_mass(const Weight& w, const std::vector<int>& E);

Weight weight_power(const Weight& w, double s);

} // namespace nalab

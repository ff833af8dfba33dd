#pragma once

#include "nalab/geometry.hpp"

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace nalab {

using cplx = std::complex<double>;

struct JacobiParams {
    double sigma = 0.0;
    double tau = 0.0;
    cplx lambda{0.0, 0.0};

    double varrho() const { return sigma + tau + 1.0; }
    void validate() const; // σ ≥ τ > −1/2
};

struct SeriesValue {
    cplx value;
    double error = 0.0; // absolute
    int terms = 0;
};

// Gauss series for ₂F₁(a,b;c;z), |z| ≤ 0.9.
SeriesValue hyp2f1(cplx a, cplx b, cplx c, cplx z);

enum class TraceMethod { series, ode, second_solution };
std::string_view to_string(TraceMethod m);

struct FunctionTrace {
    std::vector<double> t;
    std::vector<cplx> values;
    std::vector<cplx> derivatives;
    std::vector<double> error;
    std::vector<TraceMethod> method;

    std::size_t size() const { return t.size(); }
};

inline constexpr double kSeriesSwitch = 0.6;  // φ: series below, ODE above
inline constexpr double kSecondSwitch = 0.35; // Φ: series above, ODE below
inline constexpr double kTaylorStart = 1e-3;

// φ_λ^{(σ,τ)}(t), the solution of the Jacobi equation regular at 0.
cplx jacobi_phi(const JacobiParams& jp, double t);
// Values and derivatives on a strictly increasing grid of t ≥ 0; a single
// ODE pass serves all points above the switch.
FunctionTrace jacobi_trace(const JacobiParams& jp, std::span<const double> t_grid);
// Forces one branch everywhere; used to compare the two routes.
cplx jacobi_phi_series(const JacobiParams& jp, double t);
cplx jacobi_phi_ode(const JacobiParams& jp, double t);

// Φ_λ^{(σ,τ)}(t), the solution with e^{(iλ−ϱ)t} behavior at infinity.
cplx jacobi_phi_second(const JacobiParams& jp, double t);
FunctionTrace jacobi_second_trace(const JacobiParams& jp, std::span<const double> t_grid);

// Max over interior points of the Jacobi-equation residual, derivatives by
// five-point central differences, scaled by max(1, |φ(t)|).
double ode_residual(const FunctionTrace& trace, const JacobiParams& jp);

struct ResidualRefinement {
    double coarse = 0.0;
    double fine = 0.0;
    double ratio = 0.0; // coarse / fine
};
// Residual of jacobi_trace on [t_lo, t_hi] at steps h and h/2.
ResidualRefinement residual_refinement(const JacobiParams& jp, double t_lo, double t_hi, double h);

// φ_λ(d) = φ^{(σ,τ)}_{2λ}(d/2) on a distance grid.
FunctionTrace spherical_profile(const SpaceParams& params, cplx lambda, std::span<const double> d_grid);

std::vector<double> uniform_grid(double lo, double hi, double h);

} // namespace nalab

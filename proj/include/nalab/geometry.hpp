#pragma once

#include <vector>

namespace nalab {

// Dimensional data of S = N ⋊ A together with the matching Jacobi indices.
struct SpaceParams {
    int m = 0; // dim of the first layer
    int k = 0; // dim of the centre
    bool dimensional = false; // true when built from (m, k)

    double sigma = 0.0;
    double tau = 0.0;
    double Q = 0.0;      // homogeneous dimension
    double rho = 0.0;    // Q / 2
    double ell = 0.0;    // topological dimension m + k + 1
    double varrho = 0.0; // sigma + tau + 1

    // Requires m even and positive, k ≥ 1 (k = 0 gives tau = −1/2).
    static SpaceParams from_dimensions(int m, int k);
    static SpaceParams from_jacobi(double sigma, double tau);

    // (m, k) = (2, 1): sigma = 1, tau = 0, rho = 1, ell = 4.
    static SpaceParams canonical() { return from_dimensions(2, 1); }
};

// Radial Haar density A_S(t) = (2 sinh(t/2))^{2σ+1} (cosh(t/2))^{2τ+1}.
double density(const SpaceParams& params, double t);
double log_density(const SpaceParams& params, double t);

// V(r) = ∫₀^r A_S, Gauss–Kronrod on subintervals of the given width.
double volume(const SpaceParams& params, double r, double subinterval = 1.0);

// Model |B(x,s) ∩ B(y,t)| for d(x,y) = d.
double ball_intersection(const SpaceParams& params, double s, double t, double d);

// Unit-width annuli Ω_j = B(e,j) \ B(e,j−1), j = 1..J_max.
class AnnularGrid {
public:
    AnnularGrid(const SpaceParams& params, int J_max);

    const SpaceParams& params() const { return params_; }
    int J_max() const { return J_max_; }

    // All indices are 1-based.
    double measure(int j) const;
    double log_measure(int j) const;
    double midpoint(int j) const { check(j); return j - 0.5; }

    // V(N) for 0 ≤ N ≤ J_max.
    double ball_volume(int N) const;
    double log_ball_volume(int N) const;

private:
    void check(int j) const;

    SpaceParams params_;
    int J_max_;
    std::vector<double> measures_;   // index j−1
    std::vector<double> volumes_;    // index N
};

// Model |Ω_j ∩ B(x,N)| for d(e,x) = D.
double annular_intersection(const AnnularGrid& grid, int j, int N, double D);

enum class Normalization { none, peak, median };

struct KernelOptions {
    // Window rows i ≤ J_max − N_max − 1 define the normalization scalar.
    int N_max = 25;
    Normalization normalization = Normalization::peak;
    bool exact_mass = false;
};

// Banded symmetric P_N(i,j), stored as the row-normalized averaging
// coefficients K(i,j) = P_N(i,j) / (V(N)|Ω_i|) plus log P_N for exports.
class ProductKernel {
public:
    int N() const { return N_; }
    int J_max() const { return J_max_; }
    int band_lo(int i) const;
    int band_hi(int i) const;

    // Zero outside the band.
    double entry(int i, int j) const;
    double log_entry(int i, int j) const;
    double averaging(int i, int j) const;

    // c_N; 1 when normalization is off.
    double scale() const { return scale_; }

    // Σ_j K(i,j) f_j for every row i = 1..J_max (f indexed j−1).
    std::vector<double> apply(const std::vector<double>& f) const;

private:
    friend ProductKernel product_kernel(const AnnularGrid&, int, const KernelOptions&);

    int N_ = 0;
    int J_max_ = 0;
    int width_ = 0;
    double scale_ = 1.0;
    std::vector<double> log_p_; // row-major (i−1)·width + (j − i + N + 1)
    std::vector<double> k_;
};

ProductKernel product_kernel(const AnnularGrid& grid, int N, const KernelOptions& options);

} // namespace nalab

#pragma once

#include "nalab/fit.hpp"
#include "nalab/radialops.hpp"
#include "nalab/treelab.hpp"
#include "nalab/weights.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nalab {

struct SetFamily {
    enum class Kind { singletons, dyadic_blocks, singletons_and_blocks, random_unions };

    Kind kind = Kind::singletons_and_blocks;
    std::vector<std::vector<int>> sets;
    std::uint64_t seed = 0;

    // Sets inside annuli 1..window.
    static SetFamily singletons(int window);
    static SetFamily dyadic_blocks(int window);
    static SetFamily standard(int window); // singletons plus dyadic blocks
    static SetFamily random_unions(int window, std::uint64_t seed, int count);
};

struct Witness {
    int N = 0;
    std::vector<int> E;
    std::vector<int> F;
    int i = 0;
    int j = 0;
    double lambda = 0.0;
    double t_lo = 0.0; // interval of the local condition
    double t_hi = 0.0;
};

enum class Verdict { pass, fail, report };

struct CheckReport {
    std::string id;
    double constant = 0.0;
    Witness witness;
    std::optional<LineFit> fit;
    Verdict verdict = Verdict::report;
    nlohmann::json meta = nlohmann::json::object();
};

std::string to_string(Verdict v);

// Relative change of a constant under grid refinement; pass when both are
// finite and the drift stays below the tolerance.
struct Stability {
    double coarse = 0.0;
    double fine = 0.0;
    double drift = 0.0;
    bool stable = false;
};
inline constexpr double kDriftTolerance = 0.20;
Stability stability(double coarse, double fine, double tolerance = kDriftTolerance);

// Default geometric grid λ = 2^a, a ∈ [−40, 10] in quarter steps.
std::vector<double> default_lambda_grid();

// ---- local condition -------------------------------------------------------

struct ApLocOptions {
    double sweep_step = 0.1;
    double max_length = 2.0;
};
CheckReport check_ap_loc(const Weight& w, double p, const ApLocOptions& options = {});
// Product for the interval [a, b]; +∞ when the quadrature does not converge.
double ap_loc_product(const Weight& w, double p, double a, double b);

// ---- large-scale conditions ------------------------------------------------

// Q_N^w(E,F) / (e^{2ρβN} w(E)^{α/p} w(F)^{1−α/p}), evaluated in log space.
double large_scale_ratio(const RadialModel& model, const Weight& w, double p, double alpha, double beta, int N,
                         const std::vector<int>& E, const std::vector<int>& F);
CheckReport check_large_scale(const RadialModel& model, const Weight& w, double p, double alpha, double beta,
                              const SetFamily& family);
CheckReport check_necessary(const RadialModel& model, const Weight& w, double p, const SetFamily& family);

double easy_check_term(const RadialModel& model, const Weight& w, double p, double eta, int N, int i, int j);
CheckReport check_easy_check(const RadialModel& model, const Weight& w, double p, double eta);

CheckReport check_msw(const RadialModel& model, const Weight& w, double s);

double classical_ap_product(const RadialModel& model, const Weight& w, double p, int j);
CheckReport check_classical_ap(const RadialModel& model, const Weight& w, double p, int j_lo, int j_hi);

// ---- operator inequalities ---------------------------------------------------

// λ^p w({g > λ}) for the given level.
double weak_level_term(const Weight& w, const RadialFunction& g, double p, double lambda);
double lp_norm_p(const Weight& w, const RadialFunction& f, double p);

CheckReport weak_type_ratio(const RadialModel& model, const Weight& w, double p, const RadialFunction& f,
                            const std::vector<double>& lambda_grid);
// Partial sums S(J_cut) = Σ_{j≤J_cut} (M f_j)^p w_j |Ω_j| / ‖f‖^p, with a
// linear fit over J_cut ∈ [cut_lo, cut_hi].
CheckReport strong_type_ratio(const RadialModel& model, const Weight& w, double p, const RadialFunction& f,
                              int cut_lo, int cut_hi);

// Right-hand side G = M_s w (s > 1) or M^(k) w (s = 1).
RadialFunction fs_majorant(const RadialModel& model, const Weight& w, double s, int k);
CheckReport fs_ratio(const RadialModel& model, const Weight& w, double s, const RadialFunction& f,
                     const std::vector<double>& lambda_grid, int k = 1);

enum class Backend { tree, radial };

CheckReport vector_valued_ratio_tree(const TreeSpace& tree, double p, double r,
                                     const std::vector<VertexFunction>& functions);
CheckReport vector_valued_ratio_radial(const RadialModel& model, double p, double r,
                                       const std::vector<RadialFunction>& functions);

// Re-evaluates a report's witness through the public single-configuration
// functions; used to confirm reported constants.
struct WitnessContext {
    const RadialModel* model = nullptr;
    const Weight* weight = nullptr;
    const RadialFunction* f = nullptr;
    double p = 2.0;
    double alpha = 1.0;
    double beta = 1.0;
    double eta = 0.0;
    double s = 2.0;
    double r = 2.0;
    int k = 1;
    const TreeSpace* tree = nullptr;
    const std::vector<VertexFunction>* tree_functions = nullptr;
    const std::vector<RadialFunction>* radial_functions = nullptr;
};
double reevaluate_witness(const CheckReport& report, const WitnessContext& ctx);

nlohmann::json to_json(const CheckReport& report);

} // namespace nalab

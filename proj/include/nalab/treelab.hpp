#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nalab {

// Rooted k-ary tree truncated at depth D. Vertices are numbered in level
// order: root 0, children of v are k·v+1 .. k·v+k.
class TreeSpace {
public:
    using Vertex = std::int64_t;

    TreeSpace(int k, int depth);

    int k() const { return k_; }
    int depth() const { return depth_; }
    Vertex size() const { return size_; }

    int depth_of(Vertex v) const;
    Vertex parent(Vertex v) const; // −1 for the root
    Vertex child(Vertex v, int c) const;
    bool has_children(Vertex v) const { return depth_of(v) < depth_; }
    int distance(Vertex x, Vertex y) const;

    // "0.1.0" lists child slots from the root; the root is "".
    std::string path(Vertex v) const;
    Vertex from_path(const std::string& path) const;

private:
    int k_;
    int depth_;
    Vertex size_;
    std::vector<Vertex> level_start_; // first vertex at each depth
};

using VertexFunction = std::vector<double>; // indexed by vertex

struct TreeBall {
    std::vector<TreeSpace::Vertex> vertices;
    bool touches_boundary = false;
};

TreeBall tree_ball(const TreeSpace& tree, TreeSpace::Vertex x, int r);
// Closed-form-free ball size |B(x,r)| by counting.
std::int64_t tree_ball_size(const TreeSpace& tree, TreeSpace::Vertex x, int r);

struct TreeMaximal {
    VertexFunction values;
    std::vector<int> radius;     // smallest maximizing radius
    std::vector<char> boundary;  // argmax ball reaches depth D
};

// Exact Mf(x) = max_{0≤r≤2D} |B(x,r)|⁻¹ Σ_{B(x,r)} f.
TreeMaximal tree_maximal(const TreeSpace& tree, const VertexFunction& f);

enum class PairMode { exact_distance, less_than };

// Σ_{(x,y)∈E×F, d(x,y)=N (or <N)} w(y).
double tree_product_measure(const TreeSpace& tree, const VertexFunction& w,
                            const std::vector<TreeSpace::Vertex>& E,
                            const std::vector<TreeSpace::Vertex>& F, int N, PairMode mode);

// measure / (k^{Nβ} w(E)^{α/p} w(F)^{1−α/p}) with d(x,y) < N.
double tree_orr_ratio(const TreeSpace& tree, const VertexFunction& w,
                      const std::vector<TreeSpace::Vertex>& E,
                      const std::vector<TreeSpace::Vertex>& F, int N, double p, double alpha, double beta);

struct WeakConstant {
    double value = 0.0;  // sup_λ λ·#{Mf > λ} / ‖f‖₁
    double lambda = 0.0; // level attaining it (from below)
    std::int64_t count = 0;
};

// Exhaustive level-set supremum; flagged vertices are skipped unless
// include_boundary is set.
WeakConstant tree_weak_constant(const TreeSpace& tree, const VertexFunction& f, const TreeMaximal& mf,
                                bool include_boundary);

struct KolmogorovReport {
    double q = 0.0;
    double lhs = 0.0; // Σ_B (Mf)^q
    double rhs = 0.0; // c^q/(1−q) |B|^{1−q} ‖f‖₁^q
    double c = 0.0;
    bool holds = false;
};

// c defaults (c < 0) to the weak constant of f over the whole truncated tree.
KolmogorovReport tree_kolmogorov(const TreeSpace& tree, double q, const VertexFunction& f,
                                 const std::vector<TreeSpace::Vertex>& B, double c = -1.0);

// Sum of `count` point masses with U(0,1] weights at vertices of depth
// ≤ max_depth.
VertexFunction random_dirac_sum(const TreeSpace& tree, std::mt19937_64& rng, int count, int max_depth);

} // namespace nalab

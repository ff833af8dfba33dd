#include "nalab/errors.hpp"
#include "nalab/treelab.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace nalab;
using Vertex = TreeSpace::Vertex;

namespace {

// Mf by enumerating every ball with pairwise distances.
VertexFunction naive_maximal(const TreeSpace& tree, const VertexFunction& f)
{
    VertexFunction out(tree.size(), 0.0);
    for (Vertex x = 0; x < tree.size(); ++x) {
        double best = -1.0;
        for (int r = 0; r <= 2 * tree.depth(); ++r) {
            double sum = 0.0, count = 0.0;
            for (Vertex y = 0; y < tree.size(); ++y)
                if (tree.distance(x, y) <= r) {
                    sum += f[y];
                    count += 1.0;
                }
            best = std::max(best, sum / count);
        }
        out[x] = best;
    }
    return out;
}

VertexFunction integer_function(const TreeSpace& tree, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> v(0, 9);
    std::bernoulli_distribution keep(0.2);
    VertexFunction f(tree.size(), 0.0);
    for (auto& x : f)
        x = keep(rng) ? v(rng) : 0;
    return f;
}

} // namespace

TEST_CASE("tree structure")
{
    const TreeSpace t(2, 5);
    CHECK(t.size() == 63);
    CHECK(t.depth_of(0) == 0);
    CHECK(t.depth_of(62) == 5);
    CHECK(t.parent(0) == -1);
    CHECK(t.child(0, 1) == 2);
    CHECK(t.parent(t.child(5, 0)) == 5);
    CHECK_FALSE(t.has_children(62));
    CHECK_THROWS_AS(t.child(62, 0), RangeError);
    CHECK_THROWS_AS(t.depth_of(63), RangeError);
    CHECK_THROWS_AS(TreeSpace(1, 3), DomainError);
}

TEST_CASE("paths round trip")
{
    const TreeSpace t(3, 4);
    CHECK(t.path(0).empty());
    for (Vertex v = 0; v < t.size(); ++v)
        CHECK(t.from_path(t.path(v)) == v);
    CHECK(t.path(t.child(t.child(0, 2), 1)) == "2.1");
    CHECK_THROWS_AS(t.from_path("0.x"), DomainError);
    CHECK_THROWS_AS(t.from_path("3"), RangeError);
}

TEST_CASE("distances")
{
    const TreeSpace t(2, 4);
    const Vertex a = t.from_path("0.0.1"), b = t.from_path("0.1"), c = t.from_path("1.1.1.1");
    CHECK(t.distance(a, b) == 3);
    CHECK(t.distance(a, c) == 7);
    CHECK(t.distance(c, c) == 0);
    CHECK(t.distance(0, c) == 4);
}

TEST_CASE("ball sizes")
{
    const TreeSpace t(2, 6);
    CHECK(tree_ball_size(t, 0, 3) == 15);
    CHECK(tree_ball(t, 0, 3).vertices.size() == 15);
    // Depth 2: parent side 1 + 2 + 1, own side 1 + 2 + 4 minus the shared vertex.
    const Vertex v = t.from_path("0.1");
    CHECK(tree_ball_size(t, v, 2) == 10);
    const TreeBall b = tree_ball(t, v, 2);
    CHECK(std::is_sorted(b.vertices.begin(), b.vertices.end()));
    CHECK_FALSE(b.touches_boundary);
    CHECK(tree_ball(t, v, 4).touches_boundary);
    CHECK_THROWS_AS(tree_ball(t, 0, 13), RangeError);
}

TEST_CASE("exact maximal function equals the naive double loop")
{
    for (int k : {2, 3}) {
        const TreeSpace t(k, k == 2 ? 5 : 3);
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const VertexFunction f = integer_function(t, seed);
            const TreeMaximal mf = tree_maximal(t, f);
            const VertexFunction naive = naive_maximal(t, f);
            for (Vertex x = 0; x < t.size(); ++x) {
                CHECK(mf.values[x] == naive[x]);
                CHECK(mf.boundary[x] == (t.depth_of(x) + mf.radius[x] >= t.depth()));
            }
        }
    }
    const TreeSpace t(2, 3);
    CHECK_THROWS_AS(tree_maximal(t, VertexFunction(14, 1.0)), DomainError);
    VertexFunction bad(15, 1.0);
    bad[3] = -1.0;
    CHECK_THROWS_AS(tree_maximal(t, bad), DomainError);
}

TEST_CASE("weak constant against a level-set scan")
{
    const TreeSpace t(2, 6);
    const VertexFunction f = integer_function(t, 11);
    const TreeMaximal mf = tree_maximal(t, f);
    double l1 = 0.0;
    for (double v : f)
        l1 += v;
    for (bool boundary : {false, true}) {
        const WeakConstant wc = tree_weak_constant(t, f, mf, boundary);
        // sup over λ slightly below each attained level.
        double best = 0.0;
        for (Vertex x = 0; x < t.size(); ++x) {
            const double lam = mf.values[x] * (1.0 - 1e-12);
            double count = 0.0;
            for (Vertex y = 0; y < t.size(); ++y)
                if ((boundary || !mf.boundary[y]) && mf.values[y] > lam)
                    count += 1.0;
            best = std::max(best, lam * count / l1);
        }
        CHECK(wc.value == doctest::Approx(best).epsilon(1e-10));
    }
    CHECK(tree_weak_constant(t, VertexFunction(t.size(), 0.0), mf, true).value == 0.0);
}

TEST_CASE("product measure and ORR ratio")
{
    const TreeSpace t(2, 4);
    VertexFunction w(t.size());
    for (Vertex v = 0; v < t.size(); ++v)
        w[v] = 1.0 + 0.1 * v;
    const std::vector<Vertex> E = {0, 3, 7}, F = {1, 2, 8, 20};
    for (int N : {1, 2, 3, 5}) {
        double exact = 0.0, less = 0.0;
        for (Vertex x : E)
            for (Vertex y : F) {
                if (t.distance(x, y) == N)
                    exact += w[y];
                if (t.distance(x, y) < N)
                    less += w[y];
            }
        CHECK(tree_product_measure(t, w, E, F, N, PairMode::exact_distance) == doctest::Approx(exact));
        CHECK(tree_product_measure(t, w, E, F, N, PairMode::less_than) == doctest::Approx(less));
        double wE = 0.0, wF = 0.0;
        for (Vertex x : E)
            wE += w[x];
        for (Vertex y : F)
            wF += w[y];
        const double ratio = less / (std::pow(2.0, N * 0.5) * std::pow(wE, 0.25) * std::pow(wF, 0.75));
        CHECK(tree_orr_ratio(t, w, E, F, N, 2.0, 0.5, 0.5) == doctest::Approx(ratio));
    }
    CHECK_THROWS_AS(tree_orr_ratio(t, w, {}, F, 2, 2.0, 1.0, 1.0), DomainError);
}

TEST_CASE("Kolmogorov inequality on random cases")
{
    const TreeSpace t(3, 5);
    std::mt19937_64 rng(5);
    for (int n = 0; n < 10; ++n) {
        const VertexFunction f = random_dirac_sum(t, rng, 10, 5);
        std::vector<Vertex> B;
        for (Vertex v = n; v < t.size(); v += 7)
            B.push_back(v);
        for (double q : {0.3, 0.7}) {
            const KolmogorovReport rep = tree_kolmogorov(t, q, f, B);
            CHECK(rep.holds);
            CHECK(rep.lhs <= rep.rhs);
        }
    }
    CHECK_THROWS_AS(tree_kolmogorov(t, 1.0, VertexFunction(t.size(), 1.0), {0}), DomainError);
}

TEST_CASE("random Dirac sums are seeded and depth-limited")
{
    const TreeSpace t(2, 6);
    std::mt19937_64 a(9), b(9);
    const VertexFunction f = random_dirac_sum(t, a, 15, 3);
    CHECK(f == random_dirac_sum(t, b, 15, 3));
    for (Vertex v = 0; v < t.size(); ++v) {
        CHECK(f[v] >= 0.0);
        if (t.depth_of(v) > 3)
            CHECK(f[v] == 0.0);
    }
}

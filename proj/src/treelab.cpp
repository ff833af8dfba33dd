#include "nalab/treelab.hpp"

#include "nalab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <sstream>

namespace nalab {

using Vertex = TreeSpace::Vertex;

TreeSpace::TreeSpace(int k, int depth) : k_(k), depth_(depth)
{
    if (k < 2)
        throw DomainError("TreeSpace: branching must be at least 2");
    if (depth < 0 || depth > 40)
        throw DomainError("TreeSpace: depth out of range");
    Vertex start = 0, width = 1;
    for (int d = 0; d <= depth + 1; ++d) {
        level_start_.push_back(start);
        start += width;
        width *= k;
        if (start > (Vertex(1) << 31))
            throw DomainError("TreeSpace: tree too large");
    }
    size_ = level_start_[depth + 1];
}

int TreeSpace::depth_of(Vertex v) const
{
    if (v < 0 || v >= size_)
        throw RangeError("TreeSpace: vertex out of range");
    const auto it = std::upper_bound(level_start_.begin(), level_start_.end(), v);
    return static_cast<int>(it - level_start_.begin()) - 1;
}

Vertex TreeSpace::parent(Vertex v) const
{
    depth_of(v);
    return v == 0 ? -1 : (v - 1) / k_;
}

Vertex TreeSpace::child(Vertex v, int c) const
{
    if (c < 0 || c >= k_ || !has_children(v))
        throw RangeError("TreeSpace: child does not exist");
    return Vertex(k_) * v + 1 + c;
}

int TreeSpace::distance(Vertex x, Vertex y) const
{
    int dx = depth_of(x), dy = depth_of(y);
    int d = 0;
    while (dx > dy) { x = (x - 1) / k_; --dx; ++d; }
    while (dy > dx) { y = (y - 1) / k_; --dy; ++d; }
    while (x != y) {
        x = (x - 1) / k_;
        y = (y - 1) / k_;
        d += 2;
    }
    return d;
}

std::string TreeSpace::path(Vertex v) const
{
    std::vector<int> slots;
    for (int d = depth_of(v); d > 0; --d) {
        slots.push_back(static_cast<int>((v - 1) % k_));
        v = (v - 1) / k_;
    }
    std::ostringstream os;
    for (auto it = slots.rbegin(); it != slots.rend(); ++it)
        os << (it == slots.rbegin() ? "" : ".") << *it;
    return os.str();
}

Vertex TreeSpace::from_path(const std::string& path) const
{
    Vertex v = 0;
    if (path.empty())
        return v;
    std::istringstream is(path);
    std::string part;
    while (std::getline(is, part, '.')) {
        int c = -1;
        try {
            std::size_t used = 0;
            c = std::stoi(part, &used);
            if (used != part.size())
                c = -1;
        } catch (const std::exception&) {
            c = -1;
        }
        if (c < 0)
            throw DomainError("TreeSpace: malformed path '" + path + "'");
        v = child(v, c);
    }
    return v;
}

namespace {

// Visits every vertex within distance r of x, with its distance.
void for_ball(const TreeSpace& tree, Vertex x, int r, const std::function<void(Vertex, int)>& visit)
{
    struct Item { Vertex v; Vertex from; int dist; };
    std::deque<Item> queue{{x, -1, 0}};
    while (!queue.empty()) {
        const Item it = queue.front();
        queue.pop_front();
        visit(it.v, it.dist);
        if (it.dist == r)
            continue;
        const Vertex up = tree.parent(it.v);
        if (up >= 0 && up != it.from)
            queue.push_back({up, it.v, it.dist + 1});
        if (tree.has_children(it.v))
            for (int c = 0; c < tree.k(); ++c) {
                const Vertex ch = tree.child(it.v, c);
                if (ch != it.from)
                    queue.push_back({ch, it.v, it.dist + 1});
            }
    }
}

// down[v·(D+1) + h]: sum of f over the subtree of v within h levels.
std::vector<double> subtree_sums(const TreeSpace& tree, const VertexFunction& f)
{
    const int D = tree.depth();
    const Vertex n = tree.size();
    std::vector<double> down(static_cast<std::size_t>(n) * (D + 1), 0.0);
    for (Vertex v = n; v-- > 0;) {
        double* row = &down[static_cast<std::size_t>(v) * (D + 1)];
        for (int h = 0; h <= D; ++h)
            row[h] = f[v];
        if (!tree.has_children(v))
            continue;
        for (int c = 0; c < tree.k(); ++c) {
            const double* crow = &down[static_cast<std::size_t>(tree.child(v, c)) * (D + 1)];
            for (int h = 1; h <= D; ++h)
                row[h] += crow[h - 1];
        }
    }
    return down;
}

// Σ_{B(x,r)} f from subtree sums: the subtree part of x, then for each
// ancestor a_t the part of its subtree within r−t levels that avoids a_{t−1}.
double ball_sum(const TreeSpace& tree, const std::vector<double>& down, Vertex x, int depth_x, int r)
{
    const int D = tree.depth();
    auto at = [&](Vertex v, int h) {
        return h < 0 ? 0.0 : down[static_cast<std::size_t>(v) * (D + 1) + std::min(h, D)];
    };
    double s = at(x, r);
    Vertex prev = x;
    Vertex a = x;
    for (int t = 1; t <= std::min(r, depth_x); ++t) {
        a = (a - 1) / tree.k();
        s += at(a, r - t) - at(prev, r - t - 1);
        prev = a;
    }
    return s;
}

void check_function(const TreeSpace& tree, const VertexFunction& f, const char* who)
{
    if (static_cast<Vertex>(f.size()) != tree.size())
        throw DomainError(std::string(who) + ": function size does not match the tree");
    for (double v : f)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError(std::string(who) + ": values must be finite and nonnegative");
}

} // namespace

TreeBall tree_ball(const TreeSpace& tree, Vertex x, int r)
{
    if (r < 0 || r > 2 * tree.depth())
        throw RangeError("tree_ball: radius outside 0..2D");
    TreeBall ball;
    for_ball(tree, x, r, [&ball](Vertex v, int) { ball.vertices.push_back(v); });
    std::sort(ball.vertices.begin(), ball.vertices.end());
    ball.touches_boundary = tree.depth_of(x) + r >= tree.depth();
    return ball;
}

std::int64_t tree_ball_size(const TreeSpace& tree, Vertex x, int r)
{
    std::int64_t n = 0;
    for_ball(tree, x, r, [&n](Vertex, int) { ++n; });
    return n;
}

TreeMaximal tree_maximal(const TreeSpace& tree, const VertexFunction& f)
{
    check_function(tree, f, "tree_maximal");
    const int D = tree.depth();
    const Vertex n = tree.size();
    const auto down_f = subtree_sums(tree, f);
    // |B(x,r)| depends only on depth(x); take the leftmost vertex of each level.
    std::vector<double> sizes((D + 1) * (2 * D + 1));
    {
        const auto down_1 = subtree_sums(tree, VertexFunction(static_cast<std::size_t>(n), 1.0));
        Vertex first = 0;
        for (int d = 0; d <= D; ++d, first = first * tree.k() + 1)
            for (int r = 0; r <= 2 * D; ++r)
                sizes[d * (2 * D + 1) + r] = ball_sum(tree, down_1, first, d, r);
    }

    TreeMaximal out;
    out.values.assign(n, 0.0);
    out.radius.assign(n, 0);
    out.boundary.assign(n, 0);
    for (Vertex x = 0; x < n; ++x) {
        const int dx = tree.depth_of(x);
        double best = -1.0;
        int best_r = 0;
        for (int r = 0; r <= 2 * D; ++r) {
            const double avg = ball_sum(tree, down_f, x, dx, r) / sizes[dx * (2 * D + 1) + r];
            if (avg > best) {
                best = avg;
                best_r = r;
            }
        }
        out.values[x] = best;
        out.radius[x] = best_r;
        out.boundary[x] = dx + best_r >= D;
    }
    return out;
}

double tree_product_measure(const TreeSpace& tree, const VertexFunction& w, const std::vector<Vertex>& E,
                            const std::vector<Vertex>& F, int N, PairMode mode)
{
    if (static_cast<Vertex>(w.size()) != tree.size())
        throw DomainError("tree_product_measure: weight size does not match the tree");
    const int reach = mode == PairMode::exact_distance ? N : N - 1;
    if (reach < 0)
        return 0.0;
    std::vector<char> in_f(tree.size(), 0);
    for (Vertex y : F)
        in_f.at(y) = 1;
    double total = 0.0;
    for (Vertex x : E)
        for_ball(tree, x, std::min(reach, 2 * tree.depth()), [&](Vertex y, int d) {
            if (in_f[y] && (mode == PairMode::less_than || d == N))
                total += w[y];
        });
    return total;
}

double tree_orr_ratio(const TreeSpace& tree, const VertexFunction& w, const std::vector<Vertex>& E,
                      const std::vector<Vertex>& F, int N, double p, double alpha, double beta)
{
    auto mass = [&w](const std::vector<Vertex>& S) {
        double m = 0.0;
        for (Vertex v : S)
            m += w.at(v);
        return m;
    };
    const double den = std::pow(tree.k(), N * beta) * std::pow(mass(E), alpha / p) *
                       std::pow(mass(F), 1.0 - alpha / p);
    if (!(den > 0.0))
        throw DomainError("tree_orr_ratio: empty set in the denominator");
    return tree_product_measure(tree, w, E, F, N, PairMode::less_than) / den;
}

WeakConstant tree_weak_constant(const TreeSpace& tree, const VertexFunction& f, const TreeMaximal& mf,
                                bool include_boundary)
{
    check_function(tree, f, "tree_weak_constant");
    double l1 = 0.0;
    for (double v : f)
        l1 += v;
    WeakConstant out;
    if (l1 == 0.0)
        return out;

    std::vector<double> levels;
    for (Vertex x = 0; x < tree.size(); ++x)
        if (include_boundary || !mf.boundary[x])
            levels.push_back(mf.values[x]);
    std::sort(levels.begin(), levels.end(), std::greater<>());
    // λ ↑ v gives λ·#{Mf > λ} → v·#{Mf ≥ v}.
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i + 1 < levels.size() && levels[i + 1] == levels[i])
            continue;
        const double cand = levels[i] * static_cast<double>(i + 1) / l1;
        if (cand > out.value) {
            out.value = cand;
            out.lambda = levels[i];
            out.count = static_cast<std::int64_t>(i + 1);
        }
    }
    return out;
}

KolmogorovReport tree_kolmogorov(const TreeSpace& tree, double q, const VertexFunction& f,
                                 const std::vector<Vertex>& B, double c)
{
    if (!(q > 0.0 && q < 1.0))
        throw DomainError("tree_kolmogorov: q must lie in (0,1)");
    const TreeMaximal mf = tree_maximal(tree, f);
    KolmogorovReport rep;
    rep.q = q;
    rep.c = c >= 0.0 ? c : tree_weak_constant(tree, f, mf, true).value;
    double l1 = 0.0;
    for (double v : f)
        l1 += v;
    for (Vertex x : B)
        rep.lhs += std::pow(mf.values.at(x), q);
    rep.rhs = std::pow(rep.c, q) / (1.0 - q) * std::pow(static_cast<double>(B.size()), 1.0 - q) * std::pow(l1, q);
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);
    return rep;
}

VertexFunction random_dirac_sum(const TreeSpace& tree, std::mt19937_64& rng, int count, int max_depth)
{
    const int top = std::min(max_depth, tree.depth());
    // Level-order numbering: vertices of depth ≤ top are 0..last.
    Vertex last = 0, width = 1;
    for (int d = 0; d <= top; ++d, width *= tree.k())
        last += width;
    std::uniform_int_distribution<Vertex> pick(0, last - 1);
    std::uniform_real_distribution<double> mass(0.0, 1.0);
    VertexFunction f(tree.size(), 0.0);
    for (int i = 0; i < count; ++i)
        f[pick(rng)] += 1.0 - mass(rng);
    return f;
}

} // namespace nalab

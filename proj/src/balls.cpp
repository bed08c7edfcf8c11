#include "cat0/balls.hpp"

#include <algorithm>
#include <array>

namespace cat0 {

namespace {

bool point_in_all(const ModelSpace& s, const std::vector<Ball>& balls, const Point& p) {
    for (const auto& b : balls)
        if (!in_ball(s, b, p)) return false;
    return true;
}

// Pairwise necessary condition (sufficient on trees by the Helly property):
// balls intersect pairwise iff d(ci,cj) < ri+rj, with equality allowed only
// when both are closed.  Decided on squares.
bool pairwise_ok(const ModelSpace& s, const std::vector<Ball>& balls) {
    for (size_t i = 0; i < balls.size(); ++i)
        for (size_t j = i + 1; j < balls.size(); ++j) {
            Rat d2 = squared_distance(s, balls[i].center, balls[j].center);
            Rat sum = balls[i].radius + balls[j].radius;
            Rat sum2 = sum * sum;
            bool strict = balls[i].open || balls[j].open;
            if (strict ? !(d2 < sum2) : !(d2 <= sum2)) return false;
        }
    return true;
}

// ---- Euclidean support-set solver -----------------------------------------
//
// Minimize f(x) = max_i (|x - c_i|^2_G - r2_i).  The minimizer is the unique
// point where some support set S of <= n+1 balls has equal power values,
// x in conv(c_S), and every other power is dominated.  Enumerating subsets in
// deterministic order and checking both certificates finds it exactly.

struct EuclidOpt {
    Rat value;
    VecQ x;
};

Rat power_at(const MatQ& g, const VecQ& c, const Rat& r2, const VecQ& x) {
    VecQ d = vec_sub(x, c);
    return bilinear(g, d, d) - r2;
}

bool dominated(const MatQ& g, const std::vector<VecQ>& c, const std::vector<Rat>& r2,
               const VecQ& x, const Rat& v) {
    for (size_t j = 0; j < c.size(); ++j)
        if (power_at(g, c[j], r2[j], x) > v) return false;
    return true;
}

std::optional<EuclidOpt> try_subset(const MatQ& g, const std::vector<VecQ>& c,
                                    const std::vector<Rat>& r2, const std::vector<int>& sub) {
    int m = int(sub.size());
    const VecQ& c0 = c[sub[0]];
    if (m == 1) {
        Rat v = -r2[sub[0]];
        if (dominated(g, c, r2, c0, v)) return EuclidOpt{v, c0};
        return std::nullopt;
    }
    std::vector<VecQ> d(m - 1);
    for (int a = 1; a < m; ++a) d[a - 1] = vec_sub(c[sub[a]], c0);
    MatQ A(m - 1, VecQ(m - 1));
    VecQ rhs(m - 1);
    for (int a = 0; a < m - 1; ++a) {
        for (int b = 0; b < m - 1; ++b) A[a][b] = 2 * bilinear(g, d[a], d[b]);
        rhs[a] = bilinear(g, d[a], d[a]) - r2[sub[a + 1]] + r2[sub[0]];
    }
    if (mat_rank(A) < m - 1) return std::nullopt;  // affinely dependent support
    auto mu = solve(A, rhs);
    if (!mu) return std::nullopt;
    Rat lam0 = 1;
    for (const Rat& u : *mu) {
        if (u < 0) return std::nullopt;
        lam0 -= u;
    }
    if (lam0 < 0) return std::nullopt;
    VecQ x = c0;
    for (int a = 0; a < m - 1; ++a) x = vec_add(x, vec_scale((*mu)[a], d[a]));
    Rat v = power_at(g, c0, r2[sub[0]], x);
    if (dominated(g, c, r2, x, v)) return EuclidOpt{v, x};
    return std::nullopt;
}

EuclidOpt euclid_power_min(const MatQ& g, const std::vector<VecQ>& c, const std::vector<Rat>& r2) {
    int n = c.empty() ? 0 : int(c[0].size());
    int k = int(c.size());
    if (n == 0) {
        Rat v = -r2[0];
        for (const Rat& r : r2)
            if (-r > v) v = -r;
        return {v, VecQ{}};
    }
    std::vector<int> sub;
    // subsets in ascending size, lexicographic
    for (int m = 1; m <= std::min(k, n + 1); ++m) {
        sub.assign(m, 0);
        for (int i = 0; i < m; ++i) sub[i] = i;
        while (true) {
            if (auto got = try_subset(g, c, r2, sub)) return *got;
            int i = m - 1;
            while (i >= 0 && sub[i] == k - m + i) --i;
            if (i < 0) break;
            ++sub[i];
            for (int j = i + 1; j < m; ++j) sub[j] = sub[j - 1] + 1;
        }
    }
    throw std::logic_error("euclid_power_min: no certified support set (unexpected)");
}

// ---- tree / product solver -------------------------------------------------
//
// Constraint data per ball, expressed against an anchor point in the tree:
// for x in the admissible subtree, d_T(x, center) = d_T(x, anchor) + off.
struct TreeConstraint {
    TreePoint anchor;
    Rat off;    // >= 0
    Rat t;      // line coordinate of the center (0 for the pure tree)
    Rat r2;
};

struct TreeOpt {
    Rat value;
    TreePoint x;
    Rat t;
};

// min over t of max_i ((t - t_i)^2 + add_i); 1-d support-set solve.
EuclidOpt line_power_min(const std::vector<Rat>& ts, const std::vector<Rat>& add) {
    MatQ g1 = identity(1);
    std::vector<VecQ> c(ts.size());
    std::vector<Rat> r2(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        c[i] = {ts[i]};
        r2[i] = -add[i];
    }
    return euclid_power_min(g1, c, r2);
}

// min over (u in [lo,hi], t) of max_i ((u - a_i)^2 + (t - t_i)^2 - r2_i)
struct StripOpt {
    Rat value, u, t;
};

StripOpt strip_power_min(const std::vector<Rat>& a, const std::vector<Rat>& t,
                         const std::vector<Rat>& r2, const Rat& lo, const Rat& hi) {
    size_t k = a.size();
    MatQ g2 = identity(2);
    std::vector<VecQ> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = {a[i], t[i]};
    EuclidOpt un = euclid_power_min(g2, c, r2);
    Rat u = un.x[0];
    if (u >= lo && u <= hi) return {un.value, u, un.x[1]};
    Rat uc = u < lo ? lo : hi;
    std::vector<Rat> add(k);
    for (size_t i = 0; i < k; ++i) add[i] = (uc - a[i]) * (uc - a[i]) - r2[i];
    EuclidOpt od = line_power_min(t, add);
    return {od.value, uc, od.x[0]};
}

// Global minimum of max_i ((d_T(x, anchor_i) + off_i)^2 + (t - t_i)^2 - r2_i)
// over the subtree spanned by the anchors (which contains the argmin) and the
// whole line.  The spanned subtree is the union of pairwise anchor paths;
// each path is subdivided at the projection feet of the other anchors, and
// each cell becomes a strip-constrained planar power problem.
TreeOpt tree_power_min(const ModelSpace& s, const std::vector<TreeConstraint>& cons) {
    size_t k = cons.size();
    std::optional<TreeOpt> best;
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i; j < k; ++j) {
            const TreePoint& pa = cons[i].anchor;
            const TreePoint& pb = cons[j].anchor;
            Rat L = tree_distance(pa, pb);
            // projection foot and clearance of each anchor relative to [pa,pb]
            std::vector<Rat> foot(k), clear(k);
            std::vector<Rat> cuts{Rat(0), L};
            for (size_t m = 0; m < k; ++m) {
                Rat da = tree_distance(pa, cons[m].anchor);
                Rat db = tree_distance(pb, cons[m].anchor);
                foot[m] = (da + L - db) / 2;
                clear[m] = (da + db - L) / 2;
                if (foot[m] > 0 && foot[m] < L) cuts.push_back(foot[m]);
            }
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            for (size_t ci = 0; ci + 1 < cuts.size() || (cuts.size() == 1 && ci == 0); ++ci) {
                Rat lo = cuts[ci];
                Rat hi = cuts.size() == 1 ? cuts[ci] : cuts[ci + 1];
                Rat mid = (lo + hi) / 2;
                std::vector<Rat> a(k), t(k), r2(k);
                for (size_t m = 0; m < k; ++m) {
                    // d_T(x(u), anchor_m) + off = |u - foot| + clear + off
                    Rat h = clear[m] + cons[m].off;
                    int sgn = mid >= foot[m] ? 1 : -1;
                    a[m] = foot[m] - sgn * h;
                    t[m] = cons[m].t;
                    r2[m] = cons[m].r2;
                }
                StripOpt so = strip_power_min(a, t, r2, lo, hi);
                if (!best || so.value < best->value) {
                    TreePoint px;
                    if (L == 0) {
                        px = pa;
                    } else {
                        Point A, B;
                        A.kind = SpaceKind::Tree; A.tree = pa;
                        B.kind = SpaceKind::Tree; B.tree = pb;
                        px = geodesic_point(ModelSpace::tree(s.tree_depth, s.compactified), A, B, so.u / L).tree;
                    }
                    best = TreeOpt{so.value, px, so.t};
                }
                if (cuts.size() == 1) break;
            }
        }
    }
    return *best;
}

std::vector<TreeConstraint> plain_constraints(const std::vector<Ball>& balls) {
    std::vector<TreeConstraint> cons(balls.size());
    for (size_t i = 0; i < balls.size(); ++i) {
        cons[i].anchor = balls[i].center.tree;
        cons[i].off = 0;
        cons[i].t = balls[i].center.kind == SpaceKind::Product ? balls[i].center.t : Rat(0);
        cons[i].r2 = balls[i].radius * balls[i].radius;
    }
    return cons;
}

}  // namespace

PowerOpt power_min(const ModelSpace& s, const std::vector<Ball>& balls) {
    if (balls.empty()) throw std::invalid_argument("power_min: empty ball list");
    for (const auto& b : balls)
        if (b.center.kind != s.kind) throw domain_mismatch("power_min: ball in wrong space");
    switch (s.kind) {
        case SpaceKind::Euclidean: {
            std::vector<VecQ> c(balls.size());
            std::vector<Rat> r2(balls.size());
            for (size_t i = 0; i < balls.size(); ++i) {
                c[i] = balls[i].center.coords;
                r2[i] = balls[i].radius * balls[i].radius;
            }
            EuclidOpt e = euclid_power_min(s.gram, c, r2);
            return {e.value, Point::euclidean(e.x)};
        }
        case SpaceKind::Tree: {
            TreeOpt t = tree_power_min(s, plain_constraints(balls));
            Point w;
            w.kind = SpaceKind::Tree;
            w.tree = t.x;
            return {t.value, w};
        }
        case SpaceKind::Product: {
            TreeOpt t = tree_power_min(s, plain_constraints(balls));
            Point w;
            w.kind = SpaceKind::Product;
            w.tree = t.x;
            w.t = t.t;
            return {t.value, w};
        }
    }
    throw domain_mismatch("unreachable");
}

bool balls_intersect(const ModelSpace& s, const std::vector<Ball>& balls) {
    if (balls.empty()) throw std::invalid_argument("balls_intersect: empty ball list");
    if (balls.size() == 1) return true;
    if (!pairwise_ok(s, balls)) return false;
    if (s.kind == SpaceKind::Tree) return true;  // Helly property of R-trees
    PowerOpt opt = power_min(s, balls);
    if (opt.min_power < 0) return true;
    if (opt.min_power > 0) return false;
    return point_in_all(s, balls, opt.witness);
}

// ---- fixed sets -----------------------------------------------------------

FixedSet FixedSet::affine(VecQ p0, std::vector<VecQ> basis) {
    FixedSet f;
    f.kind = Kind::Affine;
    f.p0 = std::move(p0);
    f.basis = std::move(basis);
    return f;
}

FixedSet FixedSet::subtree(const Rat& cutoff, bool times_line) {
    FixedSet f;
    f.kind = times_line ? Kind::SubtreeTimesLine : Kind::Subtree;
    f.cutoff = cutoff;
    return f;
}

FixedSet FixedSet::whole(const ModelSpace& s) {
    if (s.kind == SpaceKind::Euclidean) {
        VecQ p0(s.dim, Rat(0));
        std::vector<VecQ> basis;
        for (int i = 0; i < s.dim; ++i) {
            VecQ e(s.dim, Rat(0));
            e[i] = 1;
            basis.push_back(e);
        }
        return affine(p0, basis);
    }
    return subtree(Rat(1), s.kind == SpaceKind::Product);
}

bool FixedSet::operator==(const FixedSet& o) const {
    return kind == o.kind && p0 == o.p0 && basis == o.basis && cutoff == o.cutoff;
}

namespace {

// Solve G' y = B^T G (p - p0) with G' = B^T G B; returns class coordinates.
std::optional<VecQ> affine_coords(const ModelSpace& s, const FixedSet& f, const VecQ& p) {
    size_t m = f.basis.size();
    MatQ gp(m, VecQ(m));
    VecQ rhs(m);
    VecQ d = vec_sub(p, f.p0);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) gp[i][j] = bilinear(s.gram, f.basis[i], f.basis[j]);
        rhs[i] = bilinear(s.gram, f.basis[i], d);
    }
    if (m == 0) return VecQ{};
    return solve(gp, rhs);
}

VecQ affine_realize(const FixedSet& f, const VecQ& y) {
    VecQ p = f.p0;
    for (size_t i = 0; i < f.basis.size(); ++i) p = vec_add(p, vec_scale(y[i], f.basis[i]));
    return p;
}

}  // namespace

Rat squared_distance_to(const ModelSpace& s, const FixedSet& f, const Point& p) {
    switch (f.kind) {
        case FixedSet::Kind::Empty:
            throw std::invalid_argument("distance to empty fixed set");
        case FixedSet::Kind::Affine: {
            auto y = affine_coords(s, f, p.coords);
            VecQ proj = affine_realize(f, *y);
            VecQ d = vec_sub(p.coords, proj);
            return bilinear(s.gram, d, d);
        }
        case FixedSet::Kind::Subtree:
        case FixedSet::Kind::SubtreeTimesLine: {
            Rat over = p.tree.rho - f.cutoff;
            if (over <= 0) return Rat(0);
            return over * over;
        }
    }
    throw std::logic_error("unreachable");
}

bool fixed_set_contains(const ModelSpace& s, const FixedSet& f, const Point& p) {
    if (f.kind == FixedSet::Kind::Empty) return false;
    return squared_distance_to(s, f, p) == 0;
}

Point project_to(const ModelSpace& s, const FixedSet& f, const Point& p) {
    switch (f.kind) {
        case FixedSet::Kind::Empty:
            throw std::invalid_argument("projection onto empty fixed set");
        case FixedSet::Kind::Affine: {
            auto y = affine_coords(s, f, p.coords);
            return Point::euclidean(affine_realize(f, *y));
        }
        case FixedSet::Kind::Subtree:
        case FixedSet::Kind::SubtreeTimesLine: {
            Point q = p;
            if (p.tree.rho > f.cutoff)
                q.tree = tree_point_at_depth(p.tree.addr, f.cutoff, s.tree_depth, s.compactified);
            return q;
        }
    }
    throw std::logic_error("unreachable");
}

RestrictedBall restrict_ball(const ModelSpace& s, const FixedSet& f, const Ball& b) {
    RestrictedBall rb;
    rb.open = b.open;
    switch (f.kind) {
        case FixedSet::Kind::Empty:
            throw std::invalid_argument("restrict_ball: empty fixed set");
        case FixedSet::Kind::Affine: {
            auto y = affine_coords(s, f, b.center.coords);
            VecQ proj = affine_realize(f, *y);
            VecQ d = vec_sub(b.center.coords, proj);
            Rat h2 = bilinear(s.gram, d, d);
            rb.center = Point::euclidean(proj);
            rb.a = b.radius * b.radius - h2;
            rb.b = 0;
            rb.reaches = b.open ? rb.a > 0 : rb.a >= 0;
            return rb;
        }
        case FixedSet::Kind::Subtree:
        case FixedSet::Kind::SubtreeTimesLine: {
            const TreePoint& tp = b.center.tree;
            Rat w = tp.rho > f.cutoff ? tp.rho - f.cutoff : Rat(0);
            TreePoint proj = w > 0 ? tree_point_at_depth(tp.addr, f.cutoff, s.tree_depth, s.compactified) : tp;
            rb.center.kind = b.center.kind;
            rb.center.tree = proj;
            if (b.center.kind == SpaceKind::Product) rb.center.t = b.center.t;
            rb.a = w;
            rb.b = b.radius;
            Rat reach = b.radius - w;
            rb.reaches = b.open ? reach > 0 : reach >= 0;
            return rb;
        }
    }
    throw std::logic_error("unreachable");
}

bool balls_intersect_in(const ModelSpace& s, const FixedSet& f, const std::vector<Ball>& balls) {
    if (balls.empty()) throw std::invalid_argument("balls_intersect_in: empty ball list");
    if (f.kind == FixedSet::Kind::Empty) return false;
    std::vector<RestrictedBall> rb;
    rb.reserve(balls.size());
    for (const auto& b : balls) {
        rb.push_back(restrict_ball(s, f, b));
        if (!rb.back().reaches) return false;
    }
    switch (f.kind) {
        case FixedSet::Kind::Affine: {
            size_t m = f.basis.size();
            if (m == 0) {
                Point p = Point::euclidean(f.p0);
                return point_in_all(s, balls, p);
            }
            MatQ gp(m, VecQ(m));
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j) gp[i][j] = bilinear(s.gram, f.basis[i], f.basis[j]);
            std::vector<VecQ> c(balls.size());
            std::vector<Rat> r2(balls.size());
            for (size_t i = 0; i < balls.size(); ++i) {
                c[i] = *affine_coords(s, f, balls[i].center.coords);
                r2[i] = rb[i].a;
            }
            EuclidOpt e = euclid_power_min(gp, c, r2);
            if (e.value < 0) return true;
            if (e.value > 0) return false;
            Point wit = Point::euclidean(affine_realize(f, e.x));
            return point_in_all(s, balls, wit);
        }
        case FixedSet::Kind::Subtree: {
            // Helly on the subtree with offset distances
            for (size_t i = 0; i < balls.size(); ++i)
                for (size_t j = i + 1; j < balls.size(); ++j) {
                    Rat d = tree_distance(rb[i].center.tree, rb[j].center.tree) + rb[i].a + rb[j].a;
                    Rat sum = balls[i].radius + balls[j].radius;
                    bool strict = balls[i].open || balls[j].open;
                    if (strict ? !(d < sum) : !(d <= sum)) return false;
                }
            return true;
        }
        case FixedSet::Kind::SubtreeTimesLine: {
            std::vector<TreeConstraint> cons(balls.size());
            for (size_t i = 0; i < balls.size(); ++i) {
                cons[i].anchor = rb[i].center.tree;
                cons[i].off = rb[i].a;
                cons[i].t = balls[i].center.t;
                cons[i].r2 = balls[i].radius * balls[i].radius;
            }
            TreeOpt t = tree_power_min(s, cons);
            if (t.value < 0) return true;
            if (t.value > 0) return false;
            Point wit;
            wit.kind = SpaceKind::Product;
            wit.tree = t.x;
            wit.t = t.t;
            return point_in_all(s, balls, wit);
        }
        default:
            return false;
    }
}

}  // namespace cat0

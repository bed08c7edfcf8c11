#include "cat0/cover.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace cat0 {

namespace {

struct BallKey {
    int comp;
    Point center;
    Rat radius;
    bool operator<(const BallKey& o) const {
        if (comp != o.comp) return comp < o.comp;
        auto c = center <=> o.center;
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        return radius < o.radius;
    }
};

struct Builder {
    const GroupSpec* grp = nullptr;
    const AxesSpace* axes = nullptr;
    GoodCover cover;
    std::map<BallKey, int> index;
    int next_orbit = 0;

    // per component: comp-preserving non-identity actions split into pure
    // translations (constant displacement, precomputed) and the rest
    std::vector<std::optional<Rat>> const_delta2;
    std::vector<std::vector<const Isometry*>> moving;
    std::map<std::pair<int, Point>, Rat> eps_cache;
    std::vector<std::map<std::vector<long>, std::vector<int>>> bins;
    bool exact_crystal = false;  // X-component delta via closed-form lattice minimization

    void prepare() {
        size_t nc = cover.comps.size();
        const_delta2.assign(nc, std::nullopt);
        moving.assign(nc, {});
        bins.assign(nc, {});
        exact_crystal = grp->crystallographic && !cover.is_axes_cover;
        for (const auto& a : cover.actions) {
            if (a.ambient.is_identity()) continue;
            for (size_t k = 0; k < nc; ++k) {
                if (a.to[k] != int(k)) continue;
                const Isometry& m = a.map[k];
                const ModelSpace& sp = cover.comps[k].space;
                if (sp.kind == SpaceKind::Euclidean && m.o == identity(sp.dim)) {
                    Rat d2 = bilinear(sp.gram, m.v, m.v);
                    if (d2 != 0 && (!const_delta2[k] || d2 < *const_delta2[k])) const_delta2[k] = d2;
                } else {
                    moving[k].push_back(&m);
                }
            }
        }
    }

    static std::vector<long> bin_of(const ModelSpace& sp, const Point& p) {
        std::vector<Rat> keys;
        if (sp.kind == SpaceKind::Euclidean) keys = p.coords;
        else if (sp.kind == SpaceKind::Product) keys = {p.t};
        std::vector<long> out;
        for (const Rat& k : keys) {
            Int fl;
            mpz_fdiv_q(fl.get_mpz_t(), k.get_num().get_mpz_t(), k.get_den().get_mpz_t());
            out.push_back(fl.get_si());
        }
        return out;
    }

    // min over lattice vectors of |z + U n|^2_G, optionally excluding zero;
    // the real minimizer is solved exactly and a 3x3 integer neighborhood
    // around it is scanned.
    Rat lattice_min_sq(const VecQ& z, bool exclude_zero) const {
        const ModelSpace& sp = grp->space;
        size_t m = grp->lattice.size();
        MatQ gl(m, VecQ(m));
        VecQ rhs(m);
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = 0; j < m; ++j) gl[i][j] = bilinear(sp.gram, grp->lattice[i], grp->lattice[j]);
            rhs[i] = -bilinear(sp.gram, grp->lattice[i], z);
        }
        VecQ nstar = *solve(gl, rhs);
        std::vector<long> base(m);
        for (size_t i = 0; i < m; ++i) {
            Int fl;
            mpz_fdiv_q(fl.get_mpz_t(), nstar[i].get_num().get_mpz_t(), nstar[i].get_den().get_mpz_t());
            base[i] = fl.get_si();
        }
        std::optional<Rat> best;
        std::vector<long> off(m, -1);
        while (true) {
            VecQ w = z;
            for (size_t i = 0; i < m; ++i)
                w = vec_add(w, vec_scale(Rat(base[i] + off[i]), grp->lattice[i]));
            Rat d2 = bilinear(sp.gram, w, w);
            if (!(exclude_zero && d2 == 0))
                if (!best || d2 < *best) best = d2;
            size_t i = 0;
            while (i < m && off[i] == 1) off[i++] = -1;
            if (i == m) break;
            ++off[i];
        }
        return *best;
    }

    // exact min positive squared displacement of x over the whole group:
    // per point-group coset, a closed-form closest-lattice-vector problem
    Rat crystal_delta2(const VecQ& x) const {
        const ModelSpace& sp = grp->space;
        std::optional<Rat> best;
        for (const auto& rep : grp->coset_reps) {
            VecQ z = vec_sub(vec_add(mat_apply(rep.o, x), rep.v), x);
            bool is_id_rep = rep.o == identity(sp.dim) && [&] {
                for (const Rat& c : rep.v)
                    if (c != 0) return false;
                return true;
            }();
            Rat d2 = lattice_min_sq(z, /*exclude_zero=*/true);
            (void)is_id_rep;
            if (!best || d2 < *best) best = d2;
        }
        return *best;
    }

    // epsilon policy: eps_x = min(1/4, delta_x/3) rounded down to a power of two
    Rat epsilon_at(int comp, const Point& x) {
        auto key = std::make_pair(comp, x);
        auto it = eps_cache.find(key);
        if (it != eps_cache.end()) return it->second;
        std::optional<Rat> delta2;
        if (exact_crystal && comp == 0) {
            delta2 = crystal_delta2(x.coords);
        } else {
            delta2 = const_delta2[comp];
            const ModelSpace& sp = cover.comps[comp].space;
            for (const Isometry* m : moving[comp]) {
                if (m->fixes(sp, x)) continue;
                Rat d2 = squared_distance(sp, m->apply(sp, x), x);
                if (d2 == 0) continue;
                if (!delta2 || d2 < *delta2) delta2 = d2;
            }
        }
        Rat eps = rat(1, 4);
        if (delta2) {
            eps = dyadic_third(*delta2);
            if (eps == 0) throw std::runtime_error("epsilon policy collapsed to zero: non-discrete orbit?");
        }
        eps_cache.emplace(key, eps);
        return eps;
    }

    void add_orbit(int comp, const Point& center, const Rat& eps, int shell) {
        int orbit = next_orbit++;
        for (const auto& a : cover.actions) {
            int comp2 = a.to[comp];
            Point c2 = a.map[comp].apply(cover.comps[comp].space, center);
            Rat d2 = squared_distance(cover.comps[comp2].space, c2, cover.comps[comp2].basepoint);
            if (d2 > cover.keep_R * cover.keep_R) continue;
            BallKey key{comp2, c2, eps};
            if (index.count(key)) continue;
            int id = int(cover.balls.size());
            index[key] = id;
            bins[comp2][bin_of(cover.comps[comp2].space, c2)].push_back(id);
            cover.balls.push_back(CoverBall{comp2, c2, eps, orbit, shell});
        }
        if (eps > cover.max_radius) cover.max_radius = eps;
    }

    // ball ids whose centers lie in bins within the per-coordinate ranges
    void nearby(int comp, const std::vector<long>& lo, const std::vector<long>& hi,
                std::vector<int>* out) const {
        const auto& bm = bins[comp];
        if (lo.empty()) {  // unbinned (tree) component
            for (const auto& [k, v] : bm) out->insert(out->end(), v.begin(), v.end());
            return;
        }
        std::vector<long> cur(lo);
        for (size_t i = 0; i < cur.size(); ++i) cur[i] -= 1;
        std::vector<long> lim(hi);
        for (size_t i = 0; i < lim.size(); ++i) lim[i] += 1;
        while (true) {
            auto it = bm.find(cur);
            if (it != bm.end()) out->insert(out->end(), it->second.begin(), it->second.end());
            size_t i = 0;
            while (i < cur.size() && cur[i] == lim[i]) cur[i] = lo[i] - 1, ++i;
            if (i == cur.size()) break;
            ++cur[i];
        }
    }

    bool point_covered(int comp, const Point& p) const {
        const ModelSpace& sp = cover.comps[comp].space;
        std::vector<long> b0 = bin_of(sp, p);
        std::vector<int> cand;
        nearby(comp, b0, b0, &cand);
        for (int i : cand) {
            const auto& b = cover.balls[i];
            Rat d2 = squared_distance(sp, b.center, p);
            if (d2 < b.radius * b.radius) return true;
        }
        return false;
    }
};

// ---- Euclidean cells ---------------------------------------------------------

struct Box {
    VecQ lo, hi;
};

// min of |x - c|^2_G over the box: enumerate active-face patterns (0 free,
// 1 at lo, 2 at hi) and solve the free block exactly.
Rat box_min_dist_sq(const MatQ& g, const VecQ& c, const Box& box) {
    int n = int(c.size());
    std::optional<Rat> best;
    std::vector<int> pat(n, 0);
    while (true) {
        std::vector<int> free_idx;
        VecQ x(n);
        for (int i = 0; i < n; ++i) {
            if (pat[i] == 0) free_idx.push_back(i);
            else x[i] = pat[i] == 1 ? box.lo[i] : box.hi[i];
        }
        bool feasible = true;
        if (!free_idx.empty()) {
            // stationarity over the free block: sum_j G_ij (x_j - c_j) = 0
            int m = int(free_idx.size());
            MatQ a(m, VecQ(m));
            VecQ b(m);
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j) a[i][j] = g[free_idx[i]][free_idx[j]];
                Rat acc = 0;
                for (int k = 0; k < n; ++k) {
                    if (pat[k] != 0) acc += g[free_idx[i]][k] * (x[k] - c[k]);
                    else acc += g[free_idx[i]][k] * (-c[k]);
                }
                b[i] = -acc;
            }
            auto sol = solve(a, b);
            if (!sol) feasible = false;
            else
                for (int i = 0; i < m; ++i) {
                    x[free_idx[i]] = (*sol)[i];
                    if (x[free_idx[i]] < box.lo[free_idx[i]] || x[free_idx[i]] > box.hi[free_idx[i]])
                        feasible = false;
                }
        }
        if (feasible) {
            VecQ d = vec_sub(x, c);
            Rat v = bilinear(g, d, d);
            if (!best || v < *best) best = v;
        }
        int i = 0;
        while (i < n && pat[i] == 2) pat[i++] = 0;
        if (i == n) break;
        ++pat[i];
    }
    return *best;
}

Rat box_max_dist_sq(const MatQ& g, const VecQ& c, const Box& box) {
    int n = int(c.size());
    Rat best = -1;
    std::vector<int> pat(n, 0);
    while (true) {
        VecQ x(n);
        for (int i = 0; i < n; ++i) x[i] = pat[i] == 0 ? box.lo[i] : box.hi[i];
        VecQ d = vec_sub(x, c);
        Rat v = bilinear(g, d, d);
        if (v > best) best = v;
        int i = 0;
        while (i < n && pat[i] == 1) pat[i++] = 0;
        if (i == n) break;
        ++pat[i];
    }
    return best;
}

bool box_in_ball(const ModelSpace& s, const Box& box, const Point& center, const Rat& eps) {
    return box_max_dist_sq(s.gram, center.coords, box) < eps * eps;
}

struct EuclidStageCover {
    Builder* b;
    int comp;
    std::vector<FixedSet> snap_sets;  // fixed sets of window elements, for center snapping
    int max_depth = 8;

    void select_or_split(const Box& box, int shell, int depth) {
        const ModelSpace& space = b->cover.comps[comp].space;
        // skip boxes already inside a selected ball
        std::vector<long> blo, bhi;
        for (size_t i = 0; i < box.lo.size(); ++i) {
            Int flo, fhi;
            mpz_fdiv_q(flo.get_mpz_t(), box.lo[i].get_num().get_mpz_t(), box.lo[i].get_den().get_mpz_t());
            mpz_fdiv_q(fhi.get_mpz_t(), box.hi[i].get_num().get_mpz_t(), box.hi[i].get_den().get_mpz_t());
            blo.push_back(flo.get_si());
            bhi.push_back(fhi.get_si());
        }
        std::vector<int> cand;
        b->nearby(comp, blo, bhi, &cand);
        for (int i : cand) {
            const auto& ball = b->cover.balls[i];
            if (box_in_ball(space, box, ball.center, ball.radius)) return;
        }
        // candidate centers: box midpoint, plus projections onto nearby fixed sets
        VecQ mid(box.lo.size());
        for (size_t i = 0; i < mid.size(); ++i) mid[i] = (box.lo[i] + box.hi[i]) / 2;
        Rat diag2 = box_max_dist_sq(space.gram, mid, box) * 4;
        std::vector<Point> cands{Point::euclidean(mid)};
        for (const auto& f : snap_sets) {
            Point pm = Point::euclidean(mid);
            if (squared_distance_to(space, f, pm) <= diag2) cands.push_back(project_to(space, f, pm));
        }
        Point best_c = cands[0];
        Rat best_eps = -1;
        for (const auto& c : cands) {
            Rat eps = b->epsilon_at(comp, c);
            if (eps > best_eps || (eps == best_eps && c < best_c)) {
                best_eps = eps;
                best_c = c;
            }
        }
        if (box_in_ball(space, box, best_c, best_eps)) {
            b->add_orbit(comp, best_c, best_eps, shell);
            return;
        }
        if (depth >= max_depth)
            throw std::runtime_error("cover cell refinement did not terminate");
        // split along every axis
        int n = int(box.lo.size());
        std::vector<int> pat(n, 0);
        while (true) {
            Box half;
            half.lo = box.lo;
            half.hi = box.hi;
            for (int i = 0; i < n; ++i) {
                Rat m = (box.lo[i] + box.hi[i]) / 2;
                if (pat[i] == 0) half.hi[i] = m;
                else half.lo[i] = m;
            }
            select_or_split(half, shell, depth + 1);
            int i = 0;
            while (i < n && pat[i] == 1) pat[i++] = 0;
            if (i == n) break;
            ++pat[i];
        }
    }

    void run(const Rat& window_R) {
        const ModelSpace& space = b->cover.comps[comp].space;
        const VecQ& bp = b->cover.comps[comp].basepoint.coords;
        int n = space.dim;
        if (n == 0) {  // single point component
            Point p = b->cover.comps[comp].basepoint;
            if (!b->point_covered(comp, p)) b->add_orbit(comp, p, b->epsilon_at(comp, p), 1);
            return;
        }
        long stages = 1;
        while (Rat(stages) < window_R) ++stages;
        // per-coordinate enumeration bound from a rational lower bound on the
        // smallest eigenvalue of G: entry (n=1), det/trace (n=2), det/trace^2 (n=3)
        Rat lam;
        const MatQ& gm = space.gram;
        if (n == 1) lam = gm[0][0];
        else if (n == 2) lam = (gm[0][0] * gm[1][1] - gm[0][1] * gm[1][0]) / (gm[0][0] + gm[1][1]);
        else {
            Rat det = gm[0][0] * (gm[1][1] * gm[2][2] - gm[1][2] * gm[2][1]) -
                      gm[0][1] * (gm[1][0] * gm[2][2] - gm[1][2] * gm[2][0]) +
                      gm[0][2] * (gm[1][0] * gm[2][1] - gm[1][1] * gm[2][0]);
            Rat tr = gm[0][0] + gm[1][1] + gm[2][2];
            lam = det / (tr * tr);
        }
        for (long stage = 1; stage <= stages; ++stage) {
            Rat reach2 = Rat(stage) * Rat(stage) / lam;
            Int reach = ceil_sqrt(reach2) + 1;
            long rch = reach.get_si();
            std::vector<long> cur(n, -rch);
            while (true) {
                Box box;
                box.lo.resize(n);
                box.hi.resize(n);
                for (int i = 0; i < n; ++i) {
                    box.lo[i] = bp[i] + cur[i];
                    box.hi[i] = bp[i] + cur[i] + 1;
                }
                Rat mind = box_min_dist_sq(space.gram, bp, box);
                bool in_stage = mind <= Rat(stage) * Rat(stage) &&
                                (stage == 1 || mind > Rat(stage - 1) * Rat(stage - 1));
                if (in_stage) select_or_split(box, int(stage), 0);
                int i = 0;
                while (i < n && cur[i] == rch) cur[i++] = -rch;
                if (i == n) break;
                ++cur[i];
            }
        }
    }
};

// ---- tree / product candidates -------------------------------------------------

// Candidate centers along the tree: nodes plus interior edge points at
// spacing eps/2, descending until the subtree tail fits inside eps/2.
void tree_candidates(const ModelSpace& ts, std::vector<Point>* out) {
    struct Item {
        std::vector<uint8_t> addr;
    };
    std::vector<Item> stack{{{}}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        out->push_back(Point::tree_node(it.addr));
        if (it.addr.size() >= ts.tree_depth) continue;
        for (uint8_t bit = 0; bit < 2; ++bit) {
            std::vector<uint8_t> child = it.addr;
            child.push_back(bit);
            // interior points of the edge into `child`, spacing 2^{-(k+2)}
            unsigned k = unsigned(child.size());
            Rat lo = TreePoint::node_depth(k - 1), hi = TreePoint::node_depth(k);
            Rat step = dyadic(k + 2);
            for (Rat r = lo + step; r < hi; r += step) out->push_back(Point::tree_interior(child, r));
            stack.push_back({child});
        }
    }
    std::sort(out->begin(), out->end());
}

}  // namespace

// ---- GoodCover lookups ---------------------------------------------------------

// balls are kept sorted by (comp, center, radius)
int GoodCover::find_ball(int comp, const Point& center, const Rat& radius) const {
    auto less = [](const CoverBall& x, const CoverBall& y) {
        if (x.comp != y.comp) return x.comp < y.comp;
        auto c = x.center <=> y.center;
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        return x.radius < y.radius;
    };
    CoverBall probe{comp, center, radius, 0, 0};
    auto it = std::lower_bound(balls.begin(), balls.end(), probe, less);
    if (it != balls.end() && it->comp == comp && it->center == center && it->radius == radius)
        return int(it - balls.begin());
    return -1;
}

std::optional<int> GoodCover::map_ball(const CoverAction& a, int v) const {
    const CoverBall& b = balls[v];
    int comp2 = a.to[b.comp];
    Point c2 = a.map[b.comp].apply(comps[b.comp].space, b.center);
    int idx = find_ball(comp2, c2, b.radius);
    if (idx >= 0) return idx;
    return std::nullopt;
}

std::optional<int> GoodCover::map_ball(int a, int v) const { return map_ball(actions[a], v); }

// ---- actions ---------------------------------------------------------------------

CoverAction cover_action(const GoodCover& cover, const GroupSpec& g, const AxesSpace* axes,
                         const Isometry& e) {
    CoverAction act;
    act.ambient = e;
    act.to.resize(cover.comps.size());
    act.map.resize(cover.comps.size());
    act.sheet_sign.assign(cover.comps.size(), 1);
    for (size_t k = 0; k < cover.comps.size(); ++k) {
        const CoverComponent& comp = cover.comps[k];
        if (comp.axes_class < 0) {
            act.to[k] = int(k);
            act.map[k] = e;
            continue;
        }
        ClassMap cm = induced_class_map(g.space, *axes, comp.axes_class, e);
        // locate the target component (same class index; pieces are class-wide here)
        int target = -1;
        for (size_t j = 0; j < cover.comps.size(); ++j)
            if (cover.comps[j].axes_class == cm.to) target = int(j);
        if (target < 0) throw std::logic_error("class image has no cover component");
        act.to[k] = target;
        act.map[k] = cm.map;
        act.sheet_sign[k] = cm.sheet_sign;
    }
    return act;
}

// ---- builders --------------------------------------------------------------------

namespace {

void build_components_for_axes(const AxesSpace& axes, GoodCover* cover) {
    for (size_t i = 0; i < axes.classes.size(); ++i) {
        const AxisClassSet& set = axes.classes[i];
        if (set.is_empty()) continue;
        CoverComponent comp;
        comp.axes_class = int(i);
        if (set.cls.kind == SpaceKind::Euclidean) {
            if (!set.full)
                throw std::runtime_error(
                    "axis covers over partial Euclidean classes are not supported "
                    "(preset windows always produce full classes)");
            comp.space = set.cls.class_space;
            comp.basepoint = Point::euclidean(VecQ(comp.space.dim, Rat(0)));
            std::ostringstream os;
            os << "class(";
            for (size_t j = 0; j < set.cls.dir.size(); ++j)
                os << (j ? "," : "") << set.cls.dir[j].get_str();
            os << ")";
            comp.label = os.str();
        } else {
            // subtree of depth j, reparameterized as its own truncated tree
            unsigned j = 0;
            while (TreePoint::node_depth(j + 1) <= *set.cutoff) ++j;
            comp.space = ModelSpace::tree(j, false);
            comp.basepoint = Point::tree_node({});
            comp.label = "tree-class";
        }
        cover->comps.push_back(std::move(comp));
    }
}

void run_component_cover(Builder& b, int comp) {
    const ModelSpace& space = b.cover.comps[comp].space;
    switch (space.kind) {
        case SpaceKind::Euclidean: {
            EuclidStageCover esc;
            esc.b = &b;
            esc.comp = comp;
            // snap candidates to fixed sets of window elements
            for (const auto& a : b.cover.actions) {
                if (a.ambient.is_identity() || a.to[comp] != comp) continue;
                FixedSet f = fixed_set(space, {a.map[comp]});
                if (f.is_empty()) continue;
                if (f.kind == FixedSet::Kind::Affine && int(f.basis.size()) == space.dim)
                    continue;  // identity action
                bool dup = false;
                for (const auto& g : esc.snap_sets)
                    if (g == f) dup = true;
                if (!dup) esc.snap_sets.push_back(f);
            }
            esc.run(b.cover.window_R);
            break;
        }
        case SpaceKind::Tree: {
            std::vector<Point> cands;
            tree_candidates(space, &cands);
            for (const auto& c : cands) {
                if (b.point_covered(comp, c)) continue;
                b.add_orbit(comp, c, b.epsilon_at(comp, c), 1);
            }
            break;
        }
        case SpaceKind::Product: {
            std::vector<Point> tree_cands;
            tree_candidates(ModelSpace::tree(space.tree_depth, space.compactified), &tree_cands);
            // shells over the line coordinate
            long stages = 1;
            while (Rat(stages) < b.cover.window_R) ++stages;
            for (long stage = 1; stage <= stages; ++stage) {
                for (const auto& tc : tree_cands) {
                    Point probe0 = Point::product(tc, Rat(0));
                    Rat eps = b.epsilon_at(comp, probe0);
                    // t-grid at spacing eps
                    long steps = 0;
                    while (Rat(steps) * eps <= Rat(stage)) ++steps;
                    for (long m = -steps; m <= steps; ++m) {
                        Rat t = Rat(m) * eps;
                        Rat lim2 = Rat(stage) * Rat(stage);
                        Point c = Point::product(tc, t);
                        Rat d2 = squared_distance(space, c, b.cover.comps[comp].basepoint);
                        if (d2 > lim2) continue;
                        if (stage > 1 && d2 <= Rat(stage - 1) * Rat(stage - 1)) continue;
                        if (b.point_covered(comp, c)) continue;
                        b.add_orbit(comp, c, eps, int(stage));
                    }
                }
            }
            break;
        }
    }
}

GoodCover finish(Builder& b) {
    // deterministic ball order: sort, remap orbit ids by first appearance
    std::sort(b.cover.balls.begin(), b.cover.balls.end(), [](const CoverBall& x, const CoverBall& y) {
        if (x.comp != y.comp) return x.comp < y.comp;
        auto c = x.center <=> y.center;
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        return x.radius < y.radius;
    });
    std::map<int, int> orbit_remap;
    for (auto& ball : b.cover.balls) {
        auto it = orbit_remap.find(ball.orbit);
        if (it == orbit_remap.end()) {
            int id = int(orbit_remap.size());
            orbit_remap[ball.orbit] = id;
            ball.orbit = id;
        } else {
            ball.orbit = it->second;
        }
    }
    return std::move(b.cover);
}

}  // namespace

GoodCover build_good_cover(const GroupSpec& g, const Rat& window_R) {
    if (window_R <= 0) throw std::invalid_argument("window radius must be positive");
    Builder b;
    b.grp = &g;
    b.cover.window_R = window_R;
    b.cover.keep_R = window_R + 1;
    CoverComponent comp;
    comp.space = g.space;
    comp.basepoint = default_basepoint(g.space);
    comp.label = "X";
    b.cover.comps.push_back(comp);
    Rat bound_gen = 2 * b.cover.keep_R + 2;
    for (const auto& e : enumerate_elements(g, bound_gen, comp.basepoint))
        b.cover.actions.push_back(cover_action(b.cover, g, nullptr, e));
    b.prepare();
    run_component_cover(b, 0);
    return finish(b);
}

GoodCover build_axes_cover(const GroupSpec& g, const AxesSpace& axes, const Rat& window_R) {
    if (window_R <= 0) throw std::invalid_argument("window radius must be positive");
    Builder b;
    b.grp = &g;
    b.axes = &axes;
    b.cover.is_axes_cover = true;
    b.cover.window_R = window_R;
    b.cover.keep_R = window_R + 1;
    build_components_for_axes(axes, &b.cover);
    if (b.cover.comps.empty()) throw std::invalid_argument("axes cover: empty axis space");
    Rat bound_gen = 2 * b.cover.keep_R + 2;
    // tree covers need the window that defines the deepest fixed level
    for (const auto& comp : b.cover.comps) {
        if (comp.space.kind == SpaceKind::Tree) {
            Rat deep = Rat(Int(1) << comp.space.tree_depth);
            if (deep > bound_gen) bound_gen = deep;
        }
    }
    for (const auto& e : enumerate_elements(g, bound_gen, default_basepoint(g.space)))
        b.cover.actions.push_back(cover_action(b.cover, g, &axes, e));
    b.prepare();
    for (size_t k = 0; k < b.cover.comps.size(); ++k) run_component_cover(b, int(k));
    return finish(b);
}

// ---- verification ------------------------------------------------------------------

CoverCheckReport verify_good_cover(const GoodCover& cover, const GroupSpec& g,
                                   const AxesSpace* axes, const Rat& check_bound,
                                   RatSampler& rng) {
    CoverCheckReport rep;
    std::ostringstream detail;
    auto elems = enumerate_elements(g, check_bound, default_basepoint(g.space));
    rep.elements_checked = long(elems.size());

    for (const auto& e : elems) {
        CoverAction act = cover_action(cover, g, axes, e);
        for (size_t v = 0; v < cover.balls.size(); ++v) {
            const CoverBall& ball = cover.balls[v];
            int comp2 = act.to[ball.comp];
            const ModelSpace& sp2 = cover.comps[comp2].space;
            Point c2 = act.map[ball.comp].apply(cover.comps[ball.comp].space, ball.center);
            int img = cover.find_ball(comp2, c2, ball.radius);
            // condition 1, windowed: the image must be present unless it left the window
            if (img < 0) {
                Rat d2 = squared_distance(sp2, c2, cover.comps[comp2].basepoint);
                if (d2 <= cover.keep_R * cover.keep_R) {
                    rep.invariance_ok = false;
                    if (detail.tellp() < 300)
                        detail << "missing image of ball " << v << " under " << e.describe() << "; ";
                } else {
                    ++rep.invariance_censored;
                }
            }
            // condition 2: gamma B meets B => gamma B = B
            if (comp2 == ball.comp) {
                Rat d2 = squared_distance(sp2, c2, ball.center);
                if (d2 < (2 * ball.radius) * (2 * ball.radius) && d2 != 0) {
                    rep.disjointness_ok = false;
                    if (detail.tellp() < 300)
                        detail << "ball " << v << " meets its translate under " << e.describe() << "; ";
                }
            }
        }
    }

    // epsilon audit: radii positive, dyadic, <= 1/4
    for (const auto& ball : cover.balls)
        if (ball.radius <= 0 || ball.radius > rat(1, 4)) rep.epsilon_ok = false;

    // sampled coverage audit of the window
    for (int comp = 0; comp < int(cover.comps.size()); ++comp) {
        const ModelSpace& sp = cover.comps[comp].space;
        for (int it = 0; it < 64; ++it) {
            Point p;
            if (sp.kind == SpaceKind::Euclidean) {
                VecQ y(sp.dim);
                long range = cover.window_R.get_num().get_si() / std::max<long>(1, cover.window_R.get_den().get_si());
                for (int i = 0; i < sp.dim; ++i) y[i] = rng.symmetric(std::max(1L, range));
                p = Point::euclidean(y);
            } else {
                unsigned lvl = unsigned(rng.index(sp.tree_depth + 1));
                std::vector<uint8_t> addr(lvl);
                for (auto& bbit : addr) bbit = uint8_t(rng.index(2));
                Point tp = Point::tree_node(addr);
                if (sp.kind == SpaceKind::Tree) p = tp;
                else p = Point::product(tp, rng.symmetric(1));
            }
            Rat d2 = squared_distance(sp, p, cover.comps[comp].basepoint);
            if (d2 > cover.window_R * cover.window_R) continue;
            ++rep.coverage_probes;
            bool inside = false;
            for (const auto& ball : cover.balls) {
                if (ball.comp != comp) continue;
                if (squared_distance(sp, ball.center, p) < ball.radius * ball.radius) {
                    inside = true;
                    break;
                }
            }
            if (!inside) {
                rep.coverage_ok = false;
                if (detail.tellp() < 300) detail << "uncovered window point " << p.describe() << "; ";
            }
        }
    }
    rep.detail = detail.str();
    return rep;
}

}  // namespace cat0

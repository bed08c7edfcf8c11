#include "cat0/line_space.hpp"

#include <algorithm>
#include <sstream>

namespace cat0 {

// ---- parallel classes -------------------------------------------------------

ParallelClass parallel_class(const ModelSpace& s, const Line& c) {
    ParallelClass pc;
    pc.kind = c.kind;
    if (c.kind == SpaceKind::Euclidean) {
        pc.dir = c.dir;
        // kernel of the row d^T G
        VecQ d = c.dir_q();
        MatQ row(1, VecQ(s.dim));
        for (int j = 0; j < s.dim; ++j) {
            Rat acc = 0;
            for (int i = 0; i < s.dim; ++i) acc += d[i] * s.gram[i][j];
            row[0][j] = acc;
        }
        pc.basis = kernel_basis(row);
        int m = int(pc.basis.size());
        MatQ gp(m, VecQ(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) gp[i][j] = bilinear(s.gram, pc.basis[i], pc.basis[j]);
        pc.class_space = ModelSpace::euclidean_with_gram(m, gp);
    } else {
        // every vertical line is parallel to every other: one class, X_c^0 = T-bar
        pc.class_space = ModelSpace::tree(s.tree_depth, s.compactified);
    }
    return pc;
}

bool ParallelClass::same_class(const Line& l) const {
    if (l.kind != kind) return false;
    if (kind == SpaceKind::Euclidean) return l.dir == dir;
    return true;
}

VecQ ParallelClass::line_to_coords(const Line& l) const {
    size_t n = l.anchor.size(), m = basis.size();
    MatQ a(n, VecQ(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) a[i][j] = basis[j][i];
    auto y = solve(a, l.anchor);
    if (!y) throw std::logic_error("line anchor outside its class hyperplane");
    return *y;
}

Line ParallelClass::coords_to_line(const ModelSpace& ambient, const VecQ& y) const {
    VecQ p(ambient.dim, Rat(0));
    for (size_t j = 0; j < basis.size(); ++j) p = vec_add(p, vec_scale(y[j], basis[j]));
    VecQ d(dir.size());
    for (size_t i = 0; i < dir.size(); ++i) d[i] = Rat(dir[i]);
    return Line::euclidean(ambient, p, d);
}

Point ParallelClass::line_to_point(const Line& l) const {
    if (kind == SpaceKind::Euclidean) return Point::euclidean(line_to_coords(l));
    Point p;
    p.kind = SpaceKind::Tree;
    p.tree = l.base;
    return p;
}

Line ParallelClass::point_to_line(const ModelSpace& ambient, const Point& p) const {
    if (kind == SpaceKind::Euclidean) return coords_to_line(ambient, p.coords);
    return Line::vertical(p.tree);
}

std::optional<Rat> flat_strip_distance_sq(const ModelSpace& s, const Line& a, const Line& b) {
    if (a.kind != b.kind) throw domain_mismatch("flat_strip_distance: mixed line variants");
    if (a.kind == SpaceKind::Euclidean) {
        if (a.dir != b.dir) return std::nullopt;  // not parallel
        VecQ d = vec_sub(a.anchor, b.anchor);
        return bilinear(s.gram, d, d);
    }
    Rat d = tree_distance(a.base, b.base);
    return d * d;
}

// ---- axes enumeration -------------------------------------------------------

namespace {

// Canonicalize an affine piece (p0, basis) so equal subsets compare equal:
// reduce the basis to RREF and subtract the pivot components from p0.
FixedSet canonical_affine(VecQ p0, std::vector<VecQ> basis) {
    size_t n = p0.size();
    MatQ rows;
    for (auto& b : basis) rows.push_back(b);
    // row reduce
    size_t rank = 0;
    std::vector<int> pivots;
    for (size_t col = 0; col < n && rank < rows.size(); ++col) {
        size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[rank]);
        Rat inv = Rat(1) / rows[rank][col];
        for (auto& x : rows[rank]) x *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            Rat f = rows[i][col];
            for (size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[rank][j];
        }
        pivots.push_back(int(col));
        ++rank;
    }
    rows.resize(rank);
    for (size_t i = 0; i < rank; ++i) {
        Rat f = p0[pivots[i]];
        if (f != 0)
            for (size_t j = 0; j < n; ++j) p0[j] -= f * rows[i][j];
    }
    return FixedSet::affine(std::move(p0), std::move(rows));
}

bool piece_contains(const ModelSpace& cls_space, const FixedSet& piece, const VecQ& y) {
    Point p = Point::euclidean(y);
    return fixed_set_contains(cls_space, piece, p);
}

}  // namespace

bool AxisClassSet::contains_point(const Point& class_point) const {
    if (full) return true;
    if (cls.kind == SpaceKind::Euclidean) {
        for (const auto& piece : pieces)
            if (piece_contains(cls.class_space, piece, class_point.coords)) return true;
        return false;
    }
    if (!cutoff) return false;
    return !class_point.tree.boundary && class_point.tree.rho <= *cutoff;
}

int AxesSpace::class_index(const ParallelClass& c) const {
    for (size_t i = 0; i < classes.size(); ++i)
        if (classes[i].cls == c) return int(i);
    return -1;
}

AxesSpace enumerate_axes(const GroupSpec& g, const Rat& bound) {
    if (bound <= 0) throw std::invalid_argument("enumerate_axes: bound must be positive");
    AxesSpace out;
    out.ambient = g.space;
    auto elems = enumerate_elements(g, bound, default_basepoint(g.space));
    for (const auto& e : elems) {
        if (e.is_identity()) continue;
        IsometryClass cls = classify(g.space, e);
        if (cls.elliptic) continue;
        const Line& ax = *cls.axis;
        ParallelClass pc = parallel_class(g.space, ax);
        int idx = out.class_index(pc);
        if (idx < 0) {
            AxisClassSet set;
            set.cls = pc;
            out.classes.push_back(std::move(set));
            idx = int(out.classes.size()) - 1;
        }
        AxisClassSet& set = out.classes[idx];
        if (set.witnesses.size() < 16 &&
            std::find(set.witnesses.begin(), set.witnesses.end(), ax) == set.witnesses.end())
            set.witnesses.push_back(ax);

        if (g.space.kind == SpaceKind::Euclidean) {
            if (set.full) continue;
            // axes of e = lines through the minimal set in the axis direction;
            // as class points they form an affine piece
            const FixedSet& min_set = cls.min_set;
            VecQ y0 = pc.line_to_coords(Line::euclidean(g.space, min_set.p0, ax.dir_q()));
            std::vector<VecQ> dirs;
            for (const auto& b : min_set.basis) {
                Line shifted = Line::euclidean(g.space, vec_add(min_set.p0, b), ax.dir_q());
                VecQ dy = vec_sub(pc.line_to_coords(shifted), y0);
                bool zero = true;
                for (const Rat& c : dy)
                    if (c != 0) zero = false;
                if (!zero) dirs.push_back(dy);
            }
            FixedSet piece = canonical_affine(y0, dirs);
            if (int(piece.basis.size()) == pc.class_space.dim) {
                set.full = true;
                set.pieces.clear();
            } else if (std::find(set.pieces.begin(), set.pieces.end(), piece) == set.pieces.end()) {
                set.pieces.push_back(piece);
            }
        } else {
            // axes of gamma^k = {x} x R over the fixed subtree of the odometer part
            Rat cut = cls.min_set.cutoff;
            if (!set.cutoff || cut > *set.cutoff) set.cutoff = cut;
        }
    }
    // deterministic class order
    std::sort(out.classes.begin(), out.classes.end(),
              [](const AxisClassSet& a, const AxisClassSet& b) { return a.cls.dir < b.cls.dir; });
    return out;
}

AxesSpace axes_choice(const AxesSpace& full, const std::string& choice) {
    if (choice == "full" || choice.empty()) return full;
    if (choice == "root-line") {
        AxesSpace out;
        out.ambient = full.ambient;
        for (const auto& c : full.classes) {
            if (c.cls.kind == SpaceKind::Euclidean) continue;
            AxisClassSet set;
            set.cls = c.cls;
            set.cutoff = Rat(0);  // the root only
            set.witnesses = {Line::vertical(TreePoint{{}, Rat(0), false})};
            out.classes.push_back(std::move(set));
        }
        if (out.classes.empty()) throw std::invalid_argument("root-line choice needs the tree example");
        return out;
    }
    throw std::invalid_argument("unknown axes choice: " + choice);
}

// ---- induced class maps -----------------------------------------------------

ClassMap induced_class_map(const ModelSpace& ambient, const AxesSpace& axes, int from_class,
                           const Isometry& g) {
    ClassMap cm;
    cm.from = from_class;
    const ParallelClass& from = axes.classes[from_class].cls;
    if (ambient.kind != SpaceKind::Euclidean) {
        cm.to = from_class;
        cm.map = Isometry::tree_odometer(g.tree_shift);
        cm.sheet_sign = 1;
        return cm;
    }
    Line rep = from.coords_to_line(ambient, VecQ(from.class_space.dim, Rat(0)));
    Line img = g.apply_line(ambient, rep);
    ParallelClass to = parallel_class(ambient, img);
    cm.to = axes.class_index(to);
    if (cm.to < 0) throw std::logic_error("class image outside the enumerated axes window");
    const ParallelClass& toc = axes.classes[cm.to].cls;
    VecQ t = toc.line_to_coords(img);
    int m = from.class_space.dim;
    MatQ a(m, VecQ(m));
    for (int j = 0; j < m; ++j) {
        VecQ e(m, Rat(0));
        e[j] = 1;
        Line lj = from.coords_to_line(ambient, e);
        VecQ yj = toc.line_to_coords(g.apply_line(ambient, lj));
        for (int i = 0; i < m; ++i) a[i][j] = yj[i] - t[i];
    }
    cm.map = Isometry::euclidean(std::move(a), std::move(t));
    cm.sheet_sign = g.orientation_sign(ambient, rep);
    return cm;
}

std::optional<Rat> DirectedAxes::distance_sq(const Pt& a, const Pt& b) const {
    if (a.class_idx != b.class_idx || a.sign != b.sign) return std::nullopt;
    const ModelSpace& cs = base->classes[a.class_idx].cls.class_space;
    return squared_distance(cs, a.class_point, b.class_point);
}

// ---- well-behavedness -------------------------------------------------------

namespace {

Point sample_class_point(const AxisClassSet& set, RatSampler& rng) {
    if (set.cls.kind == SpaceKind::Euclidean) {
        int m = set.cls.class_space.dim;
        if (set.full) {
            VecQ y(m);
            for (int i = 0; i < m; ++i) y[i] = rng.symmetric(4);
            return Point::euclidean(y);
        }
        const FixedSet& piece = set.pieces[rng.index(set.pieces.size())];
        VecQ y = piece.p0;
        for (const auto& b : piece.basis) y = vec_add(y, vec_scale(rng.symmetric(4), b));
        return Point::euclidean(y);
    }
    // subtree point: a node at depth <= cutoff
    unsigned max_level = 0;
    while (TreePoint::node_depth(max_level + 1) <= *set.cutoff) ++max_level;
    unsigned level = unsigned(rng.index(max_level + 1));
    std::vector<uint8_t> addr(level);
    for (auto& b : addr) b = uint8_t(rng.index(2));
    return Point::tree_node(addr);
}

}  // namespace

WellBehavedReport well_behaved_check(const AxesSpace& axes, const GroupSpec& g, const Rat& bound,
                                     RatSampler& rng) {
    WellBehavedReport rep;
    std::ostringstream detail;

    // invariance: each generator maps the class description onto the target's
    auto mapped_piece = [&](const FixedSet& piece, const Isometry& m) {
        VecQ p0 = vec_add(mat_apply(m.o, piece.p0), m.v);
        std::vector<VecQ> dirs;
        for (const auto& b : piece.basis) dirs.push_back(mat_apply(m.o, b));
        return canonical_affine(p0, dirs);
    };
    for (const auto& gen : g.generators) {
        for (size_t ci = 0; ci < axes.classes.size() && rep.invariant; ++ci) {
            const AxisClassSet& set = axes.classes[ci];
            if (set.is_empty()) continue;
            ClassMap cm = induced_class_map(g.space, axes, int(ci), gen);
            const AxisClassSet& tgt = axes.classes[cm.to];
            if (set.cls.kind != SpaceKind::Euclidean) {
                // odometer preserves depth, so the cutoff description is carried unchanged
                if (!tgt.cutoff || *tgt.cutoff != *set.cutoff) {
                    rep.invariant = false;
                    detail << "tree cutoff not invariant under " << gen.describe() << "; ";
                }
                continue;
            }
            if (set.full != tgt.full) {
                rep.invariant = false;
                detail << "class fullness not invariant under " << gen.describe() << "; ";
                continue;
            }
            if (!set.full) {
                std::vector<FixedSet> img;
                for (const auto& piece : set.pieces) img.push_back(mapped_piece(piece, cm.map));
                auto key = [](const FixedSet& f) { return std::make_pair(f.p0, f.basis); };
                std::vector<std::pair<VecQ, std::vector<VecQ>>> a, b;
                for (const auto& p : img) a.push_back(key(p));
                for (const auto& p : tgt.pieces) b.push_back(key(p));
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                if (a != b) {
                    rep.invariant = false;
                    detail << "piece set not invariant under " << gen.describe() << "; ";
                }
            }
        }
    }

    // component-wise convexity: sampled midpoints stay inside
    for (const auto& set : axes.classes) {
        if (set.is_empty()) continue;
        bool convex_desc = set.full || set.cutoff || set.pieces.size() == 1;
        for (int it = 0; it < 32 && rep.componentwise_convex; ++it) {
            Point a = sample_class_point(set, rng);
            Point b = sample_class_point(set, rng);
            Point mid = geodesic_point(set.cls.class_space, a, b, rng.unit());
            if (!set.contains_point(mid)) {
                rep.componentwise_convex = false;
                detail << "geodesic leaves the axis set at " << mid.describe() << "; ";
            }
        }
        if (!convex_desc && set.pieces.size() > 1 && rep.componentwise_convex) {
            // distinct affine pieces: check their pairwise midpoints explicitly
            for (size_t i = 0; i < set.pieces.size() && rep.componentwise_convex; ++i)
                for (size_t j = i + 1; j < set.pieces.size(); ++j) {
                    Point a = Point::euclidean(set.pieces[i].p0);
                    Point b = Point::euclidean(set.pieces[j].p0);
                    Point mid = geodesic_point(set.cls.class_space, a, b, rat(1, 2));
                    if (!set.contains_point(mid)) {
                        rep.componentwise_convex = false;
                        detail << "midpoint of two axis pieces is not an axis; ";
                        break;
                    }
                }
        }
    }

    // closed at scale 2^{-D}: probe limit candidates just outside the set
    unsigned depth = axes.ambient.tree_depth;
    Rat res = dyadic(depth);
    for (const auto& set : axes.classes) {
        if (set.cls.kind == SpaceKind::Euclidean || !set.cutoff) continue;
        // deepest allowed level, then the boundary marker below it
        unsigned lvl = 0;
        while (lvl < depth && TreePoint::node_depth(lvl + 1) <= *set.cutoff) ++lvl;
        std::vector<uint8_t> addr(depth, 0);
        Point probe = Point::tree_boundary(addr, depth);
        Rat gap = Rat(1) - TreePoint::node_depth(lvl);  // distance from the deepest axis to the probe
        if (!set.contains_point(probe) && gap <= res) {
            rep.closed_at_scale = false;
            detail << "axis at level " << lvl << " lies within 2^-" << depth
                   << " of the non-axis boundary line; ";
        }
    }

    // meets every axis-bearing component
    AxesSpace full_axes = enumerate_axes(g, bound);
    for (const auto& fc : full_axes.classes) {
        if (fc.is_empty()) continue;
        int idx = axes.class_index(fc.cls);
        if (idx < 0 || axes.classes[idx].is_empty()) {
            rep.meets_components = false;
            detail << "axis-bearing class has no representative in the chosen set; ";
        }
    }

    rep.detail = detail.str();
    return rep;
}

}  // namespace cat0

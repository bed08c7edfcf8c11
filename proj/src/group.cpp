#include "cat0/group.hpp"

#include <algorithm>
#include <map>

namespace cat0 {

namespace {

MatQ mat2(long a, long b, long c, long d) {
    return {{rat(a), rat(b)}, {rat(c), rat(d)}};
}

VecQ vec2(const Rat& x, const Rat& y) { return {x, y}; }

Isometry iso2(MatQ m, VecQ t) { return Isometry::euclidean(std::move(m), std::move(t)); }

// Rational lower bound for the smallest eigenvalue of a PD matrix: the
// diagonal entry (n=1), det/trace (n=2), det/trace^2 (n=3).
Rat pd_lower_bound(const MatQ& g) {
    size_t n = g.size();
    if (n == 1) return g[0][0];
    Rat tr = 0;
    for (size_t i = 0; i < n; ++i) tr += g[i][i];
    Rat det;
    if (n == 2) {
        det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        return det / tr;
    }
    det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
          g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
          g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    return det / (tr * tr);
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"p1", "p2", "pm", "pg", "cm", "pmm", "p4", "p3", "p6", "tree-odometer"};
}

GroupSpec group_preset(const std::string& name, unsigned tree_depth) {
    GroupSpec g;
    if (name == "tree-odometer") {
        g.space = ModelSpace::tree_times_line(tree_depth);
        g.preset = name;
        g.tree_group = true;
        g.generators = {Isometry::product_odometer(1, Rat(1))};
        return g;
    }

    MatQ I = mat2(1, 0, 0, 1), NI = mat2(-1, 0, 0, -1);
    MatQ MY = mat2(1, 0, 0, -1);   // (x, y) -> (x, -y)
    MatQ MX = mat2(-1, 0, 0, 1);   // (x, y) -> (-x, y)
    MatQ R90 = mat2(0, -1, 1, 0);
    VecQ zero = vec2(rat(0), rat(0));
    VecQ e1 = vec2(rat(1), rat(0)), e2 = vec2(rat(0), rat(1));

    g.space = ModelSpace::euclidean(2);
    g.preset = name;
    g.crystallographic = true;
    g.lattice = {e1, e2};

    if (name == "p1") {
        g.coset_reps = {iso2(I, zero)};
        g.generators = {iso2(I, e1), iso2(I, e2)};
    } else if (name == "p2") {
        g.coset_reps = {iso2(I, zero), iso2(NI, zero)};
        g.generators = {iso2(I, e1), iso2(I, e2), iso2(NI, zero)};
    } else if (name == "pm") {
        g.coset_reps = {iso2(I, zero), iso2(MY, zero)};
        g.generators = {iso2(I, e1), iso2(I, e2), iso2(MY, zero)};
    } else if (name == "pg") {
        g.coset_reps = {iso2(I, zero), iso2(MY, vec2(rat(1, 2), rat(0)))};
        g.generators = {iso2(I, e2), iso2(MY, vec2(rat(1, 2), rat(0)))};
    } else if (name == "cm") {
        g.lattice = {e1, vec2(rat(1, 2), rat(1, 2))};
        g.coset_reps = {iso2(I, zero), iso2(MY, zero)};
        g.generators = {iso2(I, e1), iso2(I, vec2(rat(1, 2), rat(1, 2))), iso2(MY, zero)};
    } else if (name == "pmm") {
        g.coset_reps = {iso2(I, zero), iso2(NI, zero), iso2(MY, zero), iso2(MX, zero)};
        g.generators = {iso2(I, e1), iso2(I, e2), iso2(MY, zero), iso2(MX, zero)};
    } else if (name == "p4") {
        MatQ R180 = mat_mul(R90, R90), R270 = mat_mul(R180, R90);
        g.coset_reps = {iso2(I, zero), iso2(R90, zero), iso2(R180, zero), iso2(R270, zero)};
        g.generators = {iso2(I, e1), iso2(I, e2), iso2(R90, zero)};
    } else if (name == "p3" || name == "p6") {
        // integral hexagonal basis: |u1| = |u2| = 1, angle 120 degrees
        MatQ hex = {{rat(1), rat(-1, 2)}, {rat(-1, 2), rat(1)}};
        g.space = ModelSpace::euclidean_with_gram(2, hex);
        MatQ R3 = mat2(0, -1, 1, -1);
        if (name == "p3") {
            g.coset_reps = {iso2(I, zero), iso2(R3, zero), iso2(mat_mul(R3, R3), zero)};
            g.generators = {iso2(I, e1), iso2(I, e2), iso2(R3, zero)};
        } else {
            MatQ R6 = mat2(1, -1, 1, 0);
            MatQ m = I;
            g.coset_reps.clear();
            for (int i = 0; i < 6; ++i) {
                g.coset_reps.push_back(iso2(m, zero));
                m = mat_mul(R6, m);
            }
            g.generators = {iso2(I, e1), iso2(I, e2), iso2(R6, zero)};
        }
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return g;
}

Point default_basepoint(const ModelSpace& s) {
    switch (s.kind) {
        case SpaceKind::Euclidean: return Point::euclidean(VecQ(s.dim, Rat(0)));
        case SpaceKind::Tree: return Point::tree_node({});
        case SpaceKind::Product: return Point::product(Point::tree_node({}), Rat(0));
    }
    throw std::logic_error("unreachable");
}

std::vector<Isometry> enumerate_elements(const GroupSpec& g, const Rat& bound,
                                         const Point& basepoint) {
    if (bound < 0) throw std::invalid_argument("enumerate_elements: negative bound");
    std::vector<Isometry> out;
    Rat bound2 = bound * bound;

    if (g.tree_group) {
        // gamma^k displaces (x,t) by sqrt(d_T(x, x+k)^2 + k^2) >= |k|
        Int kmax = bound.get_num() / bound.get_den();
        for (Int k = -kmax; k <= kmax; ++k) {
            Isometry e = Isometry::product_odometer(k, Rat(k));
            Rat d2 = squared_distance(g.space, e.apply(g.space, basepoint), basepoint);
            if (d2 <= bound2) out.push_back(e);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    if (!g.crystallographic)
        throw std::invalid_argument("enumeration needs a preset (declared lattice or odometer)");

    int n = g.space.dim;
    // Gram of the lattice basis
    MatQ gl(g.lattice.size(), VecQ(g.lattice.size()));
    for (size_t i = 0; i < g.lattice.size(); ++i)
        for (size_t j = 0; j < g.lattice.size(); ++j)
            gl[i][j] = bilinear(g.space.gram, g.lattice[i], g.lattice[j]);
    Rat cmin = pd_lower_bound(gl);

    for (const auto& rep : g.coset_reps) {
        VecQ off = vec_sub(vec_add(mat_apply(rep.o, basepoint.coords), rep.v), basepoint.coords);
        // need |off + U m|_G <= bound; box: |m_i| <= sqrt((bound + |off|)^2 / cmin)
        Rat off2 = bilinear(g.space.gram, off, off);
        Rat reach2 = 2 * (bound2 + off2);  // (bound + |off|)^2 <= 2 bound^2 + 2 off^2
        Int box = ceil_sqrt(reach2 / cmin);
        std::vector<long> idx(g.lattice.size(), 0);
        long b = box.get_si();
        std::vector<long> cur(g.lattice.size(), -b);
        while (true) {
            VecQ lam(n, Rat(0));
            for (size_t i = 0; i < g.lattice.size(); ++i)
                lam = vec_add(lam, vec_scale(Rat(cur[i]), g.lattice[i]));
            VecQ disp = vec_add(off, lam);
            if (bilinear(g.space.gram, disp, disp) <= bound2)
                out.push_back(Isometry::euclidean(rep.o, vec_add(rep.v, lam)));
            size_t i = 0;
            while (i < cur.size() && cur[i] == b) {
                cur[i] = -b;
                ++i;
            }
            if (i == cur.size()) break;
            ++cur[i];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Rat> min_positive_displacement_sq(const ModelSpace& s,
                                                const std::vector<Isometry>& elems,
                                                const Point& x) {
    std::optional<Rat> best;
    for (const auto& e : elems) {
        if (e.fixes(s, x)) continue;
        Rat d2 = squared_distance(s, e.apply(s, x), x);
        if (d2 == 0) continue;  // depth-truncated boundary prefix; not a true fix
        if (!best || d2 < *best) best = d2;
    }
    return best;
}

// ---- 1-D line actions --------------------------------------------------------

std::optional<LineAction1D> line_action(const ModelSpace& s, const Isometry& g, const Line& l) {
    if (l.kind == SpaceKind::Euclidean) {
        VecQ od = mat_apply(g.o, l.dir_q());
        // od must be +- dir exactly
        int sigma = 0;
        VecQ d = l.dir_q();
        bool plus = true, minus = true;
        for (size_t i = 0; i < d.size(); ++i) {
            if (od[i] != d[i]) plus = false;
            if (od[i] != -d[i]) minus = false;
        }
        if (plus) sigma = 1;
        else if (minus) sigma = -1;
        else return std::nullopt;
        VecQ img = vec_add(mat_apply(g.o, l.anchor), g.v);
        VecQ w = vec_sub(img, l.anchor);
        // w must be parallel to dir: w = tau * dir
        Rat tau = 0;
        bool set = false;
        for (size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 0) {
                if (w[i] != 0) return std::nullopt;
                continue;
            }
            Rat t = w[i] / d[i];
            if (set && t != tau) return std::nullopt;
            tau = t;
            set = true;
        }
        return LineAction1D{g, sigma, tau};
    }
    // vertical line {x} x R: invariant iff the tree part genuinely fixes x
    // (the line shift only slides along the line)
    Isometry tree_part = Isometry::tree_odometer(g.tree_shift);
    ModelSpace ts = ModelSpace::tree(s.tree_depth, s.compactified);
    Point base;
    base.kind = SpaceKind::Tree;
    base.tree = l.base;
    if (!tree_part.fixes(ts, base)) return std::nullopt;
    return LineAction1D{g, 1, g.line_shift};
}

LineStabilizerReport line_stabilizer_image(const GroupSpec& g, const Line& l, const Rat& bound) {
    LineStabilizerReport rep;
    auto elems = enumerate_elements(g, bound, default_basepoint(g.space));
    for (const auto& e : elems) {
        auto act = line_action(g.space, e, l);
        if (!act) continue;
        rep.actions.push_back(*act);
        if (act->sigma == -1) rep.has_reversal = true;
        if (act->sigma == 1 && act->tau != 0) rep.has_translation = true;
        if (act->sigma == 1 && act->tau == 0) rep.kernel.push_back(e);
    }
    if (rep.has_reversal)
        rep.image = LineStabilizerReport::Image::InfiniteDihedral;
    else if (rep.has_translation)
        rep.image = LineStabilizerReport::Image::InfiniteCyclic;
    else {
        rep.image = LineStabilizerReport::Image::Trivial;
        rep.at_scale_only = true;  // a larger window may still reveal stabilizer elements
    }
    return rep;
}

// ---- batteries -----------------------------------------------------------------

std::vector<Subgroup> default_battery(const GroupSpec& g) {
    std::vector<Subgroup> rows;
    auto add = [&](const std::string& name, std::vector<Isometry> gens) {
        rows.push_back({name, std::move(gens)});
    };
    add("trivial", {});
    if (g.tree_group) {
        add("gamma-Z", {g.generators[0]});
        return rows;
    }
    const std::string& p = g.preset;
    MatQ I = mat2(1, 0, 0, 1), NI = mat2(-1, 0, 0, -1);
    MatQ MY = mat2(1, 0, 0, -1);
    VecQ zero = vec2(rat(0), rat(0));
    VecQ e1 = vec2(rat(1), rat(0)), e2 = vec2(rat(0), rat(1));

    bool has_rot2 = (p == "p2" || p == "pmm" || p == "p4" || p == "p6");
    bool has_mirror = (p == "pm" || p == "cm" || p == "pmm");
    bool has_glide = (p == "pm" || p == "pg" || p == "cm" || p == "pmm");

    if (has_rot2) add("rot2", {iso2(NI, zero)});
    if (p == "p4") add("rot4", {iso2(mat2(0, -1, 1, 0), zero)});
    if (p == "p3") add("rot3", {iso2(mat2(0, -1, 1, -1), zero)});
    if (p == "p6") {
        add("rot3", {iso2(mat2(0, -1, 1, -1), zero)});
        add("rot6", {iso2(mat2(1, -1, 1, 0), zero)});
    }
    if (has_mirror) add("mirror", {iso2(MY, zero)});
    add("translation-Z", {iso2(I, e1)});
    if (has_glide) {
        VecQ gv = (p == "pg") ? vec2(rat(1, 2), rat(0)) : e1;
        add("glide-Z", {iso2(MY, gv)});
    }
    if (p == "p2") {
        // point reflections at 0 and (1/2, 0) compose to the unit translation
        add("Dinf", {iso2(NI, zero), iso2(NI, e1)});
    } else if (has_mirror) {
        // parallel mirrors y = 0 and y = 1/2
        add("Dinf", {iso2(MY, zero), iso2(MY, e2)});
    }
    add("Z2", {iso2(I, e1), iso2(I, e2)});
    return rows;
}

}  // namespace cat0

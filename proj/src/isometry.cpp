#include "cat0/isometry.hpp"

#include <sstream>

namespace cat0 {

// ---- Line ------------------------------------------------------------------

std::vector<Int> primitive_direction(const VecQ& v, bool* flipped) {
    Int l = 1;
    for (const Rat& x : v) {
        Int d = x.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        l = l / g * d;
    }
    std::vector<Int> w(v.size());
    Int g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(l);
        w[i] = s.get_num();  // s has denominator 1
        Int a = abs(w[i]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    }
    if (g == 0) throw std::invalid_argument("primitive_direction: zero vector");
    for (auto& x : w) x /= g;
    // canonical sign: lexicographically least of {w, -w}
    std::vector<Int> neg(w.size());
    for (size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
    bool flip = std::lexicographical_compare(neg.begin(), neg.end(), w.begin(), w.end(),
                                             [](const Int& a, const Int& b) { return a < b; });
    if (flip) w = neg;
    if (flipped) *flipped = flip;
    return w;
}

Line Line::euclidean(const ModelSpace& s, const VecQ& point_on_line, const VecQ& direction) {
    Line l;
    l.kind = SpaceKind::Euclidean;
    l.dir = primitive_direction(direction);
    VecQ d = l.dir_q();
    Rat dd = bilinear(s.gram, d, d);
    Rat ad = bilinear(s.gram, point_on_line, d);
    l.anchor = vec_sub(point_on_line, vec_scale(ad / dd, d));
    return l;
}

Line Line::vertical(const TreePoint& base) {
    Line l;
    l.kind = SpaceKind::Product;
    l.base = base;
    return l;
}

VecQ Line::dir_q() const {
    VecQ d(dir.size());
    for (size_t i = 0; i < dir.size(); ++i) d[i] = Rat(dir[i]);
    return d;
}

Point Line::at(const Rat& s) const {
    if (kind == SpaceKind::Euclidean) {
        VecQ p = anchor;
        for (size_t i = 0; i < p.size(); ++i) p[i] += s * Rat(dir[i]);
        return Point::euclidean(p);
    }
    Point p;
    p.kind = SpaceKind::Product;
    p.tree = base;
    p.t = s;
    return p;
}

bool Line::operator==(const Line& o) const { return (*this <=> o) == std::strong_ordering::equal; }

std::strong_ordering Line::operator<=>(const Line& o) const {
    if (kind != o.kind) return kind <=> o.kind;
    if (kind == SpaceKind::Euclidean) {
        if (dir.size() != o.dir.size()) return dir.size() <=> o.dir.size();
        for (size_t i = 0; i < dir.size(); ++i) {
            int c = cmp(dir[i], o.dir[i]);
            if (c != 0) return c <=> 0;
        }
        for (size_t i = 0; i < anchor.size(); ++i) {
            int c = cmp(anchor[i], o.anchor[i]);
            if (c != 0) return c <=> 0;
        }
        return std::strong_ordering::equal;
    }
    int c = cmp(base.rho, o.base.rho);
    if (c != 0) return c <=> 0;
    if (base.addr != o.base.addr) return base.addr <=> o.base.addr;
    return base.boundary <=> o.base.boundary;
}

std::string Line::describe() const {
    std::ostringstream os;
    if (kind == SpaceKind::Euclidean) {
        os << "line dir (";
        for (size_t i = 0; i < dir.size(); ++i) os << (i ? "," : "") << dir[i].get_str();
        os << ") through (";
        for (size_t i = 0; i < anchor.size(); ++i) os << (i ? "," : "") << anchor[i].get_str();
        os << ")";
    } else {
        Point b;
        b.kind = SpaceKind::Tree;
        b.tree = base;
        os << "vertical line at " << b.describe();
    }
    return os.str();
}

// ---- Isometry ----------------------------------------------------------------

Isometry Isometry::euclidean(MatQ o, VecQ v) {
    Isometry g;
    g.kind = SpaceKind::Euclidean;
    g.o = std::move(o);
    g.v = std::move(v);
    return g;
}

Isometry Isometry::tree_odometer(const Int& shift) {
    Isometry g;
    g.kind = SpaceKind::Tree;
    g.tree_shift = shift;
    return g;
}

Isometry Isometry::product_odometer(const Int& shift, const Rat& line) {
    Isometry g;
    g.kind = SpaceKind::Product;
    g.tree_shift = shift;
    g.line_shift = line;
    return g;
}

Isometry Isometry::identity_for(const ModelSpace& s) {
    switch (s.kind) {
        case SpaceKind::Euclidean: return euclidean(identity(s.dim), VecQ(s.dim, Rat(0)));
        case SpaceKind::Tree: return tree_odometer(0);
        case SpaceKind::Product: return product_odometer(0, Rat(0));
    }
    throw std::logic_error("unreachable");
}

namespace {

Int addr_value(const std::vector<uint8_t>& addr) {
    Int a = 0;
    for (size_t i = addr.size(); i-- > 0;) a = 2 * a + int(addr[i]);
    return a;
}

std::vector<uint8_t> value_addr(Int a, size_t len) {
    std::vector<uint8_t> addr(len);
    for (size_t i = 0; i < len; ++i) {
        addr[i] = uint8_t(mpz_tstbit(a.get_mpz_t(), i));
    }
    return addr;
}

std::vector<uint8_t> odometer_addr(const std::vector<uint8_t>& addr, const Int& shift) {
    if (addr.empty()) return addr;
    Int mod = Int(1) << addr.size();
    Int a = addr_value(addr) + shift;
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    return value_addr(a, addr.size());
}

TreePoint odometer_tree_point(const TreePoint& p, const Int& shift) {
    TreePoint q = p;
    q.addr = odometer_addr(p.addr, shift);
    return q;
}

// Levels 0..D fixed by the odometer: v_2(shift), everything for shift = 0.
unsigned fixed_level(const Int& shift, unsigned depth) {
    if (shift == 0) return depth + 1;  // sentinel: fixes boundary too
    unsigned m = unsigned(mpz_scan1(shift.get_mpz_t(), 0));
    return std::min(m, depth);
}

}  // namespace

Point Isometry::apply(const ModelSpace& s, const Point& p) const {
    if (kind != s.kind || p.kind != s.kind) throw domain_mismatch("isometry/point variant mismatch");
    switch (kind) {
        case SpaceKind::Euclidean: {
            return Point::euclidean(vec_add(mat_apply(o, p.coords), v));
        }
        case SpaceKind::Tree: {
            Point q = p;
            q.tree = odometer_tree_point(p.tree, tree_shift);
            return q;
        }
        case SpaceKind::Product: {
            Point q = p;
            q.tree = odometer_tree_point(p.tree, tree_shift);
            q.t = p.t + line_shift;
            return q;
        }
    }
    throw std::logic_error("unreachable");
}

Isometry Isometry::compose(const ModelSpace& s, const Isometry& rhs) const {
    if (kind != rhs.kind) throw domain_mismatch("composing isometries of different variants");
    switch (kind) {
        case SpaceKind::Euclidean:
            return euclidean(mat_mul(o, rhs.o), vec_add(mat_apply(o, rhs.v), v));
        case SpaceKind::Tree:
            return tree_odometer(tree_shift + rhs.tree_shift);
        case SpaceKind::Product:
            return product_odometer(tree_shift + rhs.tree_shift, line_shift + rhs.line_shift);
    }
    throw std::logic_error("unreachable");
    (void)s;
}

Isometry Isometry::inverse(const ModelSpace& s) const {
    switch (kind) {
        case SpaceKind::Euclidean: {
            auto oi = cat0::inverse(o);
            if (!oi) throw std::invalid_argument("singular orthogonal part");
            return euclidean(*oi, vec_scale(Rat(-1), mat_apply(*oi, v)));
        }
        case SpaceKind::Tree:
            return tree_odometer(-tree_shift);
        case SpaceKind::Product:
            return product_odometer(-tree_shift, -line_shift);
    }
    throw std::logic_error("unreachable");
    (void)s;
}

bool Isometry::is_identity() const {
    switch (kind) {
        case SpaceKind::Euclidean: {
            for (size_t i = 0; i < o.size(); ++i)
                for (size_t j = 0; j < o.size(); ++j)
                    if (o[i][j] != (i == j ? 1 : 0)) return false;
            for (const Rat& x : v)
                if (x != 0) return false;
            return true;
        }
        case SpaceKind::Tree:
            return tree_shift == 0;
        case SpaceKind::Product:
            return tree_shift == 0 && line_shift == 0;
    }
    return false;
}

bool Isometry::fixes(const ModelSpace& s, const Point& p) const {
    switch (kind) {
        case SpaceKind::Euclidean:
            return apply(s, p) == p;
        case SpaceKind::Tree:
        case SpaceKind::Product: {
            if (kind == SpaceKind::Product && line_shift != 0) return false;
            if (p.tree.boundary) return tree_shift == 0;
            size_t level = p.tree.addr.size();
            if (tree_shift == 0) return true;
            return fixed_level(tree_shift, s.tree_depth) >= level;
        }
    }
    return false;
}

Line Isometry::apply_line(const ModelSpace& s, const Line& l) const {
    if (kind == SpaceKind::Euclidean) {
        VecQ p = vec_add(mat_apply(o, l.anchor), v);
        VecQ d = mat_apply(o, l.dir_q());
        return Line::euclidean(s, p, d);
    }
    return Line::vertical(odometer_tree_point(l.base, tree_shift));
}

int Isometry::orientation_sign(const ModelSpace& s, const Line& l) const {
    if (kind != SpaceKind::Euclidean) return +1;  // odometer shifts never reverse R
    bool flipped = false;
    primitive_direction(mat_apply(o, l.dir_q()), &flipped);
    (void)s;
    return flipped ? -1 : +1;
}

bool Isometry::operator==(const Isometry& o2) const {
    return (*this <=> o2) == std::strong_ordering::equal;
}

std::strong_ordering Isometry::operator<=>(const Isometry& rhs) const {
    if (kind != rhs.kind) return kind <=> rhs.kind;
    if (kind == SpaceKind::Euclidean) {
        for (size_t i = 0; i < o.size(); ++i)
            for (size_t j = 0; j < o.size(); ++j) {
                int c = cmp(o[i][j], rhs.o[i][j]);
                if (c != 0) return c <=> 0;
            }
        for (size_t i = 0; i < v.size(); ++i) {
            int c = cmp(v[i], rhs.v[i]);
            if (c != 0) return c <=> 0;
        }
        return std::strong_ordering::equal;
    }
    int c = cmp(tree_shift, rhs.tree_shift);
    if (c != 0) return c <=> 0;
    c = cmp(line_shift, rhs.line_shift);
    return c <=> 0;
}

std::string Isometry::describe() const {
    std::ostringstream os;
    if (kind == SpaceKind::Euclidean) {
        os << "[";
        for (size_t i = 0; i < o.size(); ++i) {
            os << (i ? ";" : "");
            for (size_t j = 0; j < o.size(); ++j) os << (j ? "," : "") << o[i][j].get_str();
        }
        os << "]+(";
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
        os << ")";
    } else {
        os << "odo(" << tree_shift.get_str();
        if (kind == SpaceKind::Product) os << ",t+" << line_shift.get_str();
        os << ")";
    }
    return os.str();
}

// ---- classification ----------------------------------------------------------

IsometryClass classify(const ModelSpace& s, const Isometry& g) {
    IsometryClass cls;
    switch (g.kind) {
        case SpaceKind::Euclidean: {
            int n = s.dim;
            // minimize |(O - I)x + v|^2_G via the normal equations
            MatQ omi = g.o;
            for (int i = 0; i < n; ++i) omi[i][i] -= 1;
            MatQ omt = mat_transpose(omi);
            MatQ a = mat_mul(omt, mat_mul(s.gram, omi));
            VecQ b = vec_scale(Rat(-1), mat_apply(omt, mat_apply(s.gram, g.v)));
            auto x0 = solve(a, b);
            if (!x0) throw std::logic_error("normal equations inconsistent");
            VecQ w = vec_add(mat_apply(omi, *x0), g.v);  // displacement on the min set
            bool zero = true;
            for (const Rat& c : w)
                if (c != 0) zero = false;
            auto ker = kernel_basis(omi);
            if (zero) {
                cls.elliptic = true;
                cls.fixed_point = Point::euclidean(*x0);
                cls.min_set = FixedSet::affine(*x0, ker);
            } else {
                cls.elliptic = false;
                cls.translation_length_sq = bilinear(s.gram, w, w);
                cls.axis = Line::euclidean(s, *x0, w);
                cls.min_set = FixedSet::affine(*x0, ker);
            }
            return cls;
        }
        case SpaceKind::Tree: {
            // rooted automorphisms always fix the root
            cls.elliptic = true;
            cls.fixed_point = Point::tree_node({});
            cls.min_set = FixedSet::subtree(
                g.tree_shift == 0 ? Rat(1) : TreePoint::node_depth(fixed_level(g.tree_shift, s.tree_depth)),
                false);
            return cls;
        }
        case SpaceKind::Product: {
            Rat cut = g.tree_shift == 0
                          ? Rat(1)
                          : TreePoint::node_depth(fixed_level(g.tree_shift, s.tree_depth));
            if (g.line_shift == 0) {
                cls.elliptic = true;
                cls.fixed_point = Point::product(Point::tree_node({}), Rat(0));
                cls.min_set = FixedSet::subtree(cut, true);
            } else {
                cls.elliptic = false;
                cls.translation_length_sq = g.line_shift * g.line_shift;
                cls.axis = Line::vertical(TreePoint{{}, Rat(0), false});
                cls.min_set = FixedSet::subtree(cut, true);
            }
            return cls;
        }
    }
    throw std::logic_error("unreachable");
}

FixedSet fixed_set(const ModelSpace& s, const std::vector<Isometry>& gens) {
    if (s.kind == SpaceKind::Euclidean) {
        int n = s.dim;
        MatQ a;
        VecQ b;
        for (const auto& g : gens) {
            for (int i = 0; i < n; ++i) {
                VecQ row(n);
                for (int j = 0; j < n; ++j) row[j] = g.o[i][j] - (i == j ? 1 : 0);
                a.push_back(row);
                b.push_back(-g.v[i]);
            }
        }
        if (a.empty()) return FixedSet::whole(s);
        auto x0 = solve(a, b);
        if (!x0) return FixedSet::empty();
        return FixedSet::affine(*x0, kernel_basis(a));
    }
    bool times_line = s.kind == SpaceKind::Product;
    Rat cut = 1;
    for (const auto& g : gens) {
        if (times_line && g.line_shift != 0) return FixedSet::empty();
        if (g.tree_shift != 0) {
            Rat c = TreePoint::node_depth(fixed_level(g.tree_shift, s.tree_depth));
            if (c < cut) cut = c;
        }
    }
    return FixedSet::subtree(cut, times_line);
}

}  // namespace cat0

#include "cat0/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace cat0 {

// ---- rational printing helpers (declared in rational.hpp) ----------------

std::string approx_decimal(const Rat& v, unsigned digits) {
    Int scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    Rat scaled = v * Rat(scale);
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    bool neg = fl < 0;
    Int a = neg ? Int(-fl) : fl;
    Int ip = a / scale, fp = a % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), digits - frac.size(), '0');
    std::string out = (neg ? "-" : "") + ip.get_str() + "." + frac;
    return out;
}

std::string approx_sqrt_decimal(const Rat& sq, unsigned digits) {
    if (sq < 0) throw std::invalid_argument("sqrt of negative");
    Int scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    // floor(sqrt(sq) * 10^digits) = floor(sqrt(sq * 10^{2digits})), computed on integers
    Rat scaled = sq * Rat(scale) * Rat(scale);
    Int q = scaled.get_num() / scaled.get_den();
    Int r = isqrt(q);
    Int ip = r / scale, fp = r % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), digits - frac.size(), '0');
    return ip.get_str() + "." + frac;
}

// ---- ModelSpace ----------------------------------------------------------

ModelSpace ModelSpace::euclidean(int n) {
    ModelSpace s;
    s.kind = SpaceKind::Euclidean;
    s.dim = n;
    s.gram = identity(n);
    return s;
}

ModelSpace ModelSpace::euclidean_with_gram(int n, MatQ g) {
    ModelSpace s;
    s.kind = SpaceKind::Euclidean;
    s.dim = n;
    s.gram = std::move(g);
    return s;
}

ModelSpace ModelSpace::tree(unsigned depth, bool compactified) {
    ModelSpace s;
    s.kind = SpaceKind::Tree;
    s.dim = 0;
    s.tree_depth = depth;
    s.compactified = compactified;
    return s;
}

ModelSpace ModelSpace::tree_times_line(unsigned depth, bool compactified) {
    ModelSpace s = tree(depth, compactified);
    s.kind = SpaceKind::Product;
    return s;
}

bool ModelSpace::operator==(const ModelSpace& o) const {
    return kind == o.kind && dim == o.dim && gram == o.gram &&
           tree_depth == o.tree_depth && compactified == o.compactified;
}

std::string ModelSpace::describe() const {
    std::ostringstream os;
    switch (kind) {
        case SpaceKind::Euclidean: os << "E" << dim; break;
        case SpaceKind::Tree: os << "T(D=" << tree_depth << (compactified ? ",cpt)" : ")"); break;
        case SpaceKind::Product: os << "T(D=" << tree_depth << (compactified ? ",cpt" : "") << ")xR"; break;
    }
    return os.str();
}

// ---- Point ---------------------------------------------------------------

Point Point::euclidean(VecQ c) {
    Point p;
    p.kind = SpaceKind::Euclidean;
    p.coords = std::move(c);
    return p;
}

Point Point::tree_node(const std::vector<uint8_t>& addr) {
    Point p;
    p.kind = SpaceKind::Tree;
    p.tree.addr = addr;
    p.tree.rho = TreePoint::node_depth(addr.size());
    return p;
}

Point Point::tree_interior(const std::vector<uint8_t>& addr, const Rat& rho) {
    Point p;
    p.kind = SpaceKind::Tree;
    p.tree = tree_point_at_depth(addr, rho, unsigned(addr.size()), false);
    return p;
}

Point Point::tree_boundary(const std::vector<uint8_t>& addr, unsigned depth) {
    if (addr.size() != depth) throw std::invalid_argument("boundary marker needs a depth-D address");
    Point p;
    p.kind = SpaceKind::Tree;
    p.tree.addr = addr;
    p.tree.rho = 1;
    p.tree.boundary = true;
    return p;
}

Point Point::product(Point tree_part, Rat tc) {
    if (tree_part.kind != SpaceKind::Tree) throw std::invalid_argument("product point needs a tree part");
    Point p;
    p.kind = SpaceKind::Product;
    p.tree = std::move(tree_part.tree);
    p.t = std::move(tc);
    return p;
}

bool Point::operator==(const Point& o) const {
    return (*this <=> o) == std::strong_ordering::equal;
}

std::strong_ordering Point::operator<=>(const Point& o) const {
    if (kind != o.kind) return kind <=> o.kind;
    if (kind == SpaceKind::Euclidean) {
        if (coords.size() != o.coords.size()) return coords.size() <=> o.coords.size();
        for (size_t i = 0; i < coords.size(); ++i) {
            int c = cmp(coords[i], o.coords[i]);
            if (c != 0) return c <=> 0;
        }
        return std::strong_ordering::equal;
    }
    int c = cmp(tree.rho, o.tree.rho);
    if (c != 0) return c <=> 0;
    if (tree.addr != o.tree.addr) return tree.addr <=> o.tree.addr;
    if (tree.boundary != o.tree.boundary) return tree.boundary <=> o.tree.boundary;
    if (kind == SpaceKind::Product) {
        int ct = cmp(t, o.t);
        if (ct != 0) return ct <=> 0;
    }
    return std::strong_ordering::equal;
}

std::string Point::describe() const {
    std::ostringstream os;
    if (kind == SpaceKind::Euclidean) {
        os << "(";
        for (size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i].get_str();
        os << ")";
        return os.str();
    }
    os << "[";
    for (uint8_t b : tree.addr) os << int(b);
    os << (tree.boundary ? "|inf" : "") << ";rho=" << tree.rho.get_str() << "]";
    if (kind == SpaceKind::Product) os << "x" << t.get_str();
    return os.str();
}

std::strong_ordering Ball::operator<=>(const Ball& o) const {
    auto c = center <=> o.center;
    if (c != std::strong_ordering::equal) return c;
    int cr = cmp(radius, o.radius);
    if (cr != 0) return cr <=> 0;
    return open <=> o.open;
}

// ---- membership ----------------------------------------------------------

bool contains(const ModelSpace& s, const Point& p) {
    if (s.kind != p.kind) return false;
    switch (s.kind) {
        case SpaceKind::Euclidean:
            return int(p.coords.size()) == s.dim;
        case SpaceKind::Tree:
        case SpaceKind::Product: {
            if (p.tree.addr.size() > s.tree_depth) return false;
            if (p.tree.boundary && !s.compactified) return false;
            if (p.tree.boundary && p.tree.addr.size() != s.tree_depth) return false;
            if (p.tree.rho < 0 || p.tree.rho > 1) return false;
            if (!p.tree.boundary) {
                size_t k = p.tree.addr.size();
                Rat lo = k == 0 ? Rat(0) : TreePoint::node_depth(k - 1);
                if (p.tree.rho > TreePoint::node_depth(k)) return false;
                if (k > 0 && p.tree.rho <= lo) return false;
                if (k == 0 && p.tree.rho != 0) return false;
            }
            return true;
        }
    }
    return false;
}

// ---- tree metric ---------------------------------------------------------

static size_t common_prefix(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    size_t n = std::min(a.size(), b.size());
    size_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

Rat tree_distance(const TreePoint& p, const TreePoint& q) {
    size_t m = common_prefix(p.addr, q.addr);
    if (m == std::min(p.addr.size(), q.addr.size())) {
        // one root path contains the other point
        return abs(p.rho - q.rho);
    }
    Rat rho_m = TreePoint::node_depth(m);
    return (p.rho - rho_m) + (q.rho - rho_m);
}

TreePoint tree_point_at_depth(const std::vector<uint8_t>& toward, const Rat& rho,
                              unsigned depth, bool boundary_ok) {
    if (rho < 0 || rho > 1) throw std::invalid_argument("tree depth out of range");
    TreePoint r;
    if (rho == 1) {
        if (!boundary_ok || toward.size() != depth)
            throw std::invalid_argument("boundary point needs full address and compactified space");
        r.addr = toward;
        r.rho = 1;
        r.boundary = true;
        return r;
    }
    // level bracket: smallest k with rho <= 1 - 2^{-k}
    size_t k = 0;
    while (rho > TreePoint::node_depth(k)) ++k;
    if (k > toward.size()) throw std::invalid_argument("address too short for requested depth");
    r.addr.assign(toward.begin(), toward.begin() + k);
    r.rho = rho;
    return r;
}

// ---- squared distance ----------------------------------------------------

Rat squared_distance(const ModelSpace& s, const Point& p, const Point& q) {
    if (p.kind != s.kind || q.kind != s.kind)
        throw domain_mismatch("squared_distance: point/space variant mismatch");
    switch (s.kind) {
        case SpaceKind::Euclidean: {
            VecQ d = vec_sub(p.coords, q.coords);
            return bilinear(s.gram, d, d);
        }
        case SpaceKind::Tree: {
            Rat d = tree_distance(p.tree, q.tree);
            return d * d;
        }
        case SpaceKind::Product: {
            Rat d = tree_distance(p.tree, q.tree);
            Rat dt = p.t - q.t;
            return d * d + dt * dt;
        }
    }
    throw domain_mismatch("unreachable");
}

// ---- geodesics -----------------------------------------------------------

static TreePoint tree_geodesic_point(const TreePoint& p, const TreePoint& q, const Rat& t,
                                     unsigned depth, bool compactified) {
    Rat total = tree_distance(p, q);
    if (total == 0) return p;
    Rat target = t * total;  // arc length from p
    size_t m = common_prefix(p.addr, q.addr);
    bool nested = (m == std::min(p.addr.size(), q.addr.size()));
    Rat rho_meet = nested ? std::min(p.rho, q.rho) : TreePoint::node_depth(m);
    Rat up = p.rho - rho_meet;  // ascent along p's root path
    if (target <= up) {
        return tree_point_at_depth(p.addr, p.rho - target, depth, compactified);
    }
    Rat down = target - up;  // descent along q's root path
    return tree_point_at_depth(q.addr, rho_meet + down, depth, compactified);
}

Point geodesic_point(const ModelSpace& s, const Point& p, const Point& q, const Rat& t) {
    if (t < 0 || t > 1) throw std::invalid_argument("geodesic parameter outside [0,1]");
    if (p.kind != s.kind || q.kind != s.kind)
        throw domain_mismatch("geodesic_point: point/space variant mismatch");
    if (p == q) return p;
    switch (s.kind) {
        case SpaceKind::Euclidean: {
            Point r = p;
            for (int i = 0; i < s.dim; ++i) r.coords[i] = p.coords[i] + t * (q.coords[i] - p.coords[i]);
            return r;
        }
        case SpaceKind::Tree: {
            Point r;
            r.kind = SpaceKind::Tree;
            r.tree = tree_geodesic_point(p.tree, q.tree, t, s.tree_depth, s.compactified);
            return r;
        }
        case SpaceKind::Product: {
            // product geodesic: affine parameter in both factors
            Point r;
            r.kind = SpaceKind::Product;
            r.tree = tree_geodesic_point(p.tree, q.tree, t, s.tree_depth, s.compactified);
            r.t = p.t + t * (q.t - p.t);
            return r;
        }
    }
    throw domain_mismatch("unreachable");
}

bool in_ball(const ModelSpace& s, const Ball& b, const Point& p) {
    Rat d2 = squared_distance(s, b.center, p);
    Rat r2 = b.radius * b.radius;
    return b.open ? d2 < r2 : d2 <= r2;
}

// ---- CAT(0) comparison check ---------------------------------------------

// Squared Euclidean distance between the comparison points of two points on
// the sides of the comparison triangle, from squared side lengths alone:
// for barycentric differences summing to zero,
//   |sum delta_i v_i|^2 = -1/2 sum_{i,j} delta_i delta_j |v_i - v_j|^2.
static Rat comparison_sq(const Rat sides_sq[3][3], const Rat bary_a[3], const Rat bary_b[3]) {
    Rat delta[3];
    for (int i = 0; i < 3; ++i) delta[i] = bary_a[i] - bary_b[i];
    Rat acc = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && delta[i] != 0 && delta[j] != 0) acc += delta[i] * delta[j] * sides_sq[i][j];
    return -acc / 2;
}

Cat0Report cat0_triangle_check(const ModelSpace& s, const Point& p, const Point& q,
                               const Point& r, long samples, RatSampler& rng) {
    const Point* v[3] = {&p, &q, &r};
    Rat sides_sq[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) sides_sq[i][j] = i == j ? Rat(0) : squared_distance(s, *v[i], *v[j]);

    Cat0Report rep;
    rep.samples = samples;
    bool first = true;
    for (long it = 0; it < samples; ++it) {
        // pick two sides (possibly equal) and rational parameters along them
        int sa = int(rng.index(3)), sb = int(rng.index(3));
        Rat ta = rng.unit(), tb = rng.unit();
        int a0 = sa, a1 = (sa + 1) % 3, b0 = sb, b1 = (sb + 1) % 3;
        Point xa = geodesic_point(s, *v[a0], *v[a1], ta);
        Point xb = geodesic_point(s, *v[b0], *v[b1], tb);
        Rat dx2 = squared_distance(s, xa, xb);

        Rat ba[3] = {Rat(0), Rat(0), Rat(0)}, bb[3] = {Rat(0), Rat(0), Rat(0)};
        ba[a0] = 1 - ta; ba[a1] += ta;
        bb[b0] = 1 - tb; bb[b1] += tb;
        Rat cmp2 = comparison_sq(sides_sq, ba, bb);

        Rat violation = dx2 - cmp2;
        if (first || violation > rep.worst_violation) rep.worst_violation = violation;
        first = false;
        if (violation > 0) rep.ok = false;
    }
    return rep;
}

}  // namespace cat0

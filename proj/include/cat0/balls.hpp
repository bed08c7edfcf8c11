#ifndef CAT0_BALLS_HPP
#define CAT0_BALLS_HPP

#include <optional>
#include <vector>

#include "cat0/geometry.hpp"

namespace cat0 {

// Result of exactly minimizing max_i (d(x, c_i)^2 - r_i^2) over the space.
// The sign of min_power decides every nerve simplex:
//   min < 0  -> the open intersection is nonempty,
//   min = 0  -> the closed intersection is the single witness point,
//   min > 0  -> even the closed intersection is empty.
struct PowerOpt {
    Rat min_power;
    Point witness;
};

// Exact k-fold intersection test, respecting each ball's open/closed flag.
// Euclidean: Welzl-style support-set enumeration on the shifted (power)
// system; tree: Helly reduction to pairs; product: support-set solves on the
// cells of the union of pairwise center paths.
bool balls_intersect(const ModelSpace& s, const std::vector<Ball>& balls);

// The underlying optimization (used by balls_intersect and by reports).
PowerOpt power_min(const ModelSpace& s, const std::vector<Ball>& balls);

// -- fixed sets ------------------------------------------------------------

// Exact description of Fix_X(H) in a model space: an affine subspace over Q
// (Euclidean), the subtree of points at depth <= cutoff (tree), or such a
// subtree crossed with the line (product).  Whole space = affine with full
// basis / cutoff 1.
struct FixedSet {
    enum class Kind { Empty, Affine, Subtree, SubtreeTimesLine };
    Kind kind = Kind::Empty;
    // Affine
    VecQ p0;
    std::vector<VecQ> basis;
    // Subtree: points with rho <= cutoff
    Rat cutoff;

    static FixedSet empty() { return {}; }
    static FixedSet affine(VecQ p0, std::vector<VecQ> basis);
    static FixedSet subtree(const Rat& cutoff, bool times_line);
    static FixedSet whole(const ModelSpace& s);

    bool is_empty() const { return kind == Kind::Empty; }
    int affine_dim() const { return kind == Kind::Affine ? int(basis.size()) : -1; }
    bool operator==(const FixedSet& o) const;
};

// d(p, F)^2, exact.
Rat squared_distance_to(const ModelSpace& s, const FixedSet& f, const Point& p);

// Closest point of F (exact; unique by convexity).
Point project_to(const ModelSpace& s, const FixedSet& f, const Point& p);

bool fixed_set_contains(const ModelSpace& s, const FixedSet& f, const Point& p);

// Intersection of F with each ball, as a ball of the fixed set's own
// geometry: used both for the restricted intersection predicate and for
// identifying vertices of the restricted cover.  Two balls cut the same
// trace on F iff their projected centers and trace keys agree; the key is
// (r^2 - d(c,F)^2, 0) in the Euclidean case and (d(c,F), r) in the tree
// cases, where the restricted radius r - d(c,F) stays rational.
struct RestrictedBall {
    Point center;  // projection of the ball center onto F (ambient coords)
    Rat a, b;      // trace key
    bool open;
    bool reaches;
    bool same_trace(const RestrictedBall& o) const {
        return center == o.center && a == o.a && b == o.b;
    }
};

RestrictedBall restrict_ball(const ModelSpace& s, const FixedSet& f, const Ball& b);

// Is the intersection of the balls *within F* nonempty?  (All balls must
// reach F; callers filter by RestrictedBall::reaches first.)
bool balls_intersect_in(const ModelSpace& s, const FixedSet& f, const std::vector<Ball>& balls);

}  // namespace cat0

#endif

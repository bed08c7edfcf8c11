#ifndef CAT0_GEOMETRY_HPP
#define CAT0_GEOMETRY_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cat0/linalg.hpp"
#include "cat0/rational.hpp"

namespace cat0 {

struct domain_mismatch : std::runtime_error {
    explicit domain_mismatch(const std::string& what) : std::runtime_error(what) {}
};

enum class SpaceKind { Euclidean, Tree, Product };

// The two model-space families: Euclidean n-space over the rationals with a
// positive-definite rational Gram form (identity for the square-lattice
// groups, the hexagonal form for p3/p6), and the compactified weighted
// binary tree truncated at depth D, optionally crossed with a line.
//
// Tree metric: the edge from a level-(n-1) node into a level-n node has
// length 2^{-n}; a stored boundary marker sits at the end of the tail sum
// below its depth-D address, exactly 1 unit from the root.
struct ModelSpace {
    SpaceKind kind = SpaceKind::Euclidean;
    int dim = 2;                  // Euclidean dimension (0..3)
    MatQ gram;                    // dim x dim, positive definite
    unsigned tree_depth = 12;     // D
    bool compactified = true;     // boundary markers allowed

    static ModelSpace euclidean(int n);
    static ModelSpace euclidean_with_gram(int n, MatQ g);
    static ModelSpace tree(unsigned depth, bool compactified = true);
    static ModelSpace tree_times_line(unsigned depth, bool compactified = true);

    bool operator==(const ModelSpace& o) const;
    std::string describe() const;
};

// A point of the tree: `addr` is the descent word (0/1 bits), `rho` the exact
// distance from the root.  Canonical form: |addr| is the level bracket of rho
// (a node of level k has |addr| = k and rho = 1 - 2^{-k}; an interior point of
// the edge into level k has |addr| = k and rho strictly inside the bracket);
// boundary markers have |addr| = D and rho = 1.
struct TreePoint {
    std::vector<uint8_t> addr;
    Rat rho;
    bool boundary = false;

    static Rat node_depth(size_t level) { return Rat(1) - dyadic(unsigned(level)); }
};

struct Point {
    SpaceKind kind = SpaceKind::Euclidean;
    VecQ coords;      // Euclidean
    TreePoint tree;   // Tree / Product
    Rat t;            // line coordinate (Product)

    static Point euclidean(VecQ c);
    static Point tree_node(const std::vector<uint8_t>& addr);
    static Point tree_interior(const std::vector<uint8_t>& addr, const Rat& rho);
    static Point tree_boundary(const std::vector<uint8_t>& addr, unsigned depth);
    static Point product(Point tree_part, Rat t);

    bool operator==(const Point& o) const;
    std::strong_ordering operator<=>(const Point& o) const;
    std::string describe() const;
};

struct Ball {
    Point center;
    Rat radius;        // > 0
    bool open = true;

    bool operator==(const Ball& o) const { return center == o.center && radius == o.radius && open == o.open; }
    std::strong_ordering operator<=>(const Ball& o) const;
};

// -- exact metric --------------------------------------------------------

bool contains(const ModelSpace& s, const Point& p);

// d(p,q)^2, exact.  Tree distance itself is rational; Euclidean and product
// distances are surds, so every predicate downstream compares squares.
Rat squared_distance(const ModelSpace& s, const Point& p, const Point& q);

// For the tree factor the plain distance is rational.
Rat tree_distance(const TreePoint& p, const TreePoint& q);

// Point at parameter t in [0,1] along the unique geodesic [p,q]; satisfies
// d(p,r) = t d(p,q) and d(r,q) = (1-t) d(p,q) exactly (on squares).
Point geodesic_point(const ModelSpace& s, const Point& p, const Point& q, const Rat& t);

// Point on the root path of `toward` at distance rho from the root.
TreePoint tree_point_at_depth(const std::vector<uint8_t>& toward, const Rat& rho,
                              unsigned depth, bool boundary_ok);

bool in_ball(const ModelSpace& s, const Ball& b, const Point& p);

// -- CAT(0) comparison sampling ------------------------------------------

struct Cat0Report {
    bool ok = true;
    Rat worst_violation = 0;  // max over samples of d_X(a,b)^2 - d_{E^2}(abar,bbar)^2, expected <= 0
    long samples = 0;
};

// Samples pairs of points on the sides of the triangle pqr at rational
// parameters and checks the comparison inequality exactly via the Gram
// identity on squared side lengths.
Cat0Report cat0_triangle_check(const ModelSpace& s, const Point& p, const Point& q,
                               const Point& r, long samples, RatSampler& rng);

}  // namespace cat0

#endif

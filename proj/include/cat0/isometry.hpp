#ifndef CAT0_ISOMETRY_HPP
#define CAT0_ISOMETRY_HPP

#include <optional>
#include <string>

#include "cat0/balls.hpp"
#include "cat0/line.hpp"

namespace cat0 {

// Exact isometries of the model spaces.
//
// Euclidean: x -> O x + v with O a G-orthogonal rational matrix (O^T G O = G).
//
// Tree / product: the odometer family.  Nodes at level n are the cosets
// Z/2^n (address bits read least significant first); the automorphism is
// addition of the integer constant `shift`.  A stored boundary marker is the
// depth-D prefix of an integer 2-adic tail, so its visible address transforms
// by the same addition mod 2^D, but it is genuinely fixed only by shift = 0:
// fixedness queries must go through `fixes`, not through apply-and-compare,
// or the depth truncation would fabricate axes at the boundary.
struct Isometry {
    SpaceKind kind = SpaceKind::Euclidean;
    MatQ o;
    VecQ v;
    Int tree_shift = 0;
    Rat line_shift = 0;

    static Isometry euclidean(MatQ o, VecQ v);
    static Isometry tree_odometer(const Int& shift);                      // pure tree
    static Isometry product_odometer(const Int& shift, const Rat& line);  // T x R

    static Isometry identity_for(const ModelSpace& s);

    Point apply(const ModelSpace& s, const Point& p) const;
    Isometry compose(const ModelSpace& s, const Isometry& rhs) const;  // this after rhs
    Isometry inverse(const ModelSpace& s) const;
    bool is_identity() const;
    bool fixes(const ModelSpace& s, const Point& p) const;

    Line apply_line(const ModelSpace& s, const Line& l) const;
    // Does the image line, as an oriented line, carry the canonical
    // orientation of its own class?  -1 means the isometry reverses it.
    int orientation_sign(const ModelSpace& s, const Line& l) const;

    bool operator==(const Isometry& o) const;
    std::strong_ordering operator<=>(const Isometry& o) const;
    std::string describe() const;
};

// Semisimple classification: elliptic with a certified fixed point, or
// hyperbolic with exact squared translation length, one axis, and the full
// minimal-displacement set (the anchors of all axes).
struct IsometryClass {
    bool elliptic = true;
    Point fixed_point;                  // elliptic
    Rat translation_length_sq = 0;      // hyperbolic
    std::optional<Line> axis;           // hyperbolic
    FixedSet min_set;                   // elliptic: Fix(g); hyperbolic: axis anchors + direction
};

IsometryClass classify(const ModelSpace& s, const Isometry& g);

// Fix_X(H) for a finite generator list, exact.
FixedSet fixed_set(const ModelSpace& s, const std::vector<Isometry>& gens);

}  // namespace cat0

#endif

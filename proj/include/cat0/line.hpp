#ifndef CAT0_LINE_HPP
#define CAT0_LINE_HPP

#include <compare>
#include <string>
#include <vector>

#include "cat0/geometry.hpp"

namespace cat0 {

// A geodesic line of a model space, stored canonically so that two values
// compare equal iff they describe the same point set.
//
// Euclidean: primitive integer direction with the lexicographically least
// sign (that sign is also the canonical "+" orientation of the directed
// double cover) and the anchor moved to the foot of the G-perpendicular
// from the origin.  Product: the vertical line {x} x R through a tree point;
// the "+" orientation is the +R direction.
struct Line {
    SpaceKind kind = SpaceKind::Euclidean;
    std::vector<Int> dir;  // Euclidean, primitive, canonical sign
    VecQ anchor;           // Euclidean, dir^perp_G component only
    TreePoint base;        // Product

    static Line euclidean(const ModelSpace& s, const VecQ& point_on_line, const VecQ& direction);
    static Line vertical(const TreePoint& base);

    bool operator==(const Line& o) const;
    std::strong_ordering operator<=>(const Line& o) const;
    std::string describe() const;

    VecQ dir_q() const;  // direction as rationals
    // point at parameter s (Euclidean: anchor + s dir; Product: (base, s))
    Point at(const Rat& s) const;
};

// Primitive integer vector with canonical (lexicographically least) sign;
// returns the scaling s > 0 with canon = s * v via `scale` when requested.
std::vector<Int> primitive_direction(const VecQ& v, bool* flipped = nullptr);

struct DirectedLine {
    Line line;
    int sign = +1;  // +1: canonical orientation, -1: reversed

    DirectedLine reversed() const { return {line, -sign}; }
    bool operator==(const DirectedLine& o) const { return line == o.line && sign == o.sign; }
    std::strong_ordering operator<=>(const DirectedLine& o) const {
        auto c = line <=> o.line;
        if (c != std::strong_ordering::equal) return c;
        return sign <=> o.sign;
    }
};

}  // namespace cat0

#endif

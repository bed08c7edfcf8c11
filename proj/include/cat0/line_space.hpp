#ifndef CAT0_LINE_SPACE_HPP
#define CAT0_LINE_SPACE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cat0/group.hpp"

namespace cat0 {

// The parallel class of a line: the set of lines parallel to it, carried by
// the product decomposition to a model space X_c^0 of its own (E^{n-1} with
// the induced Gram form, or the tree factor), together with the exact
// identification line <-> class point.
struct ParallelClass {
    SpaceKind kind = SpaceKind::Euclidean;
    std::vector<Int> dir;         // Euclidean class key (canonical primitive direction)
    std::vector<VecQ> basis;      // basis of dir^perp_G (Euclidean)
    ModelSpace class_space;

    bool same_class(const Line& l) const;
    VecQ line_to_coords(const Line& l) const;       // Euclidean classes
    Line coords_to_line(const ModelSpace& ambient, const VecQ& y) const;
    Point line_to_point(const Line& l) const;       // point of class_space
    Line point_to_line(const ModelSpace& ambient, const Point& p) const;

    bool operator==(const ParallelClass& o) const { return kind == o.kind && dir == o.dir; }
};

ParallelClass parallel_class(const ModelSpace& s, const Line& c);

// Flat-strip width squared for parallel lines, nullopt (= infinity) otherwise.
std::optional<Rat> flat_strip_distance_sq(const ModelSpace& s, const Line& a, const Line& b);

// One parallel class worth of axes: the class together with the subset of
// class points whose lines are axes.  Euclidean windows produce either the
// full class (a translation in that direction exists) or a finite union of
// affine pieces in class coordinates; the tree example produces the subtree
// of points at depth <= cutoff.
struct AxisClassSet {
    ParallelClass cls;
    bool full = false;
    std::vector<FixedSet> pieces;  // class-coordinate affine pieces (Euclidean)
    std::optional<Rat> cutoff;     // tree class
    std::vector<Line> witnesses;

    bool contains_point(const Point& class_point) const;
    bool is_empty() const { return !full && pieces.empty() && !cutoff; }
};

struct AxesSpace {
    ModelSpace ambient;
    std::vector<AxisClassSet> classes;  // sorted by class key

    int class_index(const ParallelClass& c) const;
};

// Classifies every window element and collects the axes of the hyperbolic
// ones, grouped into parallel classes.
AxesSpace enumerate_axes(const GroupSpec& g, const Rat& bound);

// Named well-behaved subsets: "full" keeps the enumeration, "root-line"
// restricts the tree example to the root axis.
AxesSpace axes_choice(const AxesSpace& full, const std::string& choice);

struct WellBehavedReport {
    bool closed_at_scale = true;
    bool componentwise_convex = true;
    bool invariant = true;
    bool meets_components = true;
    std::string detail;  // first failure witness, if any
    bool all() const { return closed_at_scale && componentwise_convex && invariant && meets_components; }
};

WellBehavedReport well_behaved_check(const AxesSpace& axes, const GroupSpec& g, const Rat& bound,
                                     RatSampler& rng);

// The induced isometry of a class space: g maps the class `from` to the
// class `to`, acting on class coordinates by an exact isometry of the class
// model space; `sheet_sign` records whether g preserves (+1) or reverses
// (-1) the canonical orientation of lines in `from`.
struct ClassMap {
    int from = 0, to = 0;
    Isometry map;      // isometry of the class model space
    int sheet_sign = 1;
};

ClassMap induced_class_map(const ModelSpace& ambient, const AxesSpace& axes, int from_class,
                           const Isometry& g);

// Directed double cover DA = A x {+,-} with infinite distance across sheets,
// the sheet-swap involution i, and the projection pi.
struct DirectedAxes {
    const AxesSpace* base;

    struct Pt {
        int class_idx;
        int sign;  // +1 / -1
        Point class_point;
    };
    static Pt involution(const Pt& p) { return {p.class_idx, -p.sign, p.class_point}; }
    static std::pair<int, Point> projection(const Pt& p) { return {p.class_idx, p.class_point}; }
    std::optional<Rat> distance_sq(const Pt& a, const Pt& b) const;
};

}  // namespace cat0

#endif

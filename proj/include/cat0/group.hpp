#ifndef CAT0_GROUP_HPP
#define CAT0_GROUP_HPP

#include <optional>
#include <string>
#include <vector>

#include "cat0/isometry.hpp"

namespace cat0 {

// A finitely generated group of exact isometries.  Presets carry the data
// that makes exhaustive displacement windows possible: wallpaper groups
// store point-group coset representatives plus a lattice basis, the tree
// example stores the odometer structure (elements are gamma^k).
struct GroupSpec {
    ModelSpace space;
    std::string preset;
    std::vector<Isometry> generators;

    bool crystallographic = false;
    std::vector<Isometry> coset_reps;   // one (M, v_M) per point-group element
    std::vector<VecQ> lattice;          // basis vectors, coordinate space

    bool tree_group = false;            // elements gamma^k = (odometer k, +k)
};

// Presets: p1 p2 pm pg cm pmm p4 p3 p6 (p3/p6 in the integral hexagonal
// basis, so every matrix stays rational) and tree-odometer.
GroupSpec group_preset(const std::string& name, unsigned tree_depth = 12);
std::vector<std::string> preset_names();

// Exactly the elements g with d(g b, b) <= bound, sorted deterministically.
std::vector<Isometry> enumerate_elements(const GroupSpec& g, const Rat& bound,
                                         const Point& basepoint);

Point default_basepoint(const ModelSpace& s);

// Minimum positive squared displacement of x over an element list (properness
// witness used by the cover epsilon policy); nullopt if every listed element
// fixes x.
std::optional<Rat> min_positive_displacement_sq(const ModelSpace& s,
                                                const std::vector<Isometry>& elems,
                                                const Point& x);

// -- 1-D actions on an invariant line ---------------------------------------

struct LineAction1D {
    Isometry g;
    int sigma = 1;  // +1 orientation preserving, -1 reversing
    Rat tau;        // shift in units of the line's direction parameter
};

// Action of g on l when g stabilizes l setwise; nullopt otherwise.
std::optional<LineAction1D> line_action(const ModelSpace& s, const Isometry& g, const Line& l);

struct LineStabilizerReport {
    enum class Image { Trivial, InfiniteCyclic, InfiniteDihedral };
    Image image = Image::Trivial;
    bool at_scale_only = false;  // no nontrivial stabilizer element seen in the window
    bool has_reversal = false;
    bool has_translation = false;
    std::vector<LineAction1D> actions;
    std::vector<Isometry> kernel;  // elements acting trivially on l (the F of F -> Gamma_l -> C)
};

LineStabilizerReport line_stabilizer_image(const GroupSpec& g, const Line& l, const Rat& bound);

// -- named subgroups ---------------------------------------------------------

struct Subgroup {
    std::string name;
    std::vector<Isometry> gens;
};

// Fixed per-preset battery (documented in the CLI): the sublist of
// {trivial, cyclic 2/3/4, mirror, translation-Z, glide-Z, D-infinity, Z^2}
// that the preset actually contains.
std::vector<Subgroup> default_battery(const GroupSpec& g);

}  // namespace cat0

#endif

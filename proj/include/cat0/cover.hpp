#ifndef CAT0_COVER_HPP
#define CAT0_COVER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cat0/line_space.hpp"

namespace cat0 {

// The space being covered, presented as a disjoint union of model-space
// components.  X itself is one component; a well-behaved axis space
// contributes one component per parallel-class piece, reparameterized as a
// model space of its own (full class -> X_c^0, affine piece -> E^k, tree
// subtree -> truncated tree).
struct CoverComponent {
    ModelSpace space;
    Point basepoint;
    std::string label;

    // reparameterization data for axis components (identity for X)
    int axes_class = -1;                  // index into AxesSpace::classes
    std::optional<FixedSet> piece;        // affine piece in class coords, when not full
};

// One window element acting on the disjoint union of components.
struct CoverAction {
    Isometry ambient;
    std::vector<int> to;
    std::vector<Isometry> map;
    std::vector<int> sheet_sign;  // orientation effect per source component (axes covers)
};

struct CoverBall {
    int comp = 0;
    Point center;
    Rat radius;
    int orbit = 0;   // index of the generating base ball
    int shell = 1;   // stage of the shell induction that selected the orbit
};

struct GoodCover {
    std::vector<CoverComponent> comps;
    std::vector<CoverBall> balls;        // sorted, deterministic ids
    std::vector<CoverAction> actions;    // generation window (includes identity)
    Rat window_R = 0;
    Rat keep_R = 0;
    Rat max_radius = 0;
    bool is_axes_cover = false;

    int find_ball(int comp, const Point& center, const Rat& radius) const;
    Ball ball(int i) const { return Ball{balls[i].center, balls[i].radius, true}; }
    // image of ball v under action a; nullopt when it leaves the kept window
    std::optional<int> map_ball(int a, int v) const;
    std::optional<int> map_ball(const CoverAction& a, int v) const;
};

// Shell construction of a locally finite good cover of the window
// B-bar_R(basepoint), Euclidean / tree / product components alike.
GoodCover build_good_cover(const GroupSpec& g, const Rat& window_R);

// Good cover of a well-behaved axis space (one component per class piece).
GoodCover build_axes_cover(const GroupSpec& g, const AxesSpace& axes, const Rat& window_R);

// Convert a group element to its action on the cover's components.
CoverAction cover_action(const GoodCover& cover, const GroupSpec& g, const AxesSpace* axes,
                         const Isometry& e);

struct CoverCheckReport {
    bool invariance_ok = true;     // gamma U = U, windowed
    bool disjointness_ok = true;   // gamma B meets B  =>  gamma B = B
    bool epsilon_ok = true;        // 0 < eps <= 1/4 and translate-disjointness margin
    long elements_checked = 0;
    long invariance_censored = 0;  // images that left the kept window
    long coverage_probes = 0;
    bool coverage_ok = true;       // sampled points of the window lie in some ball
    std::string detail;
    bool all() const { return invariance_ok && disjointness_ok && epsilon_ok && coverage_ok; }
};

// Exhaustive Def-4.1 audit over every element of displacement <= check_bound.
CoverCheckReport verify_good_cover(const GoodCover& cover, const GroupSpec& g,
                                   const AxesSpace* axes, const Rat& check_bound,
                                   RatSampler& rng);

}  // namespace cat0

#endif

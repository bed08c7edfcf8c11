#ifndef CAT0_COMPLEX_HPP
#define CAT0_COMPLEX_HPP

#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cat0/cover.hpp"

namespace cat0 {

using Simplex = std::vector<int>;  // sorted vertex ids

struct SimplexHash {
    size_t operator()(const Simplex& s) const {
        size_t h = 1469598103934665603ull;
        for (int v : s) {
            h ^= size_t(v) + 0x9e3779b9;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct SimplicialComplex {
    std::vector<std::string> labels;                  // one per vertex id
    std::vector<std::vector<Simplex>> by_dim;         // by_dim[k]: sorted list of k-simplices
    std::unordered_set<Simplex, SimplexHash> present;

    int dim() const { return int(by_dim.size()) - 1; }
    size_t size() const;
    bool empty() const { return present.empty(); }
    bool has(const Simplex& s) const { return present.count(s) != 0; }
    void add_with_faces(const Simplex& s);
    void add_vertex_labels(const std::vector<std::string>& l) { labels = l; }
    void sort_all();
    long euler_characteristic() const;
    std::vector<Simplex> maximal_simplices() const;

    // full subcomplex on a vertex predicate
    SimplicialComplex full_subcomplex(const std::function<bool(int)>& keep) const;
    static SimplicialComplex from_simplices(const std::vector<std::string>& labels,
                                            const std::vector<Simplex>& simplices);
};

// ---- nerve -----------------------------------------------------------------

struct Nerve {
    SimplicialComplex cx;
    const GoodCover* cover = nullptr;
    int max_multiplicity = 0;  // = dim + 1: a k-simplex is a common point of k+1 balls
};

// Čech nerve of the cover: exact simplex predicate, built dimension by
// dimension over the intersection graph; witnesses are memoized so most
// extension tests are a point-membership check.
Nerve nerve(const GoodCover& cover, int dim_cap = 64);

// vertex permutation induced by a group element (nullopt where the image
// ball left the kept window)
std::vector<std::optional<int>> vertex_map(const GoodCover& cover, const CoverAction& a);

// vertices fixed by every generator (exact ball identity)
std::vector<bool> fixed_vertices(const GoodCover& cover, const std::vector<CoverAction>& gens);

struct EquivarianceReport {
    bool simplices_mapped = true;    // gamma simplex is a simplex whenever the image is in-window
    bool invariant_pointwise = true; // gamma simplex = simplex  =>  vertexwise fixed
    long censored = 0;
    std::string detail;
};

EquivarianceReport check_equivariance(const Nerve& n, const std::vector<CoverAction>& actions);

// ---- restriction map (Prop 4.6 mechanism) ------------------------------------

struct RestrictionMap {
    SimplicialComplex source;              // Fix_{N(U)}(H), full subcomplex
    SimplicialComplex target;              // nerve of U restricted to Fix_X(H)
    std::vector<int> vertex_to_target;     // source vertex -> target vertex
    std::vector<int> source_vertex_ids;    // source vertex -> cover ball id
    bool two_scans_agree = true;           // h-invariance scan == trace-nonempty scan
    bool fibers_are_simplices = true;
    std::string detail;
};

// Builds rho for the fixed set of H (generators given as cover actions over
// a single-component cover).
RestrictionMap restriction_map(const Nerve& n, const std::vector<CoverAction>& h_gens);

// ---- collapses -----------------------------------------------------------------

struct CollapseResult {
    bool collapsed_to_point = false;
    size_t steps = 0;
    std::string final_description;
};

// Greedy free-face collapse; tries a few deterministic orders.
CollapseResult collapse_to_point(const SimplicialComplex& cx);

}  // namespace cat0

#endif

#include "cat0/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cat0 {

// ---- SimplicialComplex --------------------------------------------------------

size_t SimplicialComplex::size() const {
    size_t n = 0;
    for (const auto& d : by_dim) n += d.size();
    return n;
}

void SimplicialComplex::add_with_faces(const Simplex& s) {
    if (present.count(s)) return;
    int k = int(s.size()) - 1;
    if (int(by_dim.size()) <= k) by_dim.resize(k + 1);
    present.insert(s);
    by_dim[k].push_back(s);
    if (k == 0) return;
    Simplex face(s.size() - 1);
    for (size_t drop = 0; drop < s.size(); ++drop) {
        size_t w = 0;
        for (size_t i = 0; i < s.size(); ++i)
            if (i != drop) face[w++] = s[i];
        add_with_faces(face);
    }
}

void SimplicialComplex::sort_all() {
    for (auto& d : by_dim) std::sort(d.begin(), d.end());
}

long SimplicialComplex::euler_characteristic() const {
    long chi = 0;
    for (size_t k = 0; k < by_dim.size(); ++k)
        chi += (k % 2 ? -1 : 1) * long(by_dim[k].size());
    return chi;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (int k = dim(); k >= 0; --k) {
        for (const auto& s : by_dim[k]) {
            bool maximal = true;
            // a simplex is maximal iff no coface: check extensions by each vertex? cheaper:
            // a k-simplex is non-maximal iff it is a face of some (k+1)-simplex.
            if (k + 1 <= dim()) {
                // test by extending with every vertex of some coface candidate: use
                // presence of any superset among (k+1)-simplices via vertex extension
                for (int v = 0; v < int(labels.size()) && maximal; ++v) {
                    if (std::binary_search(s.begin(), s.end(), v)) continue;
                    Simplex up(s);
                    up.insert(std::upper_bound(up.begin(), up.end(), v), v);
                    if (present.count(up)) maximal = false;
                }
            }
            if (maximal) out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SimplicialComplex SimplicialComplex::full_subcomplex(const std::function<bool(int)>& keep) const {
    SimplicialComplex out;
    out.labels = labels;
    for (const auto& d : by_dim)
        for (const auto& s : d) {
            bool ok = true;
            for (int v : s)
                if (!keep(v)) {
                    ok = false;
                    break;
                }
            if (ok) {
                if (int(out.by_dim.size()) < int(s.size())) out.by_dim.resize(s.size());
                out.by_dim[s.size() - 1].push_back(s);
                out.present.insert(s);
            }
        }
    out.sort_all();
    return out;
}

SimplicialComplex SimplicialComplex::from_simplices(const std::vector<std::string>& labels,
                                                    const std::vector<Simplex>& simplices) {
    SimplicialComplex out;
    out.labels = labels;
    for (auto s : simplices) {
        std::sort(s.begin(), s.end());
        out.add_with_faces(s);
    }
    out.sort_all();
    return out;
}

// ---- nerve ---------------------------------------------------------------------

Nerve nerve(const GoodCover& cover, int dim_cap) {
    Nerve n;
    n.cover = &cover;
    size_t nv = cover.balls.size();
    std::vector<std::string> labels(nv);
    for (size_t i = 0; i < nv; ++i) {
        std::ostringstream os;
        const CoverBall& b = cover.balls[i];
        os << "B[" << cover.comps[b.comp].label << (b.comp >= 0 ? "" : "") << "#" << b.comp << ";"
           << b.center.describe() << ";r=" << b.radius.get_str() << ";orbit=" << b.orbit << "]";
        labels[i] = os.str();
    }
    n.cx.labels = labels;
    n.cx.by_dim.resize(1);
    for (int v = 0; v < int(nv); ++v) {
        n.cx.by_dim[0].push_back({v});
        n.cx.present.insert({v});
    }

    // intersection graph
    std::vector<std::vector<int>> adj(nv);
    std::map<Simplex, Point> witness;
    for (size_t i = 0; i < nv; ++i) {
        const CoverBall& bi = cover.balls[i];
        const ModelSpace& sp = cover.comps[bi.comp].space;
        for (size_t j = i + 1; j < nv; ++j) {
            const CoverBall& bj = cover.balls[j];
            if (bj.comp != bi.comp) continue;
            Rat d2 = squared_distance(sp, bi.center, bj.center);
            Rat sum = bi.radius + bj.radius;
            if (d2 < sum * sum) {
                adj[i].push_back(int(j));
                adj[j].push_back(int(i));
            }
        }
    }
    bool helly = true;
    for (const auto& c : cover.comps)
        if (c.space.kind != SpaceKind::Tree) helly = false;

    if (!n.cx.by_dim[0].empty()) n.max_multiplicity = 1;
    std::vector<Simplex> frontier;
    for (size_t i = 0; i < nv; ++i)
        for (int j : adj[i])
            if (j > int(i)) {
                Simplex e{int(i), j};
                n.cx.by_dim.resize(2);
                n.cx.by_dim[1].push_back(e);
                n.cx.present.insert(e);
                frontier.push_back(e);
                // witness: midpoint of the centers clipped into both balls; compute exactly
                if (!helly) {
                    const ModelSpace& sp = cover.comps[cover.balls[i].comp].space;
                    PowerOpt po = power_min(sp, {cover.ball(int(i)), cover.ball(j)});
                    witness[e] = po.witness;
                }
            }
    if (!frontier.empty()) n.max_multiplicity = 2;

    int k = 2;
    while (!frontier.empty()) {
        if (k > dim_cap) throw std::runtime_error("nerve dimension exceeded the local finiteness cap");
        std::vector<Simplex> next;
        for (const auto& s : frontier) {
            // candidate extensions: common neighbors greater than max(s)
            std::vector<int> cands = adj[s[0]];
            for (size_t i = 1; i < s.size(); ++i) {
                std::vector<int> tmp;
                std::set_intersection(cands.begin(), cands.end(), adj[s[i]].begin(), adj[s[i]].end(),
                                      std::back_inserter(tmp));
                cands.swap(tmp);
            }
            for (int v : cands) {
                if (v <= s.back()) continue;
                Simplex ext(s);
                ext.push_back(v);
                if (n.cx.present.count(ext)) continue;
                // all facets must already be simplices
                bool facets_ok = true;
                Simplex face(ext.size() - 1);
                for (size_t drop = 0; drop + 1 < ext.size() && facets_ok; ++drop) {
                    size_t w = 0;
                    for (size_t i = 0; i < ext.size(); ++i)
                        if (i != drop) face[w++] = ext[i];
                    if (!n.cx.present.count(face)) facets_ok = false;
                }
                if (!facets_ok) continue;
                bool is_simplex;
                const ModelSpace& sp = cover.comps[cover.balls[ext[0]].comp].space;
                if (helly) {
                    is_simplex = true;  // pairwise checks passed via the graph
                } else {
                    // try the memoized witness of the base simplex first
                    std::vector<Ball> balls;
                    balls.reserve(ext.size());
                    for (int u : ext) balls.push_back(cover.ball(u));
                    auto wit = witness.find(s);
                    is_simplex = false;
                    if (wit != witness.end()) {
                        bool inside = true;
                        for (const auto& b : balls)
                            if (!in_ball(sp, b, wit->second)) {
                                inside = false;
                                break;
                            }
                        if (inside) {
                            is_simplex = true;
                            witness[ext] = wit->second;
                        }
                    }
                    if (!is_simplex) {
                        PowerOpt po = power_min(sp, balls);
                        if (po.min_power < 0) {
                            is_simplex = true;
                            witness[ext] = po.witness;
                        }
                    }
                }
                if (is_simplex) {
                    if (int(n.cx.by_dim.size()) <= k) n.cx.by_dim.resize(k + 1);
                    n.cx.by_dim[k].push_back(ext);
                    n.cx.present.insert(ext);
                    next.push_back(ext);
                }
            }
        }
        if (!next.empty()) n.max_multiplicity = k + 1;
        frontier.swap(next);
        ++k;
    }
    n.cx.sort_all();
    return n;
}

std::vector<std::optional<int>> vertex_map(const GoodCover& cover, const CoverAction& a) {
    std::vector<std::optional<int>> out(cover.balls.size());
    for (size_t v = 0; v < cover.balls.size(); ++v) out[v] = cover.map_ball(a, int(v));
    return out;
}

std::vector<bool> fixed_vertices(const GoodCover& cover, const std::vector<CoverAction>& gens) {
    std::vector<bool> fixed(cover.balls.size(), true);
    for (const auto& g : gens) {
        for (size_t v = 0; v < cover.balls.size(); ++v) {
            if (!fixed[v]) continue;
            auto img = cover.map_ball(g, int(v));
            if (!img || *img != int(v)) fixed[v] = false;
        }
    }
    return fixed;
}

EquivarianceReport check_equivariance(const Nerve& n, const std::vector<CoverAction>& actions) {
    EquivarianceReport rep;
    std::ostringstream detail;
    for (const auto& a : actions) {
        auto vm = vertex_map(*n.cover, a);
        for (const auto& d : n.cx.by_dim) {
            for (const auto& s : d) {
                Simplex img;
                bool in_window = true;
                for (int v : s) {
                    if (!vm[v]) {
                        in_window = false;
                        break;
                    }
                    img.push_back(*vm[v]);
                }
                if (!in_window) {
                    ++rep.censored;
                    continue;
                }
                std::sort(img.begin(), img.end());
                if (!n.cx.has(img)) {
                    rep.simplices_mapped = false;
                    if (detail.tellp() < 200) detail << "image of a simplex is missing; ";
                }
                if (img == s) {
                    for (size_t i = 0; i < s.size(); ++i)
                        if (*vm[s[i]] != s[i]) {
                            rep.invariant_pointwise = false;
                            if (detail.tellp() < 200) detail << "invariant simplex not pointwise fixed; ";
                        }
                }
            }
        }
    }
    rep.detail = detail.str();
    return rep;
}

// ---- restriction map -------------------------------------------------------------

RestrictionMap restriction_map(const Nerve& n, const std::vector<CoverAction>& h_gens) {
    const GoodCover& cover = *n.cover;
    RestrictionMap rm;
    std::ostringstream detail;

    // scan 1: vertices fixed by every generator
    std::vector<bool> fixed = fixed_vertices(cover, h_gens);

    // Fix_X(H) per component (empty when H moves the component)
    std::vector<FixedSet> fix(cover.comps.size());
    for (size_t c = 0; c < cover.comps.size(); ++c) {
        std::vector<Isometry> gens;
        bool stable = true;
        for (const auto& a : h_gens) {
            if (a.to[c] != int(c)) {
                stable = false;
                break;
            }
            gens.push_back(a.map[c]);
        }
        fix[c] = stable ? fixed_set(cover.comps[c].space, gens) : FixedSet::empty();
    }

    // scan 2: balls whose trace on the fixed set is nonempty
    std::vector<bool> touches(cover.balls.size(), false);
    std::vector<std::optional<RestrictedBall>> traces(cover.balls.size());
    for (size_t v = 0; v < cover.balls.size(); ++v) {
        const CoverBall& b = cover.balls[v];
        if (fix[b.comp].is_empty()) continue;
        RestrictedBall rb = restrict_ball(cover.comps[b.comp].space, fix[b.comp], cover.ball(int(v)));
        if (rb.reaches) {
            touches[v] = true;
            traces[v] = rb;
        }
    }
    for (size_t v = 0; v < cover.balls.size(); ++v)
        if (fixed[v] != touches[v]) {
            rm.two_scans_agree = false;
            if (detail.tellp() < 200)
                detail << "vertex " << v << ": invariance scan " << fixed[v] << " vs trace scan "
                       << touches[v] << "; ";
        }

    rm.source = n.cx.full_subcomplex([&](int v) { return fixed[v]; });

    // target vertices: distinct traces
    std::vector<int> trace_id(cover.balls.size(), -1);
    std::vector<int> rep_ball;  // target vertex -> representative ball
    for (size_t v = 0; v < cover.balls.size(); ++v) {
        if (!touches[v]) continue;
        int found = -1;
        for (size_t t = 0; t < rep_ball.size(); ++t) {
            const RestrictedBall& a = *traces[rep_ball[t]];
            if (cover.balls[rep_ball[t]].comp == cover.balls[v].comp && a.same_trace(*traces[v])) {
                found = int(t);
                break;
            }
        }
        if (found < 0) {
            found = int(rep_ball.size());
            rep_ball.push_back(int(v));
        }
        trace_id[v] = found;
    }
    rm.vertex_to_target.assign(cover.balls.size(), -1);
    for (size_t v = 0; v < cover.balls.size(); ++v) rm.vertex_to_target[v] = trace_id[v];

    // target nerve: subsets of traces with nonempty intersection inside Fix
    std::vector<std::string> tlabels(rep_ball.size());
    for (size_t t = 0; t < rep_ball.size(); ++t) tlabels[t] = "res#" + std::to_string(t);
    rm.target.labels = tlabels;
    if (!rep_ball.empty()) rm.target.by_dim.resize(1);
    for (size_t t = 0; t < rep_ball.size(); ++t) {
        rm.target.by_dim[0].push_back({int(t)});
        rm.target.present.insert({int(t)});
    }
    // build by dimension, exact restricted predicate
    std::vector<Simplex> frontier = rm.target.by_dim.empty() ? std::vector<Simplex>{} : rm.target.by_dim[0];
    int k = 1;
    while (!frontier.empty()) {
        std::vector<Simplex> next;
        for (const auto& s : frontier) {
            for (int t = s.back() + 1; t < int(rep_ball.size()); ++t) {
                Simplex ext(s);
                ext.push_back(t);
                if (rm.target.present.count(ext)) continue;
                bool facets_ok = true;
                if (k >= 2) {
                    Simplex face(ext.size() - 1);
                    for (size_t drop = 0; drop + 1 < ext.size() && facets_ok; ++drop) {
                        size_t w = 0;
                        for (size_t i = 0; i < ext.size(); ++i)
                            if (i != drop) face[w++] = ext[i];
                        if (!rm.target.present.count(face)) facets_ok = false;
                    }
                }
                if (!facets_ok) continue;
                int comp = cover.balls[rep_ball[ext[0]]].comp;
                bool same_comp = true;
                std::vector<Ball> balls;
                for (int u : ext) {
                    if (cover.balls[rep_ball[u]].comp != comp) same_comp = false;
                    balls.push_back(cover.ball(rep_ball[u]));
                }
                if (!same_comp) continue;
                if (balls_intersect_in(cover.comps[comp].space, fix[comp], balls)) {
                    if (int(rm.target.by_dim.size()) <= k) rm.target.by_dim.resize(k + 1);
                    rm.target.by_dim[k].push_back(ext);
                    rm.target.present.insert(ext);
                    next.push_back(ext);
                }
            }
        }
        frontier.swap(next);
        ++k;
    }
    rm.target.sort_all();

    // map source vertex ids
    for (int v = 0; v < int(cover.balls.size()); ++v)
        if (fixed[v]) rm.source_vertex_ids.push_back(v);

    // fiber property: the preimage of every target simplex is a simplex of the source
    for (const auto& d : rm.target.by_dim) {
        for (const auto& s : d) {
            std::vector<int> fiber;
            for (size_t v = 0; v < cover.balls.size(); ++v)
                if (trace_id[v] >= 0 && std::binary_search(s.begin(), s.end(), trace_id[v]))
                    fiber.push_back(int(v));
            if (fiber.empty()) continue;
            // the fiber must form a simplex of the source complex: exact test
            int comp = cover.balls[fiber[0]].comp;
            bool same = true;
            std::vector<Ball> balls;
            for (int u : fiber) {
                if (cover.balls[u].comp != comp) same = false;
                balls.push_back(cover.ball(u));
            }
            bool ok = same && balls_intersect(cover.comps[comp].space, balls);
            if (!ok) {
                rm.fibers_are_simplices = false;
                if (detail.tellp() < 200) detail << "fiber of a target simplex is not a simplex; ";
            }
        }
    }
    rm.detail = detail.str();
    return rm;
}

// ---- collapses --------------------------------------------------------------------

namespace {

struct CollapseEngine {
    std::unordered_set<Simplex, SimplexHash> alive;
    std::map<Simplex, int> upper;  // # codim-1 cofaces alive

    void remove(const Simplex& s) {
        alive.erase(s);
        if (s.size() == 1) return;
        Simplex face(s.size() - 1);
        for (size_t drop = 0; drop < s.size(); ++drop) {
            size_t w = 0;
            for (size_t i = 0; i < s.size(); ++i)
                if (i != drop) face[w++] = s[i];
            auto it = upper.find(face);
            if (it != upper.end()) --(it->second);
        }
    }

    std::optional<Simplex> unique_coface(const Simplex& f, int nvert,
                                         const std::vector<std::vector<int>>& vertex_star) {
        // find the single alive coface of codimension 1
        std::optional<Simplex> found;
        const std::vector<int>& cands = vertex_star[f[0]];
        for (int v : cands) {
            if (std::binary_search(f.begin(), f.end(), v)) continue;
            Simplex up(f);
            up.insert(std::upper_bound(up.begin(), up.end(), v), v);
            if (alive.count(up)) {
                if (found) return std::nullopt;
                found = up;
            }
        }
        (void)nvert;
        return found;
    }
};

}  // namespace

CollapseResult collapse_to_point(const SimplicialComplex& cx) {
    CollapseResult res;
    if (cx.empty()) {
        res.final_description = "empty";
        return res;
    }
    // orders: 0 = lex descending on simplices, 1 = lex ascending
    for (int order = 0; order < 2; ++order) {
        CollapseEngine eng;
        eng.alive = cx.present;
        eng.upper.clear();
        std::vector<std::vector<int>> vertex_star(cx.labels.size());
        for (const auto& d : cx.by_dim)
            for (const auto& s : d) {
                if (s.size() >= 2) {
                    Simplex face(s.size() - 1);
                    for (size_t drop = 0; drop < s.size(); ++drop) {
                        size_t w = 0;
                        for (size_t i = 0; i < s.size(); ++i)
                            if (i != drop) face[w++] = s[i];
                        eng.upper[face]++;
                    }
                }
                if (s.size() == 2) {
                    vertex_star[s[0]].push_back(s[1]);
                    vertex_star[s[1]].push_back(s[0]);
                }
            }
        for (auto& st : vertex_star) std::sort(st.begin(), st.end());

        // free faces ordered deterministically
        auto cmp_less = [order](const Simplex& a, const Simplex& b) {
            if (a.size() != b.size()) return a.size() > b.size();
            return order == 0 ? a > b : a < b;
        };
        std::set<Simplex, decltype(cmp_less)> work(cmp_less);
        for (const auto& [f, cnt] : eng.upper)
            if (cnt == 1 && eng.alive.count(f)) work.insert(f);

        size_t steps = 0;
        while (!work.empty()) {
            Simplex f = *work.begin();
            work.erase(work.begin());
            if (!eng.alive.count(f)) continue;
            auto it = eng.upper.find(f);
            if (!it->second || it->second != 1) continue;
            auto cof = eng.unique_coface(f, int(cx.labels.size()), vertex_star);
            if (!cof) continue;
            // elementary collapse (f, cof)
            Simplex sigma = *cof;
            eng.remove(sigma);
            eng.remove(f);
            ++steps;
            // faces whose counters dropped may now be free
            auto requeue = [&](const Simplex& s) {
                if (s.size() == 1) return;
                Simplex face(s.size() - 1);
                for (size_t drop = 0; drop < s.size(); ++drop) {
                    size_t w = 0;
                    for (size_t i = 0; i < s.size(); ++i)
                        if (i != drop) face[w++] = s[i];
                    auto uit = eng.upper.find(face);
                    if (uit != eng.upper.end() && uit->second == 1 && eng.alive.count(face))
                        work.insert(face);
                }
            };
            requeue(sigma);
            requeue(f);
        }
        if (eng.alive.size() == 1 && eng.alive.begin()->size() == 1) {
            res.collapsed_to_point = true;
            res.steps = steps;
            res.final_description = "point";
            return res;
        }
        if (order == 1) {
            std::ostringstream os;
            os << "stuck with " << eng.alive.size() << " simplices";
            res.final_description = os.str();
            res.steps = steps;
        }
    }
    return res;
}

}  // namespace cat0

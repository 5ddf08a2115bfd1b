#include "permutrees/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "permutrees/correspond.hpp"
#include "permutrees/errors.hpp"
#include "permutrees/lattice.hpp"
#include "permutrees/permutation.hpp"

namespace permutrees {

namespace {

// component of `from` in the tree with vertex v removed; this is the subtree
// hanging off v through the slot that holds `from` (0 for a stub).  Unlike a
// directed reach it follows every edge, so it picks up the second parents of
// the vertices it passes.
std::uint32_t slot_component(const Permutree& t, int v, int from) {
    if (from == 0) return 0;
    std::uint32_t seen = 1u << (v - 1);  // block v itself
    std::vector<int> stack{from};
    while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        if (seen & (1u << (w - 1))) continue;
        seen |= 1u << (w - 1);
        for (int x : t.parents(w))
            if (x) stack.push_back(x);
        for (int x : t.children(w))
            if (x) stack.push_back(x);
    }
    return seen & ~(1u << (v - 1));
}

std::uint32_t full_mask(int n) { return n >= 32 ? ~0u : (1u << n) - 1; }

// fraction-free Gaussian elimination; entries stay within the minors of the
// input, far below overflow for the sizes this library accepts
int matrix_rank(std::vector<std::vector<long long>> m) {
    int rows = (int)m.size();
    if (rows == 0) return 0;
    int cols = (int)m[0].size();
    int rank = 0;
    long long prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c)
                m[r][c] = (m[r][c] * m[rank][col] - m[rank][c] * m[r][col]) / prev;
            m[r][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

// does x lie in the (closed) normal cone of t?  The cone is exactly the set
// of points weakly increasing along every internal edge.
bool in_normal_cone(const Permutree& t, const std::vector<long long>& x) {
    for (auto [c, p] : t.internal_edges())
        if (x[c - 1] > x[p - 1]) return false;
    return true;
}

// maximal runs of None letters, as 1-based inclusive [start, end] pairs
std::vector<std::pair<int, int>> none_runs(const Decoration& dec) {
    std::vector<std::pair<int, int>> runs;
    int n = dec.size();
    for (int i = 1; i <= n; ++i) {
        if (dec[i] != Letter::None) continue;
        int j = i;
        while (j < n && dec[j + 1] == Letter::None) ++j;
        runs.emplace_back(i, j);
        i = j;
    }
    return runs;
}

// permutations of [n] fixing every decorated position and free inside each
// None run; the count is the product of the run factorials
std::vector<Perm> block_permutations(const Decoration& dec) {
    std::vector<Perm> out{identity_perm(dec.size())};
    for (auto [s, e] : none_runs(dec)) {
        std::vector<Perm> next;
        for_each_perm(e - s + 1, [&](const Perm& block) {
            for (const Perm& base : out) {
                Perm p = base;
                for (int k = 0; k < e - s + 1; ++k) p[s - 1 + k] = s + block[k] - 1;
                next.push_back(std::move(p));
            }
        });
        out = std::move(next);
    }
    return out;
}

// a candidate symmetry x -> sign * (x composed with sigma) + shift, where the
// shift is n+1 exactly when the sign is negative (the point reflection)
struct CandidateMap {
    bool negate = false;
    Perm sigma;  // image_i = ±x[sigma(i)] (+ shift)

    bool operator<(const CandidateMap& o) const {
        if (negate != o.negate) return negate < o.negate;
        return sigma < o.sigma;
    }
};

LatticePoint apply_map(const CandidateMap& m, const LatticePoint& x) {
    int n = (int)x.size();
    LatticePoint y(n);
    for (int i = 0; i < n; ++i) {
        long long v = x[m.sigma[i] - 1];
        y[i] = m.negate ? (n + 1) - v : v;
    }
    return y;
}

// every distinct candidate map built from inner/outer block permutations and
// the four core symmetries (identity, reversal, reflection, both)
std::set<CandidateMap> candidate_maps(const Decoration& inner, const Decoration& outer) {
    int n = inner.size();
    auto inner_perms = block_permutations(inner);
    auto outer_perms = block_permutations(outer);
    long long budget = (long long)inner_perms.size() * (long long)outer_perms.size() * 4;
    if (budget > 4000000)
        throw SizeBound("symmetry search would try " + std::to_string(budget) +
                        " candidate maps; the None runs are too long");
    std::set<CandidateMap> maps;
    for (const Perm& pi : inner_perms)
        for (const Perm& po : outer_perms)
            for (int core = 0; core < 4; ++core) {
                bool mirror = core & 1, negate = core & 2;
                CandidateMap m;
                m.negate = negate;
                m.sigma.resize(n);
                for (int i = 0; i < n; ++i) {
                    int j = po[i];                    // outer permutation
                    if (mirror) j = n + 1 - j;        // coordinate reversal
                    m.sigma[i] = pi[j - 1];           // inner permutation
                }
                maps.insert(std::move(m));
            }
    return maps;
}

}  // namespace

LatticePoint vertex(const Permutree& t) {
    t.validate();
    const int n = t.n();
    LatticePoint a(n, 0);
    for (int v = 1; v <= n; ++v) {
        long long below = 0;
        for (int c : t.children(v))
            below += std::popcount(slot_component(t, v, c));
        long long val = 1 + below;
        if (two_children(t.letter(v))) {
            long long l = std::popcount(slot_component(t, v, t.children(v)[0]));
            long long r = std::popcount(slot_component(t, v, t.children(v)[1]));
            val += l * r;
        }
        if (two_parents(t.letter(v))) {
            long long l = std::popcount(slot_component(t, v, t.parents(v)[0]));
            long long r = std::popcount(slot_component(t, v, t.parents(v)[1]));
            val -= l * r;
        }
        a[v - 1] = val;
    }
    return a;
}

std::vector<std::uint32_t> building_blocks(const Decoration& dec, int max_n) {
    std::set<std::uint32_t> blocks;
    for (const Permutree& t : enumerate_trees(dec, max_n))
        for (const Cut& c : t.edge_cuts())
            blocks.insert(c.below);
    return {blocks.begin(), blocks.end()};
}

Polytope polytope(const Decoration& dec, int max_n) {
    Polytope p;
    p.dec = dec;
    p.trees = enumerate_trees(dec, max_n);
    p.vertices.reserve(p.trees.size());
    for (const Permutree& t : p.trees) p.vertices.push_back(vertex(t));

    for (std::uint32_t block : building_blocks(dec, max_n)) {
        int size = std::popcount(block);
        p.facets.push_back(HalfSpace{block, binomial(size + 1, 2)});
    }
    std::sort(p.facets.begin(), p.facets.end(), [](const HalfSpace& a, const HalfSpace& b) {
        int sa = std::popcount(a.block), sb = std::popcount(b.block);
        return sa != sb ? sa < sb : a.block < b.block;
    });

    // polytope edges are the rotations; remap the graph's node order to ours
    RotationGraph g = rotation_graph(dec);
    std::map<std::string, int> index;
    for (size_t k = 0; k < p.trees.size(); ++k) index[p.trees[k].canonical_str()] = (int)k;
    for (const auto& [from, to, rotated] : g.edges) {
        (void)rotated;
        int a = index.at(g.nodes[from].canonical_str());
        int b = index.at(g.nodes[to].canonical_str());
        p.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(p.edges.begin(), p.edges.end());
    return p;
}

nlohmann::ordered_json polytope_json(const Polytope& p) {
    nlohmann::ordered_json j;
    j["decoration"] = p.dec.str();
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (size_t k = 0; k < p.trees.size(); ++k) {
        nlohmann::ordered_json v;
        v["tree"] = p.trees[k].canonical_str();
        v["coords"] = p.vertices[k];
        verts.push_back(std::move(v));
    }
    j["vertices"] = std::move(verts);
    nlohmann::ordered_json facets = nlohmann::ordered_json::array();
    for (const HalfSpace& h : p.facets) {
        nlohmann::ordered_json f;
        f["block"] = mask_to_values(h.block);
        f["rhs"] = h.rhs;
        facets.push_back(std::move(f));
    }
    j["facets"] = std::move(facets);
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (auto [a, b] : p.edges) edges.push_back(nlohmann::ordered_json::array({a, b}));
    j["edges"] = std::move(edges);
    return j;
}

std::string polytope_off(const Polytope& p) {
    if (p.dec.size() != 4)
        throw ScopeError("OFF export draws the three-dimensional case only; got " +
                         std::to_string(p.dec.size()) + " letters");

    // orthonormal basis of the sum-zero hyperplane; constant vectors project
    // away, so the common coordinate sum drops out by itself
    const double basis[3][4] = {
        {1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0, 0},
        {1 / std::sqrt(6.0), 1 / std::sqrt(6.0), -2 / std::sqrt(6.0), 0},
        {1 / std::sqrt(12.0), 1 / std::sqrt(12.0), 1 / std::sqrt(12.0), -3 / std::sqrt(12.0)},
    };
    auto project = [&](const std::vector<double>& x) {
        std::array<double, 3> out{};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 4; ++c) out[r] += basis[r][c] * x[c];
        return out;
    };

    std::vector<std::array<double, 3>> pts;
    for (const LatticePoint& v : p.vertices)
        pts.push_back(project({(double)v[0], (double)v[1], (double)v[2], (double)v[3]}));

    std::ostringstream out;
    out << "OFF\n" << pts.size() << ' ' << p.facets.size() << ' ' << p.edges.size() << "\n";
    for (const auto& q : pts) out << q[0] << ' ' << q[1] << ' ' << q[2] << "\n";

    for (const HalfSpace& h : p.facets) {
        std::vector<int> ids;
        for (size_t k = 0; k < p.vertices.size(); ++k) {
            long long sum = 0;
            for (int v : mask_to_values(h.block)) sum += p.vertices[k][v - 1];
            if (sum == h.rhs) ids.push_back((int)k);
        }
        // cyclic order around the face: angle about the outward normal, which
        // points against the block's characteristic vector
        std::vector<double> chi(4, 0.0);
        for (int v : mask_to_values(h.block)) chi[v - 1] = -1.0;
        auto normal = project(chi);
        std::array<double, 3> center{};
        for (int id : ids)
            for (int c = 0; c < 3; ++c) center[c] += pts[id][c] / (double)ids.size();
        auto sub = [](std::array<double, 3> a, std::array<double, 3> b) {
            return std::array<double, 3>{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
        };
        auto cross = [](std::array<double, 3> a, std::array<double, 3> b) {
            return std::array<double, 3>{a[1] * b[2] - a[2] * b[1],
                                         a[2] * b[0] - a[0] * b[2],
                                         a[0] * b[1] - a[1] * b[0]};
        };
        auto dot = [](std::array<double, 3> a, std::array<double, 3> b) {
            return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        };
        auto u = sub(pts[ids.front()], center);
        auto w = cross(normal, u);
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            auto pa = sub(pts[a], center), pb = sub(pts[b], center);
            return std::atan2(dot(pa, w), dot(pa, u)) < std::atan2(dot(pb, w), dot(pb, u));
        });
        out << ids.size();
        for (int id : ids) out << ' ' << id;
        out << "\n";
    }
    return out.str();
}

LatticePoint cut_ray(const Cut& c, int n) {
    int below_size = std::popcount(c.below);
    int above_size = n - below_size;
    LatticePoint ray(n);
    for (int v = 1; v <= n; ++v)
        ray[v - 1] = (c.below & (1u << (v - 1))) ? -(long long)above_size : below_size;
    return ray;
}

std::vector<LatticePoint> incidence_cone_rays(const Permutree& t) {
    std::vector<LatticePoint> rays;
    for (auto [c, p] : t.internal_edges()) {
        LatticePoint r(t.n(), 0);
        r[c - 1] = 1;
        r[p - 1] = -1;
        rays.push_back(std::move(r));
    }
    return rays;
}

std::vector<LatticePoint> braid_cone_rays(const Permutree& t) {
    std::vector<LatticePoint> rays;
    for (const Cut& c : t.edge_cuts()) rays.push_back(cut_ray(c, t.n()));
    return rays;
}

FanReport fan_check(const Decoration& dec, int max_n) {
    const int n = dec.size();
    const auto& trees = enumerate_trees(dec, max_n);
    FanReport rep;
    rep.chamber_count = (int)trees.size();
    rep.chambers_partition = true;
    rep.simplicial = true;
    std::ostringstream why;

    // each permutation vector must lie in exactly one cone: its own tree's
    std::map<std::string, int> index;
    for (size_t k = 0; k < trees.size(); ++k) index[trees[k].canonical_str()] = (int)k;
    for_each_perm(n, [&](const Perm& tau) {
        if (!rep.chambers_partition) return;
        std::vector<long long> x(n);
        for (int i = 0; i < n; ++i) x[tau[i] - 1] = i + 1;
        int hits = 0;
        for (const Permutree& t : trees)
            if (in_normal_cone(t, x)) ++hits;
        int own = index.at(p_symbol(tau, dec).canonical_str());
        if (hits != 1 || !in_normal_cone(trees[own], x)) {
            rep.chambers_partition = false;
            why << "permutation " << perm_to_string(tau) << " lies in " << hits
                << " cones; ";
        }
    });

    // every chamber: rays orthogonal to the all-ones direction, consistent
    // with the edge description, and spanning a full-dimensional simplicial cone
    for (const Permutree& t : trees) {
        auto rays = braid_cone_rays(t);
        for (const LatticePoint& r : rays) {
            long long sum = 0;
            for (long long e : r) sum += e;
            if (sum != 0 || !in_normal_cone(t, r)) {
                rep.simplicial = false;
                why << "a ray of " << t.canonical_str() << " leaves its own cone; ";
            }
        }
        if (matrix_rank(rays) != n - 1) {
            rep.simplicial = false;
            why << "cone of " << t.canonical_str() << " is not full-dimensional; ";
        }
    }

    rep.detail = why.str();
    if (rep.detail.empty())
        rep.detail = std::to_string(rep.chamber_count) +
                     " chambers tile the hyperplane, all simplicial";
    return rep;
}

bool fan_refines(const Decoration& fine, const Decoration& coarse, int max_n) {
    if (fine.size() != coarse.size())
        throw SizeMismatch("cannot compare fans on " + std::to_string(fine.size()) +
                           " and " + std::to_string(coarse.size()) + " letters");
    const int n = fine.size();
    if (n > max_n)
        throw SizeBound("fan comparison on " + std::to_string(n) +
                        " letters exceeds the bound " + std::to_string(max_n));
    // every fine chamber sits inside a coarse chamber exactly when merging by
    // the fine relation never splits a coarse class
    auto rep = [](const Perm& tau, const Decoration& dec) {
        return min_extension(p_symbol(tau, dec));
    };
    bool ok = true;
    for_each_perm(n, [&](const Perm& tau) {
        if (!ok) return;
        if (rep(rep(tau, fine), coarse) != rep(tau, coarse)) ok = false;
    });
    return ok;
}

ParallelFacets parallel_facets(const Decoration& dec, int max_n) {
    ParallelFacets out;
    auto blocks = building_blocks(dec, max_n);
    std::set<std::uint32_t> set(blocks.begin(), blocks.end());
    std::uint32_t all = full_mask(dec.size());
    for (std::uint32_t b : blocks) {
        std::uint32_t comp = all & ~b;
        if (b < comp && set.count(comp)) out.pairs.emplace_back(b, comp);
    }

    // closed count: boundary letters never matter, so force them away from
    // None; every remaining None run of length k contributes 2^(k+1) - 1
    Decoration forced = dec.with_boundary(Letter::Down);
    int prev = 0;
    for (int i = 1; i <= forced.size(); ++i) {
        if (forced[i] == Letter::None) continue;
        if (prev > 0) out.formula += (1LL << (i - prev)) - 1;
        prev = i;
    }
    return out;
}

long long isometry_group_order(const Decoration& dec, int max_n) {
    Decoration norm = dec.with_boundary(Letter::None);
    std::set<LatticePoint> verts;
    for (const Permutree& t : enumerate_trees(norm, max_n)) verts.insert(vertex(t));
    long long order = 0;
    for (const CandidateMap& m : candidate_maps(norm, norm)) {
        bool preserves = true;
        for (const LatticePoint& v : verts)
            if (!verts.count(apply_map(m, v))) { preserves = false; break; }
        if (preserves) ++order;
    }
    return order;
}

long long isometry_group_order_formula(const Decoration& dec) {
    if (dec.size() == 0) throw EmptyInput("the decoration is empty");
    Decoration norm = dec.with_boundary(Letter::None);
    long long order = 1;
    for (auto [s, e] : none_runs(norm)) order *= factorial_ll(e - s + 1);
    bool mirror = norm == norm.reversed();
    bool all_none = norm == Decoration(std::vector<Letter>(norm.size(), Letter::None));
    bool flip = norm == norm.flipped() || norm == norm.reversed().flipped();
    return order * (1 + (mirror ? 1 : 0) - (all_none ? 1 : 0)) * (1 + (flip ? 1 : 0));
}

bool polytopes_isometric(const Decoration& a, const Decoration& b) {
    if (a.size() != b.size())
        throw SizeMismatch("polytopes on " + std::to_string(a.size()) + " and " +
                           std::to_string(b.size()) + " letters cannot be compared");
    Decoration na = a.with_boundary(Letter::None);
    Decoration nb = b.with_boundary(Letter::None);
    return nb == na || nb == na.reversed() || nb == na.flipped() ||
           nb == na.reversed().flipped();
}

std::vector<std::pair<int, int>> common_vertices(const Decoration& fine,
                                                 const Decoration& coarse,
                                                 int max_n) {
    if (fine.size() != coarse.size())
        throw SizeMismatch("decorations of sizes " + std::to_string(fine.size()) +
                           " and " + std::to_string(coarse.size()) + " do not nest");
    if (!fine.refines_letterwise(coarse))
        throw NotARefinement("decoration " + fine.str() + " does not refine " +
                             coarse.str());
    const auto& fine_trees = enumerate_trees(fine, max_n);
    const auto& coarse_trees = enumerate_trees(coarse, max_n);
    std::map<LatticePoint, int> coarse_index;
    for (size_t k = 0; k < coarse_trees.size(); ++k)
        coarse_index[vertex(coarse_trees[k])] = (int)k;
    std::vector<std::pair<int, int>> out;
    for (size_t k = 0; k < fine_trees.size(); ++k) {
        auto it = coarse_index.find(vertex(fine_trees[k]));
        if (it != coarse_index.end()) out.emplace_back((int)k, it->second);
    }
    return out;
}

}  // namespace permutrees

#pragma once

// Vertex coordinates, facets, cones, fans and symmetries of the polytope
// whose vertices index the trees of a fixed decoration.  Everything is
// exact: coordinates are integers, cone and rank computations are integer
// arithmetic, and the facet list comes from the trees' edge cuts rather
// than from a convex hull library.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "permutrees/decoration.hpp"
#include "permutrees/enumeration.hpp"
#include "permutrees/permutree.hpp"

#include "nlohmann/json.hpp"

namespace permutrees {

using LatticePoint = std::vector<long long>;

// coordinate vector of a tree; entry i-1 belongs to label i and the entries
// always sum to n(n+1)/2.  Label i contributes 1 plus the size of the
// component hanging below it, plus the product of its two child component
// sizes when it has two children, minus the product of its two parent
// component sizes when it has two parents.
LatticePoint vertex(const Permutree& t);

// label sets cut by an edge of at least one tree of the decoration, sorted;
// each set I supports the facet  sum_{i in I} x_i >= |I|(|I|+1)/2
std::vector<std::uint32_t> building_blocks(const Decoration& dec,
                                           int max_n = kDefaultMaxN);

struct HalfSpace {
    std::uint32_t block = 0;  // facet label set as a bitmask (bit v-1)
    long long rhs = 0;        // sum over the block is at least this

    bool operator==(const HalfSpace& o) const {
        return block == o.block && rhs == o.rhs;
    }
};

struct Polytope {
    Decoration dec;
    std::vector<Permutree> trees;            // canonical order
    std::vector<LatticePoint> vertices;      // vertices[k] = vertex(trees[k])
    std::vector<HalfSpace> facets;           // sorted by (size, mask)
    std::vector<std::pair<int, int>> edges;  // vertex index pairs, first < second
};

Polytope polytope(const Decoration& dec, int max_n = kDefaultMaxN);

nlohmann::ordered_json polytope_json(const Polytope& p);

// OFF mesh of the three-dimensional case; ScopeError unless n == 4
std::string polytope_off(const Polytope& p);

// integral normal-fan ray of one edge cut: |below| on every label above the
// edge, -|above| on every label below, so the entries sum to zero
LatticePoint cut_ray(const Cut& c, int n);

// directions leaving vertex(t) along the polytope edges: one generator
// e_child - e_parent per internal edge
std::vector<LatticePoint> incidence_cone_rays(const Permutree& t);

// generators of the normal cone at vertex(t): cut_ray of every edge cut
std::vector<LatticePoint> braid_cone_rays(const Permutree& t);

struct FanReport {
    int chamber_count = 0;            // number of maximal cones = trees
    bool chambers_partition = false;  // each permutation lands in exactly one cone
    bool simplicial = false;          // every cone has n-1 independent rays
    std::string detail;               // plain-words summary, names the first failure
};

// sanity-check the normal fan: the chambers tile the ambient hyperplane with
// one permutation vector per fiber member, and every chamber is simplicial
FanReport fan_check(const Decoration& dec, int max_n = kDefaultMaxN);

// does every chamber of `fine` sit inside a chamber of `coarse`?  True
// exactly when the coarse classes are unions of fine classes.
bool fan_refines(const Decoration& fine, const Decoration& coarse,
                 int max_n = kDefaultMaxN);

struct ParallelFacets {
    // complementary building-block pairs (I, [n] \ I), smaller mask first
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    // closed count: after forcing the boundary letters away from None, each
    // run of k consecutive None letters contributes 2^(k+1) - 1
    long long formula = 0;
};

ParallelFacets parallel_facets(const Decoration& dec, int max_n = kDefaultMaxN);

// order of the symmetry group of the polytope, counted by brute check of the
// candidate maps: coordinate permutations inside None runs, composed with
// coordinate reversal and/or the point reflection x -> (n+1)*1 - x
long long isometry_group_order(const Decoration& dec, int max_n = kDefaultMaxN);

// the closed product formula for the same number
long long isometry_group_order_formula(const Decoration& dec);

// are the two polytopes isometric?  Decided on the normalized decorations:
// isometric exactly when one is the other, its mirror, its flip, or both.
bool polytopes_isometric(const Decoration& a, const Decoration& b);

// vertices shared by the nested polytopes of fine and coarse, as index pairs
// (into each polytope's tree list) sorted by the fine index; NotARefinement
// unless fine refines coarse letterwise
std::vector<std::pair<int, int>> common_vertices(const Decoration& fine,
                                                 const Decoration& coarse,
                                                 int max_n = kDefaultMaxN);

}  // namespace permutrees

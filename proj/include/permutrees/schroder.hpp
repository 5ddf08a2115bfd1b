#pragma once

// Faces of the tree polytope: trees with merged vertices, in bijection with
// classes of ordered partitions of [n] under a coarser congruence.

#include <string>
#include <utility>
#include <vector>

#include "permutrees/decoration.hpp"
#include "permutrees/enumeration.hpp"
#include "permutrees/geometry.hpp"
#include "permutrees/permutation.hpp"
#include "permutrees/permutree.hpp"

namespace permutrees {

// an ordered set partition "125|37|46": parts are disjoint, cover [n], and
// are kept sorted internally
struct OrderedPartition {
    std::vector<std::vector<int>> parts;

    OrderedPartition() = default;
    explicit OrderedPartition(std::vector<std::vector<int>> p);
    explicit OrderedPartition(const Perm& perm);  // one singleton part per entry

    int n() const;
    int level_of(int value) const;  // 1-based index of the part holding value

    // parse "125|37|46" (single digits) or "1,2,5|3,7|4,6"; validates
    static OrderedPartition parse(const std::string& text);
    std::string str() const;

    bool operator==(const OrderedPartition& o) const { return parts == o.parts; }
    bool operator<(const OrderedPartition& o) const { return parts < o.parts; }
};

std::vector<OrderedPartition> all_ordered_partitions(int n);

// one rewriting step on adjacent parts A, C lying entirely on opposite sides
// of a value b (all of A below, all of C above): when b sits in an earlier
// part with two parents, or in a later part with two children, the parts can
// be swapped or merged, and the merged part split back either way
std::vector<OrderedPartition> congruence_moves(const OrderedPartition& p, const Decoration& dec);
std::vector<OrderedPartition> schroder_congruence_class(const OrderedPartition& p,
                                                        const Decoration& dec);
bool schroder_congruent(const OrderedPartition& a, const OrderedPartition& b,
                        const Decoration& dec);

// number of classes by direct closure over all ordered partitions
long long schroder_count_brute(const Decoration& dec);

// ---------------------------------------------------------------------------
// Trees with merged vertices.  Vertices are blocks partitioning [n]; a block
// gets one child slot per gap between consecutive values that carry two
// children inside it (plus the two outer gaps), and parent slots likewise from
// the values with two parents.  Labels in the subtree hanging off a slot must
// fall inside that slot's open gap.  Blocks of size one recover the plain
// trees exactly.

class SchroderPermutree {
public:
    SchroderPermutree() = default;
    // blocks/parents/children are indexed by block id 1..m (entry 0 unused);
    // slot entries hold the adjacent block id, 0 for a stub.  The constructor
    // sorts each block, orders blocks by least label and renumbers.
    SchroderPermutree(Decoration dec, std::vector<std::vector<int>> blocks,
                      std::vector<std::vector<int>> parents,
                      std::vector<std::vector<int>> children);

    int n() const { return dec_.size(); }
    const Decoration& decoration() const { return dec_; }
    int block_count() const { return (int)blocks_.size() - 1; }
    const std::vector<int>& block(int b) const { return blocks_[b]; }
    int block_of(int value) const { return owner_[value]; }
    const std::vector<int>& parents(int b) const { return parents_[b]; }
    const std::vector<int>& children(int b) const { return children_[b]; }

    std::vector<std::pair<int, int>> internal_edges() const;  // (child id, parent id)
    bool has_edge(int child, int parent) const;

    // labels in the component of `b` after removing the edge towards `other`
    std::uint32_t side_labels(int b, int other) const;

    std::vector<std::string> violations() const;
    void validate() const;

    // one cut per internal edge; endpoints are the least labels of the blocks
    std::vector<Cut> edge_cuts() const;

    std::string canonical_str() const;
    nlohmann::ordered_json to_json() const;
    static SchroderPermutree from_json(const nlohmann::json& j);

    bool operator==(const SchroderPermutree& o) const;
    bool operator<(const SchroderPermutree& o) const;

private:
    Decoration dec_;
    std::vector<std::vector<int>> blocks_;    // 1-based, each sorted, ordered by front
    std::vector<std::vector<int>> parents_;   // slot entries: block id or 0
    std::vector<std::vector<int>> children_;
    std::vector<int> owner_;                  // value -> block id
};

// singleton-block copy of a plain tree, and the way back
SchroderPermutree embed(const Permutree& t);
bool is_permutree(const SchroderPermutree& s);
Permutree to_permutree(const SchroderPermutree& s);

// merge the two endpoint blocks of the edge between the blocks holding
// child_value and parent_value; subtrees of both ends redistribute into the
// merged block's slots by their label ranges
SchroderPermutree contract(const SchroderPermutree& s, int child_value, int parent_value);

// whether `fine` is obtainable from `coarse` by splitting blocks, i.e. every
// block of `coarse` is a union of blocks of `fine` glued along edges of `fine`
bool schr_refines(const SchroderPermutree& fine, const SchroderPermutree& coarse);

struct LeveledSchroder {
    SchroderPermutree tree;
    std::vector<int> level;  // block id -> 1-based part index it was built from
};

// sweep an ordered partition bottom-up: the values of each part clump into
// blocks wherever no wall separates them, catch the subtrees between their
// walls, and emit strands for their parents
LeveledSchroder insert_partition(const OrderedPartition& p, const Decoration& dec);
SchroderPermutree p_star(const OrderedPartition& p, const Decoration& dec);

// all ordered partitions inserting to s: blocks must stay whole and parts
// must order comparable blocks bottom-up
std::vector<OrderedPartition> p_star_fiber(const SchroderPermutree& s);

// the fiber member with singleton parts for comparable blocks, smallest labels
// first among incomparable ones
OrderedPartition finest_fiber_member(const SchroderPermutree& s);

// image of s under coarsening the decoration (letterwise refinement required)
SchroderPermutree schr_refine(const SchroderPermutree& s, const Decoration& coarser);

// ---------------------------------------------------------------------------
// Face geometry: each tree with merged vertices names a face of the polytope,
// spanned by the plain trees refining it and cut out by its edge inequalities.

struct FaceInfo {
    std::vector<HalfSpace> tight;     // facet inequalities satisfied with equality
    std::vector<Permutree> refining;  // plain trees refining s (the face's vertices)
    int dimension = 0;                // n - 1 - number of internal edges
};

FaceInfo face_of(const SchroderPermutree& s, int max_n = kDefaultMaxN);

// every tree with merged vertices on this decoration, by sweeping all
// ordered partitions (guarded by max_n)
std::vector<SchroderPermutree> all_schroder_trees(const Decoration& dec,
                                                  int max_n = kDefaultMaxN);

// ---------------------------------------------------------------------------
// The order on faces.  Ordered partitions compare by their matrices of side
// counts: for values i < j the sign of (part of i) - (part of j), compared
// entrywise.  Trees inherit the order through edge contractions and close
// transitively.

// flattened over pairs i < j in lexicographic order; entries -1, 0, 1
std::vector<int> coinversions(const OrderedPartition& p);
bool facial_leq(const OrderedPartition& a, const OrderedPartition& b);

// the partitions covering p: merge an ascending adjacent pair, or split a
// part into top half followed by bottom half
std::vector<OrderedPartition> facial_covers(const OrderedPartition& p);

// least/greatest member of the congruence class of p: no move can lower
// (resp. raise) the partition
bool is_schroder_class_minimum(const OrderedPartition& p, const Decoration& dec);
bool is_schroder_class_maximum(const OrderedPartition& p, const Decoration& dec);

struct SchroderLattice {
    Decoration dec;
    std::vector<SchroderPermutree> nodes;  // sorted
    std::vector<std::vector<char>> leq;    // leq[i][j]: nodes[i] <= nodes[j]
    int index_of(const SchroderPermutree& s) const;
};

// order generated by edge contractions: contracting an edge whose lower block
// sits entirely below the upper one goes up, entirely above goes down
SchroderLattice schroder_lattice(const Decoration& dec, int max_n = kDefaultMaxN);

// ---------------------------------------------------------------------------
// Product rules on ordered partitions, mirroring the word algebra.

// keep the parts at the given 1-based positions, renumber values by rank
OrderedPartition restrict_parts(const OrderedPartition& p, const std::vector<int>& positions);
// keep only the given values, drop emptied parts, renumber by rank
OrderedPartition restrict_values(const OrderedPartition& p, const std::vector<int>& values);

// partitions of [n+n'] whose low values restrict to a and high values to b
std::vector<OrderedPartition> op_shuffle(const OrderedPartition& a, const OrderedPartition& b);
// partitions with |a|+|b| parts whose leading parts restrict to a, trailing to b
std::vector<OrderedPartition> op_convolution(const OrderedPartition& a, const OrderedPartition& b);

struct ClosureReport {
    bool closed = true;
    long long pairs_checked = 0;
    std::string detail;  // first failure, empty when closed
};

// shuffles of whole fibers decompose into whole fibers of the concatenated
// decoration, each exactly once
ClosureReport schr_closure_check(int n_bound);

// ---------------------------------------------------------------------------
// Text form "125|37|46@odudodu" (decoration letters by value).

std::pair<OrderedPartition, Decoration> parse_decorated_partition(const std::string& text);
std::string decorated_partition_str(const OrderedPartition& p, const Decoration& dec);

}  // namespace permutrees

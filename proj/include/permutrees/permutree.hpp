#pragma once

// The central structure: a tree on labels 1..n whose vertex v carries the
// slots its decoration letter dictates.  Slot entries hold the neighbour's
// label, or 0 for a dangling stub.  Two-slot lists are ordered [left, right]:
// the left child / left parent side may only reach labels smaller than v, the
// right side only larger ones.  Internal edges are oriented child -> parent.

#include <cstdint>
#include <string>
#include <vector>

#include "permutrees/decoration.hpp"

#include "nlohmann/json.hpp"

namespace permutrees {

struct Cut {
    int child = 0;               // lower endpoint of the defining edge
    int parent = 0;              // upper endpoint
    std::uint32_t below = 0;     // bitmask of labels on the child side (bit v-1)
};

std::vector<int> mask_to_values(std::uint32_t mask);
std::uint32_t values_to_mask(const std::vector<int>& values);

class Permutree {
public:
    Permutree() = default;
    Permutree(Decoration dec,
              std::vector<std::vector<int>> parents,
              std::vector<std::vector<int>> children);

    int n() const { return dec_.size(); }
    const Decoration& decoration() const { return dec_; }
    Letter letter(int v) const { return dec_[v]; }

    // slot access; index 0 = left (or only) slot, 1 = right
    const std::vector<int>& parents(int v) const { return parents_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    std::vector<int>& parents_mut(int v) { return parents_[v]; }
    std::vector<int>& children_mut(int v) { return children_[v]; }

    // all internal edges as (child, parent), sorted by child label
    std::vector<std::pair<int, int>> internal_edges() const;
    bool has_edge(int child, int parent) const;

    // structural validation; violations() lists every broken clause in plain
    // words, validate() throws InvalidTree on the first non-empty report
    std::vector<std::string> violations() const;
    void validate() const;

    // label sets reachable through one slot (empty for a stub)
    std::uint32_t descendant_subtree(int v, int slot) const;
    std::uint32_t ancestor_subtree(int v, int slot) const;
    // every label strictly below / above v
    std::uint32_t descendants(int v) const;
    std::uint32_t ancestors(int v) const;

    // one cut per internal edge: labels below vs above after removing it
    std::vector<Cut> edge_cuts() const;

    // horizontal mirror: relabel i -> n+1-i and swap every left/right pair;
    // the decoration reverses
    Permutree hreflect() const;
    // vertical mirror: exchange parent and child roles (left/right kept);
    // the decoration swaps d and u
    Permutree vreflect() const;

    std::string canonical_str() const;

    bool operator==(const Permutree& o) const;
    bool operator!=(const Permutree& o) const { return !(*this == o); }
    bool operator<(const Permutree& o) const;

    nlohmann::ordered_json to_json() const;
    static Permutree from_json(const nlohmann::json& j);

private:
    Decoration dec_;
    // index by label, entry 0 unused; inner vectors sized by the letter
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;

    std::uint32_t reach(int start, bool down) const;
};

// a permutree together with a level assignment: level[v] (1-based by label)
// gives the sweep step at which v was placed; reading labels by level yields
// a linear extension
struct LeveledPermutree {
    Permutree tree;
    std::vector<int> level;  // size n+1, index 0 unused

    std::vector<int> extension() const;  // label at level 1, 2, ..., n
};

}  // namespace permutrees

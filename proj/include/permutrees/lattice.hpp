#pragma once

// Rotations and the lattice structure on the trees of a fixed decoration.
// Rotating an internal edge reverses it and hands the two squeezed subtrees
// over; increasing rotations (child label below parent label) generate the
// lattice, which is the quotient of the weak order by the congruence.

#include <string>
#include <utility>
#include <vector>

#include "permutrees/correspond.hpp"
#include "permutrees/permutree.hpp"

namespace permutrees {

// reverse the internal edge child -> parent; throws NotAnEdge if absent
Permutree rotate(const Permutree& t, int child, int parent);

struct RotationGraph {
    Decoration dec;
    std::vector<Permutree> nodes;  // sorted canonically
    // from-node, to-node (indices into nodes), rotated edge (child, parent);
    // every edge is an increasing rotation
    std::vector<std::tuple<int, int, std::pair<int, int>>> edges;
};

// breadth-first closure of increasing rotations from the minimal tree
RotationGraph rotation_graph(const Decoration& dec);

std::string rotation_graph_dot(const RotationGraph& g);

// quotient order: compare the minimal class representatives
bool tree_leq(const Permutree& s, const Permutree& t);

// lattice operations via the extreme representatives
Permutree lattice_meet(const Permutree& s, const Permutree& t);
Permutree lattice_join(const Permutree& s, const Permutree& t);

// the class of t as a weak order interval [min, max]
std::pair<Perm, Perm> fiber_interval(const Permutree& t);

// minimal and maximal trees of the decoration
std::pair<Permutree, Permutree> extremes(const Decoration& dec);

// push t into a coarser decoration (letterwise above t's); NotARefinement
// if the letters do not refine
Permutree refine_project(const Permutree& t, const Decoration& coarser);

}  // namespace permutrees

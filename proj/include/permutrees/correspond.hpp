#pragma once

// The bijection between decorated permutations and leveled trees, and the
// congruence it induces on permutations.
//
// insert() sweeps the permutation bottom-up, one value per level.  Dangling
// strands rise between vertical walls: every value with two children casts a
// wall below its row, every value with two parents casts one above.  The
// walls below the current row carve the line into regions holding exactly one
// strand each; the new vertex catches the strand(s) of its region(s) and
// emits one strand per parent slot.

#include <string>
#include <vector>

#include "permutrees/decoration.hpp"
#include "permutrees/permutation.hpp"
#include "permutrees/permutree.hpp"

namespace permutrees {

enum class Attachment { Values, Positions };

// a permutation whose entries carry letters; internally the letters always
// attach to values (value v has letter dec[v])
struct DecoratedPerm {
    Perm perm;
    Decoration dec;  // by value

    DecoratedPerm() = default;
    DecoratedPerm(Perm p, Decoration d);

    int n() const { return (int)perm.size(); }

    // letters read off along positions: position i carries dec[perm[i]]
    Decoration positional() const;

    // parse "2751346@values:odudodu" or "...@positions:..."; a bare
    // permutation is rejected (DecorationMismatch)
    static DecoratedPerm parse(const std::string& text);
    std::string str(Attachment att = Attachment::Values) const;

    bool operator==(const DecoratedPerm& o) const { return perm == o.perm && dec == o.dec; }
    bool operator<(const DecoratedPerm& o) const;
};

// the insertion sweep; returns the leveled tree (level of v = its position)
LeveledPermutree insert(const DecoratedPerm& dp);

// insert and forget the levels
Permutree p_symbol(const DecoratedPerm& dp);
Permutree p_symbol(const Perm& p, const Decoration& dec);

// all linear extensions of the tree's child -> parent order, lexicographic
std::vector<Perm> linear_extensions(const Permutree& t);

// the fiber of t under p_symbol, i.e. its congruence class
std::vector<Perm> tree_class(const Permutree& t);

// one rewriting step: swapping adjacent entries a < c is allowed when a value
// b with a < b < c witnesses it — b after the pair with two children, or b
// before the pair with two parents.  congruent() is the closure.
bool congruent(const Perm& p, const Perm& q, const Decoration& dec);
std::vector<Perm> congruence_class(const Perm& p, const Decoration& dec);

// class extremes by pattern avoidance:
//   minimum  <=>  no descent pair (c then a adjacent) has a witness
//   maximum  <=>  no ascent pair (a then c adjacent) has a witness
bool is_class_minimum(const Perm& p, const Decoration& dec);
bool is_class_maximum(const Perm& p, const Decoration& dec);
bool is_class_extreme(const Perm& p, const Decoration& dec, bool maximum);

// weak-order extreme member of the class of t (greedy over available labels,
// cross-checked in tests against the brute class scan)
Perm min_extension(const Permutree& t);
Perm max_extension(const Permutree& t);

// ---- arc diagrams ----

// one arc per adjacent pair: endpoints are the two values, `above` lists the
// values strictly between them drawn above the arc (the ones appearing after
// the pair; the ones before pass below)
struct Arc {
    int left = 0, right = 0;        // left < right (value endpoints)
    std::uint32_t above = 0;        // mask over values strictly between

    bool operator==(const Arc& o) const {
        return left == o.left && right == o.right && above == o.above;
    }
    bool operator<(const Arc& o) const;
};

struct ArcDiagram {
    std::vector<Arc> arcs;          // sorted

    bool operator==(const ArcDiagram& o) const { return arcs == o.arcs; }
};

ArcDiagram ascent_arcs(const Perm& p);
ArcDiagram descent_arcs(const Perm& p);

// arcs compatible with the decoration: crossing no wall.  The wall below a
// two-children value q is crossed by arcs passing under the dot q (q above
// the arc); the wall above a two-parents value by arcs passing over it.
bool arc_allowed(const Arc& a, const Decoration& dec);

// geometric crossing test for two arcs in the same diagram
bool arcs_cross(const Arc& a, const Arc& b);

// ascent and descent arcs of a tree: those of its extreme extensions
ArcDiagram tree_ascent_arcs(const Permutree& t);
ArcDiagram tree_descent_arcs(const Permutree& t);

// does the tree's class contain exactly one permutation?
bool is_singleton(const Permutree& t);

}  // namespace permutrees

#pragma once

// The graded algebra structure on decorated permutations and its quotient on
// trees: shifted shuffles and convolutions of decorated words, the class sums
// indexed by trees with their product (a lattice interval) and coproduct (the
// splits into a lower and an upper forest), the dual basis operations, the
// multiplicative interval bases with their indecomposables, the two-sided
// dendriform split, and truncated integer point transforms of tree cones.
//
// All sums are exact with integer coefficients, held in ordered maps so the
// expansions compare directly in tests.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "permutrees/correspond.hpp"
#include "permutrees/decoration.hpp"
#include "permutrees/enumeration.hpp"
#include "permutrees/permutation.hpp"
#include "permutrees/permutree.hpp"

namespace permutrees {

using PermSum = std::map<DecoratedPerm, long long>;
using PermTensor = std::map<std::pair<DecoratedPerm, DecoratedPerm>, long long>;
using TreeSum = std::map<Permutree, long long>;
using TreeTensor = std::map<std::pair<Permutree, Permutree>, long long>;

// ---- words -----------------------------------------------------------------

// concatenate with the second word's values shifted up; letters travel with
// their values
DecoratedPerm shifted_concat(const DecoratedPerm& a, const DecoratedPerm& b);

// all interleavings of a with the shifted b (letters travel with values),
// sorted; binomial(n+n', n) words, all distinct
std::vector<DecoratedPerm> shifted_shuffle(const DecoratedPerm& a, const DecoratedPerm& b);

// all ways to cut the value range of a single word into a low and a high
// part: the words sigma with std(sigma[0..n)) = a and std(sigma[n..)) = b,
// letters staying with their values
std::vector<DecoratedPerm> convolution(const DecoratedPerm& a, const DecoratedPerm& b);

// product and coproduct on formal sums of decorated words; the product of
// two homogeneous terms is the sum over their shifted shuffle, the coproduct
// splits a word at every value cut, standardizing both parts
PermSum word_product(const PermSum& a, const PermSum& b);
PermTensor word_coproduct(const PermSum& a);

// the two dendriform halves of the product: interleavings whose last entry
// comes from the left (respectively right) factor
PermSum word_product_left(const PermSum& a, const PermSum& b);
PermSum word_product_right(const PermSum& a, const PermSum& b);

// ---- tree classes ----------------------------------------------------------

// the class sum of a tree: one word term per linear extension
PermSum tree_class_sum(const Permutree& t);

// the bottom and top trees of the product interval: the tree of tau tau'bar
// and of tau'bar tau for extensions tau, tau' of the factors
Permutree under(const Permutree& t, const Permutree& u);
Permutree over(const Permutree& t, const Permutree& u);

// product of class sums: every tree in the rotation interval [under, over]
// on the concatenated decoration, each with coefficient 1
TreeSum class_product(const Permutree& t, const Permutree& u);

// a split of a tree into the forest below a horizontal cut and the forest
// above it; the components are standardized to their own value ranges and
// listed left to right
struct ClassSplit {
    std::vector<Permutree> below;
    std::vector<Permutree> above;
};
std::vector<ClassSplit> class_splits(const Permutree& t);

// coproduct of a class sum: over all splits, the product of the below forest
// tensor the product of the above forest
TreeTensor class_coproduct(const Permutree& t);

// ---- dual basis ------------------------------------------------------------

// product in the dual basis, extracted from the coproduct of class sums: the
// coefficient of S is the coefficient of t (x) u in the coproduct of S, and
// S ranges over the trees whose decoration shuffles the two factors'
TreeSum dual_product(const Permutree& t, const Permutree& u);

// coproduct in the dual basis: one term per gap between consecutive values,
// restricting the tree to the values up to the gap and above it
TreeTensor dual_coproduct(const Permutree& t);

// ---- multiplicative bases --------------------------------------------------

// the upper and lower order ideals of a tree in its rotation lattice, as
// class sums: these bases turn the product into a single term
TreeSum upper_ideal_sum(const Permutree& t);
TreeSum lower_ideal_sum(const Permutree& t);

// a tree is splittable when some edge cut severs a prefix of the values;
// equivalently some linear extension fixes an initial segment setwise
bool has_splitting_cut(const Permutree& t);

// the trees without a splitting cut form an upper ideal of the rotation
// lattice; these list its members and its minimal generators
std::vector<Permutree> indecomposable_trees(const Decoration& dec, int max_n = kDefaultMaxN);
std::vector<Permutree> indecomposable_generators(const Decoration& dec,
                                                 int max_n = kDefaultMaxN);

// dendriform halves on class sums: the terms of the product interval whose
// root is the left (right) factor's root.  Only decorations with a single
// parent slot at every vertex (no Up or Both letters) have unique roots and
// stay closed; others throw ScopeError
TreeSum class_product_left(const Permutree& t, const Permutree& u);
TreeSum class_product_right(const Permutree& t, const Permutree& u);

// ---- integer point transforms ----------------------------------------------

// a multivariate power series truncated at a fixed total degree; terms map
// exponent vectors (one entry per variable) to integer coefficients
class TruncatedSeries {
  public:
    TruncatedSeries(int vars, int degree);

    static TruncatedSeries one(int vars, int degree);
    static TruncatedSeries monomial(int vars, int degree, const std::vector<int>& exps);

    int vars() const { return vars_; }
    int degree() const { return degree_; }
    const std::map<std::vector<int>, long long>& terms() const { return terms_; }

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    bool operator==(const TruncatedSeries& o) const;

    // multiply by the geometric series of the monomial, i.e. divide by
    // (1 - monomial)
    TruncatedSeries& divide_one_minus(const std::vector<int>& exps);

    // the same series on more variables, exponents shifted right by offset
    TruncatedSeries embedded(int vars, int offset) const;

    std::string str() const;  // sorted human-readable form for diagnostics

  private:
    void prune();
    int vars_;
    int degree_;
    std::map<std::vector<int>, long long> terms_;
};

// generating function of the lattice points weakly increasing along the
// chain, strictly where consecutive chain values descend
TruncatedSeries chain_points(const Perm& tau, int vars, int degree);

// generating function of the tree's cone: the sum over linear extensions
TruncatedSeries tree_points(const Permutree& t, int vars, int degree);

// closed product form over the edge cuts.  Requires a single child slot at
// every vertex (no Down or Both letters): the tree is then rooted at a unique
// bottommost vertex and its closed cone is simplicial with the edge cuts as
// rays; other decorations throw ScopeError
TruncatedSeries tree_points_cut_form(const Permutree& t, int vars, int degree);

}  // namespace permutrees

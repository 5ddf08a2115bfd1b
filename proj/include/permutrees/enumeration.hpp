#pragma once

// Counting and enumeration: how many trees a decoration carries, by several
// independent methods, plus the face counts of the associated polytope and
// the classification count of polytopes up to isometry.

#include <map>
#include <string>
#include <vector>

#include "permutrees/decoration.hpp"
#include "permutrees/permutree.hpp"

namespace permutrees {

inline constexpr int kDefaultMaxN = 8;

enum class CountMethod { Brute, GapRecurrence, RootSum, TopmostSum, BlockProduct };
CountMethod count_method_from_string(const std::string& name);

// all trees of the decoration, canonically ordered (scan of class minima);
// results are cached per decoration
const std::vector<Permutree>& enumerate_trees(const Decoration& dec,
                                              int max_n = kDefaultMaxN);

// number of trees; RootSum and TopmostSum require a decoration without
// two-parents letters (MethodInapplicable otherwise)
long long count_trees(const Decoration& dec, CountMethod method,
                      int max_n = kDefaultMaxN);

// number of trees with the given count of free gaps, over the class minima;
// the free gaps of a minimum are the insertion slots for a new largest value
// that keep it minimal
std::map<int, long long> gap_profile(const Decoration& dec, int max_n = kDefaultMaxN);

// sum of tree counts over all words of the given length on the alphabet
long long family_total(const std::string& alphabet, int n);

// number of decorated ordered partitions up to the face congruence
enum class SchroderMethod { Brute, Recurrence };
long long schroder_count(const Decoration& dec, SchroderMethod method,
                         int max_n = kDefaultMaxN);

// proper-face counts of the tree polytope by dimension, f[k] = number of
// k-dimensional faces, k = 0 .. n-2 (computed from the same two-parameter
// recurrence as schroder_count)
std::vector<long long> f_vector(const Decoration& dec);

// h[k] = number of trees with exactly k increasing internal edges
std::vector<long long> h_vector(const Decoration& dec, int max_n = kDefaultMaxN);

// number of polytopes of dimension n up to isometry, i.e. interior decoration
// words of length n-1 counted up to reversal and the up/down flip
long long decoration_orbit_count(int dimension);

// declared here, implemented with the face structures: brute force class
// count over decorated ordered partitions
long long schroder_count_brute(const Decoration& dec);

}  // namespace permutrees

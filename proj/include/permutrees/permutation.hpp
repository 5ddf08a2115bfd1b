#pragma once

// Plain permutations of [n] = {1..n} in one-line notation, plus the weak
// order machinery everything else leans on.  Inversion sets are value pairs
// (a,b), a < b, with a appearing after b; they pack into a 64-bit mask for
// n <= 11, which covers every size this library accepts.

#include <cstdint>
#include <string>
#include <vector>

namespace permutrees {

using Perm = std::vector<int>;  // one-line notation, perm[i] = image of position i+1

// ---- basic construction / queries ----

Perm identity_perm(int n);
Perm reverse_perm(int n);              // n, n-1, ..., 1
Perm inverse(const Perm& p);
Perm compose(const Perm& p, const Perm& q);  // (p o q)(i) = p[q[i]]
bool is_permutation(const Perm& p);

// positions are 1-based throughout; position_of(p, v) = p^{-1}(v)
int position_of(const Perm& p, int value);

std::string perm_to_string(const Perm& p);        // "2751346" (values > 9 join with ',')
Perm perm_from_string(const std::string& text);   // inverse of the above

// standardization of an arbitrary list of distinct integers: the unique
// permutation with the same relative order
Perm standardize(const std::vector<int>& word);

// relabel a permutation of [k] into the ordered value set `values` (size k):
// entry v becomes values[v-1]
std::vector<int> relabel(const Perm& p, const std::vector<int>& values);

// iterate all of S_n in lexicographic order; callback returns void
template <typename F>
void for_each_perm(int n, F&& fn) {
    Perm p = identity_perm(n);
    while (true) {
        fn(const_cast<const Perm&>(p));
        int i = n - 2;
        while (i >= 0 && p[i] >= p[i + 1]) --i;
        if (i < 0) break;
        int j = n - 1;
        while (p[j] <= p[i]) --j;
        std::swap(p[i], p[j]);
        for (int a = i + 1, b = n - 1; a < b; ++a, --b) std::swap(p[a], p[b]);
    }
}

// ---- weak order via inversion sets ----

// pair (a,b), 1 <= a < b <= n, packed to a fixed bit index
int inv_index(int a, int b, int n);

// Inv(p) = { (a,b) : a < b, a after b in p }, as a bitmask
std::uint64_t inversion_set(const Perm& p);

// number of inversions
int inversion_count(const Perm& p);

// weak order comparison: p <= q iff Inv(p) subseteq Inv(q)
bool weak_leq(const Perm& p, const Perm& q);

// is `mask` the inversion set of some permutation?  (transitive in both
// directions: (a,b),(b,c) set => (a,c) set; (a,c) unset stays consistent)
bool is_inversion_set(std::uint64_t mask, int n);

// rebuild the permutation from its inversion set (asserts validity)
Perm perm_from_inversions(std::uint64_t mask, int n);

// weak order lattice operations
Perm weak_join(const Perm& p, const Perm& q);
Perm weak_meet(const Perm& p, const Perm& q);

// covers of p going up: transpose an ascent p_i < p_{i+1}
std::vector<Perm> weak_upper_covers(const Perm& p);

// ---- shuffles ----

// all interleavings of two disjoint words keeping each word's internal order
std::vector<std::vector<int>> interleavings(const std::vector<int>& left,
                                            const std::vector<int>& right);

long long binomial(int n, int k);
long long factorial_ll(int n);

}  // namespace permutrees

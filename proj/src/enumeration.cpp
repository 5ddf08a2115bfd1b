#include "permutrees/enumeration.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "permutrees/correspond.hpp"
#include "permutrees/errors.hpp"

namespace permutrees {

namespace {

void check_size(const Decoration& dec, int max_n) {
    if (dec.size() == 0) throw EmptyInput("empty decoration");
    if (dec.size() > max_n)
        throw SizeBound("size " + std::to_string(dec.size()) + " exceeds the bound " +
                        std::to_string(max_n));
}

// ---- the gap recurrence ----
//
// Counts trees through the generating tree of class minima: a minimum at
// level m with g free gaps (slots where the next largest value can land
// without breaking minimality) contributes to level m+1 according to its
// last letter.  The two boundary gaps are always free, so g runs 2..m+1.

std::vector<std::vector<long long>> gap_table(const Decoration& dec) {
    int n = dec.size();
    // table[m][g], m = 1..n, g = 0..n+1
    std::vector<std::vector<long long>> table(n + 1, std::vector<long long>(n + 2, 0));
    table[1][2] = 1;
    for (int m = 2; m <= n; ++m) {
        const Letter l = dec[m];
        for (int g = 2; g <= m + 1; ++g) {
            long long& out = table[m][g];
            switch (l) {
                case Letter::None:
                    // every free gap of the parent stays free, one new gap opens
                    if (g > 2) out = (long long)(g - 1) * table[m - 1][g - 1];
                    break;
                case Letter::Down:
                case Letter::Up:
                    // only the gaps on one side of the insertion survive
                    for (int gp = g - 1; gp <= m; ++gp) out += table[m - 1][gp];
                    break;
                case Letter::Both:
                    // all old gaps close; only the two boundary gaps remain
                    if (g == 2)
                        for (int gp = 2; gp <= m; ++gp) out += (long long)gp * table[m - 1][gp];
                    break;
            }
        }
    }
    return table;
}

long long count_gap_recurrence(const Decoration& dec) {
    auto table = gap_table(dec);
    long long total = 0;
    for (long long v : table[dec.size()]) total += v;
    return total;
}

// ---- summation formulas (decorations without two-parents letters) ----

std::string downward_word(const Decoration& dec) {
    std::string word = dec.str();
    for (char c : word)
        if (c != 'o' && c != 'd')
            throw MethodInapplicable(
                "summation formulas require a decoration without two-parents letters, got '" +
                word + "'");
    return word;
}

// group trees by their root: a root without children splits nothing, a root
// with two children splits the word at its position
long long root_sum(const std::string& word, std::map<std::string, long long>& memo) {
    if (word.empty()) return 1;
    auto it = memo.find(word);
    if (it != memo.end()) return it->second;
    long long total = 0;
    for (int i = 0; i < (int)word.size(); ++i) {
        if (word[i] == 'o') {
            total += root_sum(word.substr(0, i) + word.substr(i + 1), memo);
        } else {
            total += root_sum(word.substr(0, i), memo) * root_sum(word.substr(i + 1), memo);
        }
    }
    memo[word] = total;
    return total;
}

// group trees by their topmost two-children vertex instead; the single-slot
// values above it form a chain, ordered freely: a word with no two-children
// letter counts all orderings of its values
long long topmost_sum(const std::string& word, std::map<std::string, long long>& memo) {
    if (word.find('d') == std::string::npos) return factorial_ll((int)word.size());
    auto it = memo.find(word);
    if (it != memo.end()) return it->second;
    std::vector<int> none_pos;
    for (int i = 0; i < (int)word.size(); ++i)
        if (word[i] == 'o') none_pos.push_back(i);
    long long total = 0;
    for (int i = 0; i < (int)word.size(); ++i) {
        if (word[i] != 'd') continue;
        for (std::uint32_t sub = 0; sub < (1u << none_pos.size()); ++sub) {
            std::string left, right;
            int picked = 0;
            auto in_sub = [&](int pos) {
                for (int k = 0; k < (int)none_pos.size(); ++k)
                    if (none_pos[k] == pos) return (sub >> k & 1) != 0;
                return false;
            };
            for (int j = 0; j < (int)word.size(); ++j) {
                if (in_sub(j)) {
                    ++picked;
                    continue;
                }
                if (j < i) left += word[j];
                if (j > i) right += word[j];
            }
            total += topmost_sum(left, memo) * topmost_sum(right, memo) * factorial_ll(picked);
        }
    }
    memo[word] = total;
    return total;
}

// a two-parents-and-children letter funnels every tree through one vertex, so
// the count factors into the segments it separates; the shared boundary
// letter is replaced by an unconstrained one in both factors
long long block_product(const Decoration& dec) {
    std::string word = dec.str();
    std::vector<int> cuts;  // 0-based positions of Both letters
    for (int i = 0; i < (int)word.size(); ++i)
        if (word[i] == 'b') cuts.push_back(i);
    if (cuts.empty()) return count_gap_recurrence(dec);
    long long product = 1;
    int start = 0;
    cuts.push_back((int)word.size() - 1);  // last segment runs to the end
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        std::string segment = word.substr(start, cuts[k] - start + 1);
        if (segment.front() == 'b') segment.front() = 'o';
        if (segment.back() == 'b') segment.back() = 'o';
        product *= count_gap_recurrence(Decoration(segment));
        start = cuts[k];
    }
    return product;
}

}  // namespace

CountMethod count_method_from_string(const std::string& name) {
    if (name == "brute") return CountMethod::Brute;
    if (name == "gap_recurrence") return CountMethod::GapRecurrence;
    if (name == "root_sum") return CountMethod::RootSum;
    if (name == "topmost_sum") return CountMethod::TopmostSum;
    if (name == "block_product") return CountMethod::BlockProduct;
    throw MethodInapplicable("unknown counting method '" + name + "'");
}

const std::vector<Permutree>& enumerate_trees(const Decoration& dec, int max_n) {
    check_size(dec, max_n);
    static std::map<std::string, std::vector<Permutree>> cache;
    auto it = cache.find(dec.str());
    if (it != cache.end()) return it->second;
    std::vector<Permutree> trees;
    for_each_perm(dec.size(), [&](const Perm& p) {
        if (is_class_minimum(p, dec)) trees.push_back(p_symbol(p, dec));
    });
    std::sort(trees.begin(), trees.end());
    return cache.emplace(dec.str(), std::move(trees)).first->second;
}

long long count_trees(const Decoration& dec, CountMethod method, int max_n) {
    if (dec.size() == 0) throw EmptyInput("empty decoration");
    switch (method) {
        case CountMethod::Brute: {
            check_size(dec, max_n);
            long long total = 0;
            for_each_perm(dec.size(), [&](const Perm& p) {
                if (is_class_minimum(p, dec)) ++total;
            });
            return total;
        }
        case CountMethod::GapRecurrence:
            return count_gap_recurrence(dec);
        case CountMethod::RootSum: {
            std::map<std::string, long long> memo;
            return root_sum(downward_word(dec), memo);
        }
        case CountMethod::TopmostSum: {
            std::map<std::string, long long> memo;
            return topmost_sum(downward_word(dec), memo);
        }
        case CountMethod::BlockProduct:
            return block_product(dec);
    }
    throw MethodInapplicable("unhandled counting method");
}

std::map<int, long long> gap_profile(const Decoration& dec, int max_n) {
    check_size(dec, max_n);
    const int n = dec.size();
    const Decoration extended = dec.concat(Decoration("o"));
    std::map<int, long long> profile;
    for_each_perm(n, [&](const Perm& p) {
        if (!is_class_minimum(p, dec)) return;
        int free = 0;
        for (int gap = 0; gap <= n; ++gap) {
            Perm q(p.begin(), p.begin() + gap);
            q.push_back(n + 1);
            q.insert(q.end(), p.begin() + gap, p.end());
            if (is_class_minimum(q, extended)) ++free;
        }
        ++profile[free];
    });
    return profile;
}

long long family_total(const std::string& alphabet, int n) {
    if (n < 1) throw EmptyInput("family of empty words");
    long long total = 0;
    for (const Decoration& dec : all_decorations(n, alphabet))
        total += count_gap_recurrence(dec);
    return total;
}

// ---- face counts ----
//
// The same generating-tree idea with parts instead of single values: states
// are counted by free gaps g (2g+1 slots) and internal separators s.  The
// final table by separators gives the face numbers of the polytope, faces of
// dimension k matching states with n-1-k separators.

namespace {

std::vector<std::vector<long long>> schroder_table(const Decoration& dec) {
    const int n = dec.size();
    // table[g][s], g = 0..n, s = 0..n-1
    std::vector<std::vector<long long>> prev(n + 1, std::vector<long long>(n, 0)), cur = prev;
    prev[1][0] = 1;
    for (int m = 2; m <= n; ++m) {
        for (auto& row : cur) std::fill(row.begin(), row.end(), 0);
        const Letter l = dec[m];
        for (int g = 1; g <= m; ++g) {
            for (int s = 0; s <= m - 1; ++s) {
                long long& out = cur[g][s];
                switch (l) {
                    case Letter::None:
                        if (s >= g - 1) {
                            out = (long long)g * prev[g][s];
                            if (s >= 1) out += (long long)g * prev[g - 1][s - 1];
                        }
                        break;
                    case Letter::Down:
                    case Letter::Up:
                        if (s >= g - 1) {
                            for (int gp = g; gp <= m; ++gp) out += prev[gp][s];
                            if (s >= 1)
                                for (int gp = g - 1; gp <= m; ++gp) out += prev[gp][s - 1];
                        }
                        break;
                    case Letter::Both:
                        if (g == 1) {
                            for (int gp = 1; gp <= m; ++gp) {
                                out += (long long)gp * prev[gp][s];
                                if (s >= 1) out += (long long)(gp + 1) * prev[gp][s - 1];
                            }
                        }
                        break;
                }
            }
        }
        std::swap(prev, cur);
    }
    return prev;
}

}  // namespace

long long schroder_count(const Decoration& dec, SchroderMethod method, int max_n) {
    if (dec.size() == 0) throw EmptyInput("empty decoration");
    if (method == SchroderMethod::Brute) {
        check_size(dec, max_n);
        return schroder_count_brute(dec);
    }
    long long total = 0;
    for (const auto& row : schroder_table(dec))
        for (long long v : row) total += v;
    return total;
}

std::vector<long long> f_vector(const Decoration& dec) {
    if (dec.size() == 0) throw EmptyInput("empty decoration");
    const int n = dec.size();
    auto table = schroder_table(dec);
    std::vector<long long> f(std::max(0, n - 1), 0);
    for (int k = 0; k <= n - 2; ++k)
        for (int g = 0; g <= n; ++g) f[k] += table[g][n - 1 - k];
    return f;
}

std::vector<long long> h_vector(const Decoration& dec, int max_n) {
    check_size(dec, max_n);
    std::vector<long long> h(dec.size(), 0);
    for (const Permutree& t : enumerate_trees(dec, max_n)) {
        int increasing = 0;
        for (auto [child, parent] : t.internal_edges())
            if (child < parent) ++increasing;
        ++h[increasing];
    }
    return h;
}

long long decoration_orbit_count(int dimension) {
    if (dimension < 1) throw EmptyInput("dimension must be positive");
    const int len = dimension - 1;
    // Burnside over the four symmetries of the interior word: identity,
    // reversal, the up/down flip, and their composition
    auto pow_ll = [](long long base, int exp) {
        long long r = 1;
        while (exp-- > 0) r *= base;
        return r;
    };
    long long fix_id = pow_ll(4, len);
    long long fix_rev = pow_ll(4, (len + 1) / 2);
    long long fix_flip = pow_ll(2, len);  // only o and b survive the flip
    long long fix_both = (len % 2 == 0) ? pow_ll(4, len / 2) : 2 * pow_ll(4, (len - 1) / 2);
    return (fix_id + fix_rev + fix_flip + fix_both) / 4;
}

}  // namespace permutrees

#include "permutrees/permutation.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "permutrees/errors.hpp"

namespace permutrees {

Perm identity_perm(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 1);
    return p;
}

Perm reverse_perm(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = n - i;
    return p;
}

Perm inverse(const Perm& p) {
    Perm q(p.size());
    for (int i = 0; i < (int)p.size(); ++i) q[p[i] - 1] = i + 1;
    return q;
}

Perm compose(const Perm& p, const Perm& q) {
    assert(p.size() == q.size());
    Perm r(p.size());
    for (int i = 0; i < (int)p.size(); ++i) r[i] = p[q[i] - 1];
    return r;
}

bool is_permutation(const Perm& p) {
    std::vector<bool> seen(p.size() + 1, false);
    for (int v : p) {
        if (v < 1 || v > (int)p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

int position_of(const Perm& p, int value) {
    for (int i = 0; i < (int)p.size(); ++i)
        if (p[i] == value) return i + 1;
    throw SizeMismatch("value " + std::to_string(value) + " not present in permutation");
}

std::string perm_to_string(const Perm& p) {
    std::ostringstream out;
    bool wide = p.size() > 9;
    for (int i = 0; i < (int)p.size(); ++i) {
        if (wide && i) out << ',';
        out << p[i];
    }
    return out.str();
}

Perm perm_from_string(const std::string& text) {
    if (text.empty()) throw EmptyInput("empty permutation string");
    Perm p;
    if (text.find(',') != std::string::npos) {
        std::stringstream in(text);
        std::string tok;
        while (std::getline(in, tok, ',')) p.push_back(std::stoi(tok));
    } else {
        for (char c : text) {
            if (c < '1' || c > '9')
                throw UnknownLetter(std::string("bad digit '") + c + "' in permutation");
            p.push_back(c - '0');
        }
    }
    if (!is_permutation(p))
        throw SizeMismatch("string \"" + text + "\" is not a permutation of 1..n");
    return p;
}

Perm standardize(const std::vector<int>& word) {
    std::vector<int> sorted = word;
    std::sort(sorted.begin(), sorted.end());
    Perm out(word.size());
    for (int i = 0; i < (int)word.size(); ++i) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), word[i]);
        out[i] = int(it - sorted.begin()) + 1;
    }
    return out;
}

std::vector<int> relabel(const Perm& p, const std::vector<int>& values) {
    assert(p.size() == values.size());
    std::vector<int> out(p.size());
    for (int i = 0; i < (int)p.size(); ++i) out[i] = values[p[i] - 1];
    return out;
}

int inv_index(int a, int b, int n) {
    assert(1 <= a && a < b && b <= n);
    // pairs ordered (1,2),(1,3),...,(1,n),(2,3),...
    return (a - 1) * n - (a - 1) * a / 2 + (b - a - 1);
}

std::uint64_t inversion_set(const Perm& p) {
    int n = (int)p.size();
    assert(n <= 11 && "inversion masks need n <= 11");
    std::uint64_t mask = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (p[i] > p[j]) mask |= 1ull << inv_index(p[j], p[i], n);
    return mask;
}

int inversion_count(const Perm& p) {
    int n = (int)p.size(), c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (p[i] > p[j]) ++c;
    return c;
}

bool weak_leq(const Perm& p, const Perm& q) {
    std::uint64_t a = inversion_set(p), b = inversion_set(q);
    return (a & ~b) == 0;
}

bool is_inversion_set(std::uint64_t mask, int n) {
    auto has = [&](int a, int b) { return (mask >> inv_index(a, b, n)) & 1; };
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) {
                if (has(a, b) && has(b, c) && !has(a, c)) return false;
                if (!has(a, b) && !has(b, c) && has(a, c)) return false;
            }
    return true;
}

Perm perm_from_inversions(std::uint64_t mask, int n) {
    // value v sits after exactly inv-with-smaller count of larger values;
    // equivalently position of v = 1 + #{u < v after v} ... simplest correct
    // route: sort values by (position rank) = v - 1 - #{u<v inverted with v}
    // + #{w>v inverted with v}.  We instead build directly: the number of
    // values smaller than v that appear after v is s(v); the number larger
    // appearing before is l(v); position(v) = v - s(v) + l(v).
    auto has = [&](int a, int b) { return (mask >> inv_index(a, b, n)) & 1; };
    Perm out(n, 0);
    for (int v = 1; v <= n; ++v) {
        int s = 0, l = 0;
        for (int u = 1; u < v; ++u) s += has(u, v);
        for (int w = v + 1; w <= n; ++w) l += has(v, w);
        int pos = v - s + l;
        if (pos < 1 || pos > n || out[pos - 1] != 0)
            throw SizeMismatch("mask is not a valid inversion set");
        out[pos - 1] = v;
    }
    if (inversion_set(out) != mask)
        throw SizeMismatch("mask is not a valid inversion set");
    return out;
}

namespace {

// close a pair-mask under the two weak-order implications so it becomes the
// smallest inversion set containing it
std::uint64_t transitive_close(std::uint64_t mask, int n) {
    auto idx = [&](int a, int b) { return inv_index(a, b, n); };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) {
                if (!((mask >> idx(a, b)) & 1)) continue;
                for (int c = b + 1; c <= n; ++c)
                    if ((mask >> idx(b, c)) & 1 && !((mask >> idx(a, c)) & 1)) {
                        mask |= 1ull << idx(a, c);
                        changed = true;
                    }
            }
    }
    return mask;
}

}  // namespace

Perm weak_join(const Perm& p, const Perm& q) {
    int n = (int)p.size();
    if (q.size() != p.size()) throw SizeMismatch("join of permutations of different sizes");
    std::uint64_t mask = transitive_close(inversion_set(p) | inversion_set(q), n);
    return perm_from_inversions(mask, n);
}

Perm weak_meet(const Perm& p, const Perm& q) {
    // meet(p,q) = rev(join(rev p, rev q)) where rev = multiply by w0 on the left
    // (complement values), which anti-automorphs the weak order.
    int n = (int)p.size();
    auto flip = [&](const Perm& r) {
        Perm s(n);
        for (int i = 0; i < n; ++i) s[i] = n + 1 - r[i];
        return s;
    };
    return flip(weak_join(flip(p), flip(q)));
}

std::vector<Perm> weak_upper_covers(const Perm& p) {
    std::vector<Perm> out;
    for (int i = 0; i + 1 < (int)p.size(); ++i)
        if (p[i] < p[i + 1]) {
            Perm q = p;
            std::swap(q[i], q[i + 1]);
            out.push_back(q);
        }
    return out;
}

std::vector<std::vector<int>> interleavings(const std::vector<int>& left,
                                            const std::vector<int>& right) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    cur.reserve(left.size() + right.size());
    // classic two-pointer backtracking
    auto rec = [&](auto&& self, size_t i, size_t j) -> void {
        if (i == left.size() && j == right.size()) {
            out.push_back(cur);
            return;
        }
        if (i < left.size()) {
            cur.push_back(left[i]);
            self(self, i + 1, j);
            cur.pop_back();
        }
        if (j < right.size()) {
            cur.push_back(right[j]);
            self(self, i, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

long long factorial_ll(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace permutrees

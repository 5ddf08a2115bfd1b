#include "permutrees/hopf.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>

#include "permutrees/enumeration.hpp"
#include "permutrees/errors.hpp"
#include "permutrees/lattice.hpp"

namespace permutrees {

namespace {

// a decorated word from its values and the letters read along positions
DecoratedPerm from_positional(Perm perm, const std::vector<Letter>& by_position) {
    std::vector<Letter> by_value(perm.size(), Letter::None);
    for (size_t i = 0; i < perm.size(); ++i) by_value[perm[i] - 1] = by_position[i];
    return DecoratedPerm(std::move(perm), Decoration(std::move(by_value)));
}

// the standardized subword of the positions where keep is true; letters
// travel with their values
DecoratedPerm subword(const DecoratedPerm& dp, const std::vector<bool>& keep) {
    std::vector<int> values;
    for (int i = 0; i < dp.n(); ++i)
        if (keep[i]) values.push_back(dp.perm[i]);
    if (values.empty()) return DecoratedPerm();  // the counit side of a full split
    std::vector<int> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    Perm p(values.size());
    std::vector<Letter> by_value(values.size(), Letter::None);
    for (size_t i = 0; i < values.size(); ++i) {
        int rank = (int)(std::lower_bound(sorted.begin(), sorted.end(), values[i]) -
                         sorted.begin()) + 1;
        p[i] = rank;
        by_value[rank - 1] = dp.dec[values[i]];
    }
    return DecoratedPerm(std::move(p), Decoration(std::move(by_value)));
}

void require_homogeneous(const PermSum& s, const char* what) {
    if (s.empty()) throw EmptyOperand(std::string(what) + " received an empty sum");
    int n = s.begin()->first.n();
    for (const auto& [dp, c] : s)
        if (dp.n() != n)
            throw MixedGrading(std::string(what) + " received words of sizes " +
                               std::to_string(n) + " and " + std::to_string(dp.n()));
}

// restriction of an extension to a value range, standardized; together with
// the restricted decoration this projects a tree to the range
Permutree restrict_tree(const Permutree& t, int lo, int hi) {
    if (hi < lo) return Permutree();
    Perm tau = min_extension(t);
    Perm word;
    for (int v : tau)
        if (lo <= v && v <= hi) word.push_back(v - lo + 1);
    std::vector<int> values(hi - lo + 1);
    std::iota(values.begin(), values.end(), lo);
    return p_symbol(word, t.decoration().restrict_to(values));
}

// the forest obtained by keeping exactly the vertices in mask, split into
// connected components, each standardized to its own size; components are
// listed by their smallest label
std::vector<Permutree> induced_forest(const Permutree& t, std::uint32_t mask) {
    std::vector<Permutree> out;
    std::uint32_t left = mask;
    Perm tau = min_extension(t);
    while (left) {
        int seed = std::countr_zero(left) + 1;
        // flood the component of seed inside the mask
        std::uint32_t comp = 0;
        std::vector<int> stack{seed};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (comp & (1u << (v - 1))) continue;
            comp |= 1u << (v - 1);
            for (int w : t.parents(v))
                if (w && (mask & (1u << (w - 1)))) stack.push_back(w);
            for (int w : t.children(v))
                if (w && (mask & (1u << (w - 1)))) stack.push_back(w);
        }
        left &= ~comp;
        // the component inherits the order of any extension of the tree
        std::vector<int> values = mask_to_values(comp);
        Perm word;
        for (int v : tau) {
            auto it = std::lower_bound(values.begin(), values.end(), v);
            if (it != values.end() && *it == v)
                word.push_back((int)(it - values.begin()) + 1);
        }
        out.push_back(p_symbol(word, t.decoration().restrict_to(values)));
    }
    return out;  // discovery order lists components by increasing smallest label
}

TreeSum one_tree(const Permutree& t) { return {{t, 1}}; }

const int kMaxSeriesVars = 10;
const int kMaxSeriesDegree = 10;

}  // namespace

// ---- words -----------------------------------------------------------------

DecoratedPerm shifted_concat(const DecoratedPerm& a, const DecoratedPerm& b) {
    Perm p = a.perm;
    for (int v : b.perm) p.push_back(v + a.n());
    return DecoratedPerm(std::move(p), a.dec.concat(b.dec));
}

std::vector<DecoratedPerm> shifted_shuffle(const DecoratedPerm& a, const DecoratedPerm& b) {
    if (a.n() == 0 && b.n() == 0) return {DecoratedPerm()};
    Perm shifted;
    for (int v : b.perm) shifted.push_back(v + a.n());
    Decoration dec = a.dec.concat(b.dec);
    std::vector<DecoratedPerm> out;
    for (auto& word : interleavings(a.perm, shifted))
        out.emplace_back(std::move(word), dec);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<DecoratedPerm> convolution(const DecoratedPerm& a, const DecoratedPerm& b) {
    if (a.n() == 0 && b.n() == 0) return {DecoratedPerm()};
    const int n = a.n(), m = b.n();
    Decoration pa = a.positional(), pb = b.positional();
    std::vector<Letter> by_position(n + m);
    for (int i = 0; i < n; ++i) by_position[i] = pa[i + 1];
    for (int j = 0; j < m; ++j) by_position[n + j] = pb[j + 1];
    std::vector<DecoratedPerm> out;
    // choose which values land in the first block
    for (std::uint32_t pick = 0; pick < (1u << (n + m)); ++pick) {
        if (std::popcount(pick) != n) continue;
        std::vector<int> low = mask_to_values(pick);
        std::vector<int> high = mask_to_values(~pick & ((1u << (n + m)) - 1));
        Perm word(n + m);
        for (int i = 0; i < n; ++i) word[i] = low[a.perm[i] - 1];
        for (int j = 0; j < m; ++j) word[n + j] = high[b.perm[j] - 1];
        out.push_back(from_positional(std::move(word), by_position));
    }
    std::sort(out.begin(), out.end());
    return out;
}

PermSum word_product(const PermSum& a, const PermSum& b) {
    require_homogeneous(a, "word product");
    require_homogeneous(b, "word product");
    PermSum out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b)
            for (const DecoratedPerm& s : shifted_shuffle(x, y)) out[s] += cx * cy;
    return out;
}

PermTensor word_coproduct(const PermSum& a) {
    require_homogeneous(a, "word coproduct");
    PermTensor out;
    for (const auto& [x, c] : a) {
        for (int k = 0; k <= x.n(); ++k) {
            std::vector<bool> keep(x.n(), false);
            std::fill(keep.begin(), keep.begin() + k, true);
            DecoratedPerm left = subword(x, keep);
            keep.flip();
            DecoratedPerm right = subword(x, keep);
            out[{std::move(left), std::move(right)}] += c;
        }
    }
    return out;
}

PermSum word_product_left(const PermSum& a, const PermSum& b) {
    require_homogeneous(a, "left product");
    require_homogeneous(b, "left product");
    if (a.begin()->first.n() == 0 || b.begin()->first.n() == 0)
        throw EmptyOperand("the split products are not defined on empty words");
    PermSum out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b)
            for (const DecoratedPerm& s : shifted_shuffle(x, y))
                if (s.perm.back() <= x.n()) out[s] += cx * cy;
    return out;
}

PermSum word_product_right(const PermSum& a, const PermSum& b) {
    require_homogeneous(a, "right product");
    require_homogeneous(b, "right product");
    if (a.begin()->first.n() == 0 || b.begin()->first.n() == 0)
        throw EmptyOperand("the split products are not defined on empty words");
    PermSum out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b)
            for (const DecoratedPerm& s : shifted_shuffle(x, y))
                if (s.perm.back() > x.n()) out[s] += cx * cy;
    return out;
}

// ---- tree classes ----------------------------------------------------------

PermSum tree_class_sum(const Permutree& t) {
    if (t.n() == 0) return {{DecoratedPerm(), 1}};
    PermSum out;
    for (Perm& tau : linear_extensions(t))
        out[DecoratedPerm(std::move(tau), t.decoration())] = 1;
    return out;
}

Permutree under(const Permutree& t, const Permutree& u) {
    if (t.n() == 0) return u;
    if (u.n() == 0) return t;
    DecoratedPerm a(min_extension(t), t.decoration());
    DecoratedPerm b(min_extension(u), u.decoration());
    return p_symbol(shifted_concat(a, b));
}

Permutree over(const Permutree& t, const Permutree& u) {
    if (t.n() == 0) return u;
    if (u.n() == 0) return t;
    Perm word;
    for (int v : min_extension(u)) word.push_back(v + t.n());
    for (int v : min_extension(t)) word.push_back(v);
    return p_symbol(word, t.decoration().concat(u.decoration()));
}

TreeSum class_product(const Permutree& t, const Permutree& u) {
    if (t.n() == 0) return one_tree(u);
    if (u.n() == 0) return one_tree(t);
    Permutree lo = under(t, u), hi = over(t, u);
    TreeSum out;
    for (const Permutree& s : enumerate_trees(lo.decoration()))
        if (tree_leq(lo, s) && tree_leq(s, hi)) out[s] = 1;
    return out;
}

std::vector<ClassSplit> class_splits(const Permutree& t) {
    const int n = t.n();
    // masks closed under taking descendants split the tree horizontally
    std::vector<std::uint32_t> down(n + 1, 0);
    for (int v = 1; v <= n; ++v) down[v] = t.descendants(v) | (1u << (v - 1));
    std::uint32_t all = n >= 32 ? ~0u : (1u << n) - 1;
    std::vector<ClassSplit> out;
    for (std::uint32_t mask = 0;; ++mask) {
        bool lower = true;
        for (int v = 1; v <= n && lower; ++v)
            if ((mask & (1u << (v - 1))) && (down[v] & ~mask)) lower = false;
        if (lower) {
            ClassSplit split;
            split.below = induced_forest(t, mask);
            split.above = induced_forest(t, all & ~mask);
            out.push_back(std::move(split));
        }
        if (mask == all) break;
    }
    return out;
}

TreeTensor class_coproduct(const Permutree& t) {
    TreeTensor out;
    for (const ClassSplit& split : class_splits(t)) {
        TreeSum below = one_tree(Permutree());
        for (const Permutree& part : split.below) {
            TreeSum next;
            for (const auto& [x, c] : below)
                for (const auto& [y, d] : class_product(x, part)) next[y] += c * d;
            below = std::move(next);
        }
        TreeSum above = one_tree(Permutree());
        for (const Permutree& part : split.above) {
            TreeSum next;
            for (const auto& [x, c] : above)
                for (const auto& [y, d] : class_product(x, part)) next[y] += c * d;
            above = std::move(next);
        }
        for (const auto& [x, c] : below)
            for (const auto& [y, d] : above) out[{x, y}] += c * d;
    }
    return out;
}

// ---- dual basis ------------------------------------------------------------

TreeSum dual_product(const Permutree& t, const Permutree& u) {
    if (t.n() == 0) return one_tree(u);
    if (u.n() == 0) return one_tree(t);
    std::pair<DecoratedPerm, DecoratedPerm> key{
        DecoratedPerm(min_extension(t), t.decoration()),
        DecoratedPerm(min_extension(u), u.decoration())};
    // candidate decorations: every distinct interleaving of the two words
    std::vector<int> wa, wb;
    for (int i = 1; i <= t.n(); ++i) wa.push_back((int)t.decoration()[i]);
    for (int i = 1; i <= u.n(); ++i) wb.push_back((int)u.decoration()[i]);
    std::set<std::vector<int>> mixes;
    for (auto& mix : interleavings(wa, wb)) mixes.insert(std::move(mix));
    // the coefficient of each candidate tree is the coefficient of the two
    // factors' representatives in the split of its class sum
    TreeSum out;
    for (const std::vector<int>& mix : mixes) {
        std::vector<Letter> letters;
        for (int code : mix) letters.push_back((Letter)code);
        for (const Permutree& s : enumerate_trees(Decoration(std::move(letters)))) {
            PermTensor split = word_coproduct(tree_class_sum(s));
            auto it = split.find(key);
            if (it != split.end()) out[s] += it->second;
        }
    }
    return out;
}

TreeTensor dual_coproduct(const Permutree& t) {
    TreeTensor out;
    for (int gap = 0; gap <= t.n(); ++gap)
        out[{restrict_tree(t, 1, gap), restrict_tree(t, gap + 1, t.n())}] += 1;
    return out;
}

// ---- multiplicative bases --------------------------------------------------

TreeSum upper_ideal_sum(const Permutree& t) {
    TreeSum out;
    for (const Permutree& s : enumerate_trees(t.decoration()))
        if (tree_leq(t, s)) out[s] = 1;
    return out;
}

TreeSum lower_ideal_sum(const Permutree& t) {
    TreeSum out;
    for (const Permutree& s : enumerate_trees(t.decoration()))
        if (tree_leq(s, t)) out[s] = 1;
    return out;
}

bool has_splitting_cut(const Permutree& t) {
    for (const Cut& c : t.edge_cuts()) {
        std::uint32_t b = c.below;
        if ((b & (b + 1)) == 0) return true;  // below is a prefix of the values
    }
    return false;
}

std::vector<Permutree> indecomposable_trees(const Decoration& dec, int max_n) {
    std::vector<Permutree> out;
    for (const Permutree& t : enumerate_trees(dec, max_n))
        if (!has_splitting_cut(t)) out.push_back(t);
    return out;
}

std::vector<Permutree> indecomposable_generators(const Decoration& dec, int max_n) {
    enumerate_trees(dec, max_n);  // enforce the size bound before building the graph
    RotationGraph g = rotation_graph(dec);
    std::vector<bool> keep(g.nodes.size());
    for (size_t i = 0; i < g.nodes.size(); ++i) keep[i] = !has_splitting_cut(g.nodes[i]);
    // a member generates when every tree it covers lies outside the ideal
    std::vector<bool> minimal = keep;
    for (const auto& [from, to, edge] : g.edges) {
        (void)edge;
        if (keep[from]) minimal[to] = false;
    }
    std::vector<Permutree> out;
    for (size_t i = 0; i < g.nodes.size(); ++i)
        if (minimal[i]) out.push_back(g.nodes[i]);
    return out;
}

namespace {

// one parent slot per vertex means one stub parent slot in the whole tree,
// hence a unique root; the split products fix the root and need this
void require_single_parent(const Decoration& dec, const char* what) {
    for (int i = 1; i <= dec.size(); ++i)
        if (two_parents(dec[i]))
            throw ScopeError(std::string(what) +
                             " needs a single parent slot at every vertex, got " +
                             dec.str());
}

// one child slot per vertex roots every tree at a unique bottommost vertex,
// making the closed cone simplicial with the edge cuts as rays
void require_single_child(const Decoration& dec, const char* what) {
    for (int i = 1; i <= dec.size(); ++i)
        if (two_children(dec[i]))
            throw ScopeError(std::string(what) +
                             " needs a single child slot at every vertex, got " +
                             dec.str());
}

}  // namespace

TreeSum class_product_left(const Permutree& t, const Permutree& u) {
    if (t.n() == 0 || u.n() == 0)
        throw EmptyOperand("the split products are not defined on empty trees");
    require_single_parent(t.decoration(), "left class product");
    require_single_parent(u.decoration(), "left class product");
    Perm tau = min_extension(t);
    DecoratedPerm b(min_extension(u), u.decoration());
    // the lower endpoint grafts the second word just before the last letter
    Perm word(tau.begin(), tau.end() - 1);
    for (int v : b.perm) word.push_back(v + t.n());
    word.push_back(tau.back());
    Permutree lo = p_symbol(word, t.decoration().concat(u.decoration()));
    Permutree hi = over(t, u);
    TreeSum out;
    for (const Permutree& s : enumerate_trees(lo.decoration()))
        if (tree_leq(lo, s) && tree_leq(s, hi)) out[s] = 1;
    return out;
}

TreeSum class_product_right(const Permutree& t, const Permutree& u) {
    if (t.n() == 0 || u.n() == 0)
        throw EmptyOperand("the split products are not defined on empty trees");
    require_single_parent(t.decoration(), "right class product");
    require_single_parent(u.decoration(), "right class product");
    Perm tau = min_extension(t);
    Perm nu = min_extension(u);
    // the upper endpoint grafts the first word just before the second's last
    Perm word;
    for (size_t i = 0; i + 1 < nu.size(); ++i) word.push_back(nu[i] + t.n());
    for (int v : tau) word.push_back(v);
    word.push_back(nu.back() + t.n());
    Permutree hi = p_symbol(word, t.decoration().concat(u.decoration()));
    Permutree lo = under(t, u);
    TreeSum out;
    for (const Permutree& s : enumerate_trees(lo.decoration()))
        if (tree_leq(lo, s) && tree_leq(s, hi)) out[s] = 1;
    return out;
}

// ---- integer point transforms ----------------------------------------------

TruncatedSeries::TruncatedSeries(int vars, int degree) : vars_(vars), degree_(degree) {
    if (vars < 0 || vars > kMaxSeriesVars)
        throw DegreeBound("series supports up to " + std::to_string(kMaxSeriesVars) +
                          " variables, got " + std::to_string(vars));
    if (degree < 0 || degree > kMaxSeriesDegree)
        throw DegreeBound("series supports truncation degree up to " +
                          std::to_string(kMaxSeriesDegree) + ", got " +
                          std::to_string(degree));
}

TruncatedSeries TruncatedSeries::one(int vars, int degree) {
    TruncatedSeries s(vars, degree);
    s.terms_[std::vector<int>(vars, 0)] = 1;
    return s;
}

TruncatedSeries TruncatedSeries::monomial(int vars, int degree,
                                          const std::vector<int>& exps) {
    TruncatedSeries s(vars, degree);
    if ((int)exps.size() != vars)
        throw SizeMismatch("monomial on " + std::to_string(exps.size()) +
                           " variables in a series on " + std::to_string(vars));
    if (std::accumulate(exps.begin(), exps.end(), 0) <= degree) s.terms_[exps] = 1;
    return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    if (vars_ != o.vars_ || degree_ != o.degree_)
        throw SizeMismatch("adding series of different shapes");
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    prune();
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    if (vars_ != o.vars_ || degree_ != o.degree_)
        throw SizeMismatch("subtracting series of different shapes");
    for (const auto& [e, c] : o.terms_) terms_[e] -= c;
    prune();
    return *this;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    if (vars_ != o.vars_ || degree_ != o.degree_)
        throw SizeMismatch("multiplying series of different shapes");
    TruncatedSeries out(vars_, degree_);
    for (const auto& [e, c] : terms_)
        for (const auto& [f, d] : o.terms_) {
            std::vector<int> g(vars_);
            int total = 0;
            for (int i = 0; i < vars_; ++i) total += g[i] = e[i] + f[i];
            if (total <= degree_) out.terms_[g] += c * d;
        }
    out.prune();
    return out;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
    return vars_ == o.vars_ && degree_ == o.degree_ && terms_ == o.terms_;
}

TruncatedSeries& TruncatedSeries::divide_one_minus(const std::vector<int>& exps) {
    int step = std::accumulate(exps.begin(), exps.end(), 0);
    assert(step > 0);
    // multiply by 1 + m + m^2 + ...; each power raises the degree by step
    std::map<std::vector<int>, long long> base = terms_;
    for (int k = 1; k * step <= degree_; ++k)
        for (const auto& [e, c] : base) {
            std::vector<int> g(vars_);
            int total = 0;
            for (int i = 0; i < vars_; ++i) total += g[i] = e[i] + k * exps[i];
            if (total <= degree_) terms_[g] += c;
        }
    prune();
    return *this;
}

TruncatedSeries TruncatedSeries::embedded(int vars, int offset) const {
    TruncatedSeries out(vars, degree_);
    if (offset < 0 || vars_ + offset > vars)
        throw SizeMismatch("embedding a series out of range");
    for (const auto& [e, c] : terms_) {
        std::vector<int> g(vars, 0);
        for (int i = 0; i < vars_; ++i) g[offset + i] = e[i];
        out.terms_[g] = c;
    }
    return out;
}

std::string TruncatedSeries::str() const {
    std::ostringstream out;
    for (const auto& [e, c] : terms_) {
        out << (c >= 0 ? "+" : "") << c;
        for (int i = 0; i < vars_; ++i)
            if (e[i]) out << " t" << i + 1 << "^" << e[i];
        out << " ";
    }
    return out.str();
}

void TruncatedSeries::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second == 0 ? terms_.erase(it) : std::next(it);
}

TruncatedSeries chain_points(const Perm& tau, int vars, int degree) {
    const int n = (int)tau.size();
    if (n > vars) throw SizeMismatch("chain on more values than series variables");
    // numerator: one suffix monomial per descent of the chain
    std::vector<int> num(vars, 0);
    for (int i = 0; i + 1 < n; ++i)
        if (tau[i] > tau[i + 1])
            for (int j = i + 1; j < n; ++j) ++num[tau[j] - 1];
    TruncatedSeries s = TruncatedSeries::monomial(vars, degree, num);
    // denominator: one suffix geometric factor per position
    for (int i = 0; i < n; ++i) {
        std::vector<int> exps(vars, 0);
        for (int j = i; j < n; ++j) exps[tau[j] - 1] = 1;
        s.divide_one_minus(exps);
    }
    return s;
}

TruncatedSeries tree_points(const Permutree& t, int vars, int degree) {
    TruncatedSeries s(vars, degree);
    for (const Perm& tau : linear_extensions(t)) s += chain_points(tau, vars, degree);
    return s;
}

TruncatedSeries tree_points_cut_form(const Permutree& t, int vars, int degree) {
    require_single_child(t.decoration(), "cut form");
    const int n = t.n();
    if (n > vars) throw SizeMismatch("tree on more values than series variables");
    if (n == 0) return TruncatedSeries::one(vars, degree);
    std::uint32_t all = n >= 32 ? ~0u : (1u << n) - 1;
    // numerator: the above side of every decreasing edge
    std::vector<int> num(vars, 0);
    for (const Cut& c : t.edge_cuts())
        if (c.child > c.parent)
            for (int v : mask_to_values(all & ~c.below)) ++num[v - 1];
    TruncatedSeries s = TruncatedSeries::monomial(vars, degree, num);
    // denominators: the above side of every edge, plus the whole value set
    for (const Cut& c : t.edge_cuts()) {
        std::vector<int> exps(vars, 0);
        for (int v : mask_to_values(all & ~c.below)) exps[v - 1] = 1;
        s.divide_one_minus(exps);
    }
    std::vector<int> ones(vars, 0);
    for (int v = 1; v <= n; ++v) ones[v - 1] = 1;
    s.divide_one_minus(ones);
    return s;
}

}  // namespace permutrees

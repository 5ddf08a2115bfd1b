#include "permutrees/correspond.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

#include "permutrees/errors.hpp"

namespace permutrees {

DecoratedPerm::DecoratedPerm(Perm p, Decoration d) : perm(std::move(p)), dec(std::move(d)) {
    if (perm.empty()) throw EmptyInput("empty decorated permutation");
    if (!is_permutation(perm)) throw SizeMismatch("word is not a permutation");
    if ((int)perm.size() != dec.size())
        throw DecorationMismatch("decoration length differs from permutation size");
}

Decoration DecoratedPerm::positional() const {
    std::vector<Letter> by_pos;
    by_pos.reserve(perm.size());
    for (int v : perm) by_pos.push_back(dec[v]);
    return Decoration(std::move(by_pos));
}

DecoratedPerm DecoratedPerm::parse(const std::string& text) {
    auto at = text.find('@');
    if (at == std::string::npos)
        throw DecorationMismatch("decorated permutation needs an \"@values:...\" "
                                 "or \"@positions:...\" suffix");
    Perm p = perm_from_string(text.substr(0, at));
    std::string rest = text.substr(at + 1);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
        throw DecorationMismatch("missing ':' after the attachment mode");
    std::string mode = rest.substr(0, colon);
    Decoration letters(rest.substr(colon + 1));
    if ((int)p.size() != letters.size())
        throw DecorationMismatch("decoration length differs from permutation size");
    if (mode == "values") return DecoratedPerm(std::move(p), std::move(letters));
    if (mode == "positions") {
        // letter at position i belongs to value p[i]
        std::vector<Letter> by_value(p.size());
        for (int i = 0; i < (int)p.size(); ++i) by_value[p[i] - 1] = letters.letters()[i];
        return DecoratedPerm(std::move(p), Decoration(std::move(by_value)));
    }
    throw DecorationMismatch("attachment mode must be \"values\" or \"positions\"");
}

std::string DecoratedPerm::str(Attachment att) const {
    if (att == Attachment::Values)
        return perm_to_string(perm) + "@values:" + dec.str();
    return perm_to_string(perm) + "@positions:" + positional().str();
}

bool DecoratedPerm::operator<(const DecoratedPerm& o) const {
    if (perm != o.perm) return perm < o.perm;
    return dec < o.dec;
}

// ---- the insertion sweep ----

namespace {

struct Strand {
    int pos;     // column in quarter units: walls sit at 4w
    int origin;  // emitting vertex, or 0 for a bottom strand
    int slot;    // parent slot of the origin this strand will fill
};

}  // namespace

LeveledPermutree insert(const DecoratedPerm& dp) {
    int n = dp.n();
    const Decoration& dec = dp.dec;

    std::vector<std::vector<int>> par(n + 1), chl(n + 1);
    for (int v = 1; v <= n; ++v) {
        par[v].assign(two_parents(dec[v]) ? 2 : 1, -1);
        chl[v].assign(two_children(dec[v]) ? 2 : 1, -1);
    }

    // active vertical walls: below every unplaced two-children value, and
    // above every already placed two-parents value
    std::set<int> walls;
    for (int w : dec.positions_two_children()) walls.insert(4 * w);

    // one bottom strand per gap between consecutive walls (sentinels at the
    // far left and right)
    std::vector<Strand> strands;
    {
        std::vector<int> cols{0};
        for (int w : dec.positions_two_children()) cols.push_back(w);
        cols.push_back(n + 1);
        for (size_t i = 0; i + 1 < cols.size(); ++i)
            strands.push_back(Strand{2 * (cols[i] + cols[i + 1]), 0, 0});
    }
    auto strand_less = [](const Strand& a, const Strand& b) { return a.pos < b.pos; };

    // pull out the unique strand strictly inside (lo, hi); walls other than
    // the interval bounds must not separate it from the interval
    auto catch_in = [&](int lo, int hi) -> Strand {
        int found = -1;
        for (int i = 0; i < (int)strands.size(); ++i)
            if (lo < strands[i].pos && strands[i].pos < hi) {
                if (found != -1) throw InvalidTree("two strands share a region");
                found = i;
            }
        if (found == -1) throw InvalidTree("region without a strand");
        Strand s = strands[found];
        strands.erase(strands.begin() + found);
        return s;
    };

    auto wall_below = [&](int col) {
        auto it = walls.lower_bound(col);
        return it == walls.begin() ? -1 : *std::prev(it);
    };
    auto wall_above = [&](int col) {
        auto it = walls.upper_bound(col);
        return it == walls.end() ? 4 * (n + 1) + 1 : *it;
    };

    std::vector<int> level(n + 1, 0);
    for (int t = 1; t <= n; ++t) {
        int v = dp.perm[t - 1];
        level[v] = t;
        int col = 4 * v;

        auto attach = [&](const Strand& s, int child_slot) {
            if (s.origin == 0) {
                chl[v][child_slot] = 0;
            } else {
                chl[v][child_slot] = s.origin;
                par[s.origin][s.slot] = v;
            }
        };

        if (two_children(dec[v])) {
            // v's own wall splits its neighbourhood into a left and a right region
            int lo = wall_below(col), hi = wall_above(col);
            attach(catch_in(lo, col), 0);
            attach(catch_in(col, hi), 1);
            walls.erase(col);  // the wall below v ends here
        } else {
            int lo = wall_below(col), hi = wall_above(col);
            attach(catch_in(lo, hi), 0);
        }
        if (two_parents(dec[v])) walls.insert(col);  // the wall above v starts here

        auto emit = [&](int pos, int slot) {
            Strand s{pos, v, slot};
            auto it = std::lower_bound(strands.begin(), strands.end(), s, strand_less);
            if (it != strands.end() && it->pos == pos)
                throw InvalidTree("strand position collision");
            strands.insert(it, s);
        };
        if (two_parents(dec[v])) {
            emit(col - 1, 0);
            emit(col + 1, 1);
        } else {
            emit(col, 0);
        }
    }

    // surviving strands are the top stubs
    for (const Strand& s : strands) {
        if (s.origin == 0) throw InvalidTree("bottom strand not caught");
        par[s.origin][s.slot] = 0;
    }
    for (int v = 1; v <= n; ++v) {
        for (int x : par[v])
            if (x < 0) throw InvalidTree("unfilled parent slot after the sweep");
        for (int x : chl[v])
            if (x < 0) throw InvalidTree("unfilled child slot after the sweep");
    }

    LeveledPermutree out{Permutree(dec, std::move(par), std::move(chl)), std::move(level)};
    return out;
}

Permutree p_symbol(const DecoratedPerm& dp) { return insert(dp).tree; }

Permutree p_symbol(const Perm& p, const Decoration& dec) {
    return p_symbol(DecoratedPerm(p, dec));
}

std::vector<Perm> linear_extensions(const Permutree& t) {
    int n = t.n();
    std::vector<int> open(n + 1, 0);  // unplaced internal children per vertex
    for (int v = 1; v <= n; ++v)
        for (int c : t.children(v))
            if (c) ++open[v];
    std::vector<Perm> out;
    Perm cur;
    cur.reserve(n);
    std::vector<bool> used(n + 1, false);
    auto rec = [&](auto&& self) -> void {
        if ((int)cur.size() == n) {
            out.push_back(cur);
            return;
        }
        for (int v = 1; v <= n; ++v) {
            if (used[v] || open[v] != 0) continue;
            used[v] = true;
            cur.push_back(v);
            std::vector<int> bumped;
            for (int p : t.parents(v))
                if (p) {
                    --open[p];
                    bumped.push_back(p);
                }
            self(self);
            for (int p : bumped) ++open[p];
            cur.pop_back();
            used[v] = false;
        }
    };
    rec(rec);
    return out;
}

std::vector<Perm> tree_class(const Permutree& t) { return linear_extensions(t); }

namespace {

// can positions i, i+1 (0-based) of p be swapped congruently?
bool swap_allowed(const Perm& p, int i, const Decoration& dec) {
    int a = std::min(p[i], p[i + 1]), c = std::max(p[i], p[i + 1]);
    for (int j = 0; j < (int)p.size(); ++j) {
        int b = p[j];
        if (b <= a || b >= c) continue;
        if (j > i + 1 && two_children(dec[b])) return true;
        if (j < i && two_parents(dec[b])) return true;
    }
    return false;
}

}  // namespace

std::vector<Perm> congruence_class(const Perm& p, const Decoration& dec) {
    if ((int)p.size() != dec.size())
        throw DecorationMismatch("decoration length differs from permutation size");
    std::set<Perm> seen{p};
    std::deque<Perm> queue{p};
    while (!queue.empty()) {
        Perm cur = queue.front();
        queue.pop_front();
        for (int i = 0; i + 1 < (int)cur.size(); ++i) {
            if (!swap_allowed(cur, i, dec)) continue;
            Perm next = cur;
            std::swap(next[i], next[i + 1]);
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return std::vector<Perm>(seen.begin(), seen.end());
}

bool congruent(const Perm& p, const Perm& q, const Decoration& dec) {
    if (p.size() != q.size()) throw SizeMismatch("permutations of different sizes");
    if (p == q) return true;
    auto cls = congruence_class(p, dec);
    return std::find(cls.begin(), cls.end(), q) != cls.end();
}

bool is_class_minimum(const Perm& p, const Decoration& dec) {
    // a congruent swap across a descent would lower p
    for (int i = 0; i + 1 < (int)p.size(); ++i)
        if (p[i] > p[i + 1] && swap_allowed(p, i, dec)) return false;
    return true;
}

bool is_class_maximum(const Perm& p, const Decoration& dec) {
    for (int i = 0; i + 1 < (int)p.size(); ++i)
        if (p[i] < p[i + 1] && swap_allowed(p, i, dec)) return false;
    return true;
}

bool is_class_extreme(const Perm& p, const Decoration& dec, bool maximum) {
    return maximum ? is_class_maximum(p, dec) : is_class_minimum(p, dec);
}

namespace {

Perm greedy_extension(const Permutree& t, bool largest) {
    int n = t.n();
    std::vector<int> open(n + 1, 0);
    for (int v = 1; v <= n; ++v)
        for (int c : t.children(v))
            if (c) ++open[v];
    std::vector<bool> used(n + 1, false);
    Perm out;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 1; v <= n; ++v) {
            if (used[v] || open[v] != 0) continue;
            if (pick == -1 || (largest ? v > pick : v < pick)) pick = v;
        }
        if (pick == -1) throw InvalidTree("child->parent order has no linear extension");
        used[pick] = true;
        out.push_back(pick);
        for (int p : t.parents(pick))
            if (p) --open[p];
    }
    return out;
}

}  // namespace

Perm min_extension(const Permutree& t) { return greedy_extension(t, false); }
Perm max_extension(const Permutree& t) { return greedy_extension(t, true); }

// ---- arc diagrams ----

bool Arc::operator<(const Arc& o) const {
    if (left != o.left) return left < o.left;
    if (right != o.right) return right < o.right;
    return above < o.above;
}

namespace {

ArcDiagram adjacent_arcs(const Perm& p, bool ascents) {
    ArcDiagram d;
    for (int i = 0; i + 1 < (int)p.size(); ++i) {
        bool asc = p[i] < p[i + 1];
        if (asc != ascents) continue;
        Arc a;
        a.left = std::min(p[i], p[i + 1]);
        a.right = std::max(p[i], p[i + 1]);
        for (int j = i + 2; j < (int)p.size(); ++j)
            if (a.left < p[j] && p[j] < a.right) a.above |= 1u << (p[j] - 1);
        d.arcs.push_back(a);
    }
    std::sort(d.arcs.begin(), d.arcs.end());
    return d;
}

}  // namespace

ArcDiagram ascent_arcs(const Perm& p) { return adjacent_arcs(p, true); }
ArcDiagram descent_arcs(const Perm& p) { return adjacent_arcs(p, false); }

bool arc_allowed(const Arc& a, const Decoration& dec) {
    for (int q = a.left + 1; q < a.right; ++q) {
        bool above = (a.above >> (q - 1)) & 1;
        if (two_children(dec[q]) && above) return false;   // passes under the wall's dot
        if (two_parents(dec[q]) && !above) return false;   // passes over it
    }
    return true;
}

bool arcs_cross(const Arc& a, const Arc& b) {
    int lo = std::max(a.left, b.left), hi = std::min(a.right, b.right);
    bool plus = false, minus = false;  // a above b / a below b somewhere
    for (int k = lo; k <= hi; ++k) {
        bool enda = (k == a.left || k == a.right);
        bool endb = (k == b.left || k == b.right);
        if (enda && endb) continue;  // arcs meet at a shared dot
        int cmp = 0;
        if (!enda && !endb) {
            // k above an arc means that arc passes below the dot, so the arc
            // with k above it is the lower one
            bool ua = (a.above >> (k - 1)) & 1, ub = (b.above >> (k - 1)) & 1;
            if (ua != ub) cmp = ua ? -1 : 1;
        } else if (enda) {
            // a sits exactly on the dot; b passes over or under it
            bool ub = (b.above >> (k - 1)) & 1;
            cmp = ub ? 1 : -1;  // b under the dot => a above b
        } else {
            bool ua = (a.above >> (k - 1)) & 1;
            cmp = ua ? -1 : 1;
        }
        if (cmp > 0) plus = true;
        if (cmp < 0) minus = true;
    }
    return plus && minus;
}

ArcDiagram tree_ascent_arcs(const Permutree& t) { return ascent_arcs(max_extension(t)); }
ArcDiagram tree_descent_arcs(const Permutree& t) { return descent_arcs(min_extension(t)); }

bool is_singleton(const Permutree& t) {
    // the class is all linear extensions; stop as soon as two are found
    int n = t.n();
    std::vector<int> open(n + 1, 0);
    for (int v = 1; v <= n; ++v)
        for (int c : t.children(v))
            if (c) ++open[v];
    std::vector<bool> used(n + 1, false);
    int count = 0;
    auto rec = [&](auto&& self, int placed) -> void {
        if (count >= 2) return;
        if (placed == n) {
            ++count;
            return;
        }
        for (int v = 1; v <= n && count < 2; ++v) {
            if (used[v] || open[v] != 0) continue;
            used[v] = true;
            for (int p : t.parents(v))
                if (p) --open[p];
            self(self, placed + 1);
            for (int p : t.parents(v))
                if (p) ++open[p];
            used[v] = false;
        }
    };
    rec(rec, 0);
    return count == 1;
}

}  // namespace permutrees

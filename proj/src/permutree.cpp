#include "permutrees/permutree.hpp"

#include <algorithm>
#include <sstream>

#include "permutrees/errors.hpp"

namespace permutrees {

std::vector<int> mask_to_values(std::uint32_t mask) {
    std::vector<int> out;
    for (int v = 1; mask; ++v, mask >>= 1)
        if (mask & 1) out.push_back(v);
    return out;
}

std::uint32_t values_to_mask(const std::vector<int>& values) {
    std::uint32_t m = 0;
    for (int v : values) m |= 1u << (v - 1);
    return m;
}

Permutree::Permutree(Decoration dec,
                     std::vector<std::vector<int>> parents,
                     std::vector<std::vector<int>> children)
    : dec_(std::move(dec)), parents_(std::move(parents)), children_(std::move(children)) {}

std::vector<std::pair<int, int>> Permutree::internal_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 1; v <= n(); ++v)
        for (int p : parents_[v])
            if (p != 0) out.emplace_back(v, p);
    return out;
}

bool Permutree::has_edge(int child, int parent) const {
    if (child < 1 || child > n()) return false;
    for (int p : parents_[child])
        if (p == parent) return true;
    return false;
}

std::uint32_t Permutree::reach(int start, bool down) const {
    // labels reachable from `start` (inclusive) moving only down (children)
    // or only up (parents)
    std::uint32_t seen = 0;
    std::vector<int> stack{start};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (seen & (1u << (v - 1))) continue;
        seen |= 1u << (v - 1);
        const auto& next = down ? children_[v] : parents_[v];
        for (int w : next)
            if (w != 0) stack.push_back(w);
    }
    return seen;
}

std::uint32_t Permutree::descendant_subtree(int v, int slot) const {
    int c = children_[v].at(slot);
    return c == 0 ? 0 : reach(c, true);
}

std::uint32_t Permutree::ancestor_subtree(int v, int slot) const {
    int p = parents_[v].at(slot);
    return p == 0 ? 0 : reach(p, false);
}

std::uint32_t Permutree::descendants(int v) const {
    return reach(v, true) & ~(1u << (v - 1));
}

std::uint32_t Permutree::ancestors(int v) const {
    return reach(v, false) & ~(1u << (v - 1));
}

std::vector<std::string> Permutree::violations() const {
    std::vector<std::string> bad;
    int N = n();
    if ((int)parents_.size() != N + 1 || (int)children_.size() != N + 1) {
        bad.push_back("slot tables do not match the decoration size");
        return bad;
    }
    auto say = [&](const std::string& s) { bad.push_back(s); };

    // slot counts and entry ranges
    for (int v = 1; v <= N; ++v) {
        size_t wantP = two_parents(dec_[v]) ? 2 : 1;
        size_t wantC = two_children(dec_[v]) ? 2 : 1;
        if (parents_[v].size() != wantP)
            say("vertex " + std::to_string(v) + " has the wrong number of parent slots");
        if (children_[v].size() != wantC)
            say("vertex " + std::to_string(v) + " has the wrong number of child slots");
        for (int p : parents_[v])
            if (p < 0 || p > N || p == v)
                say("vertex " + std::to_string(v) + " has an out-of-range parent entry");
        for (int c : children_[v])
            if (c < 0 || c > N || c == v)
                say("vertex " + std::to_string(v) + " has an out-of-range child entry");
    }
    if (!bad.empty()) return bad;

    // mutual adjacency: v lists p as parent exactly as often as p lists v as child
    for (int v = 1; v <= N; ++v)
        for (int p : parents_[v]) {
            if (p == 0) continue;
            long up = std::count(parents_[v].begin(), parents_[v].end(), p);
            long dn = std::count(children_[p].begin(), children_[p].end(), v);
            if (up != dn)
                say("edge " + std::to_string(v) + "->" + std::to_string(p) +
                    " is not recorded on both endpoints");
        }
    if (!bad.empty()) return bad;

    // exactly n-1 internal edges, connected, acyclic upward
    auto edges = internal_edges();
    if ((int)edges.size() != N - 1)
        say("expected " + std::to_string(N - 1) + " internal edges, found " +
            std::to_string(edges.size()));
    {
        // connectivity over the undirected graph
        std::uint32_t seen = 0;
        std::vector<int> stack{1};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (seen & (1u << (v - 1))) continue;
            seen |= 1u << (v - 1);
            for (int w : parents_[v]) if (w) stack.push_back(w);
            for (int w : children_[v]) if (w) stack.push_back(w);
        }
        if (seen != (N >= 32 ? ~0u : (1u << N) - 1))
            say("the internal edges do not connect all vertices");
    }
    {
        // acyclicity of child -> parent
        std::vector<int> state(N + 1, 0);
        bool cyclic = false;
        auto dfs = [&](auto&& self, int v) -> void {
            state[v] = 1;
            for (int p : parents_[v]) {
                if (p == 0 || cyclic) continue;
                if (state[p] == 1) cyclic = true;
                else if (state[p] == 0) self(self, p);
            }
            state[v] = 2;
        };
        for (int v = 1; v <= N && !cyclic; ++v)
            if (state[v] == 0) dfs(dfs, v);
        if (cyclic) say("the parent relation has a directed cycle");
    }
    if (!bad.empty()) return bad;

    // label separation at two-slot vertices
    for (int v = 1; v <= N; ++v) {
        std::uint32_t smaller = (1u << (v - 1)) - 1;        // labels < v
        std::uint32_t larger = ~((1u << v) - 1);            // labels > v
        if (two_children(dec_[v])) {
            if (descendant_subtree(v, 0) & ~smaller)
                say("left descendant subtree of " + std::to_string(v) +
                    " contains a label above it");
            if (descendant_subtree(v, 1) & ~larger)
                say("right descendant subtree of " + std::to_string(v) +
                    " contains a label below it");
        }
        if (two_parents(dec_[v])) {
            if (ancestor_subtree(v, 0) & ~smaller)
                say("left ancestor subtree of " + std::to_string(v) +
                    " contains a label above it");
            if (ancestor_subtree(v, 1) & ~larger)
                say("right ancestor subtree of " + std::to_string(v) +
                    " contains a label below it");
        }
    }
    return bad;
}

void Permutree::validate() const {
    auto bad = violations();
    if (!bad.empty()) {
        std::string all;
        for (const auto& s : bad) {
            if (!all.empty()) all += "; ";
            all += s;
        }
        throw InvalidTree(all);
    }
}

std::vector<Cut> Permutree::edge_cuts() const {
    std::vector<Cut> out;
    for (auto [c, p] : internal_edges()) {
        // component of c once the edge c->p is removed
        std::uint32_t seen = 0;
        std::vector<int> stack{c};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (seen & (1u << (v - 1))) continue;
            seen |= 1u << (v - 1);
            for (int w : parents_[v])
                if (w && !(v == c && w == p)) stack.push_back(w);
            for (int w : children_[v]) if (w) stack.push_back(w);
        }
        out.push_back(Cut{c, p, seen});
    }
    return out;
}

Permutree Permutree::hreflect() const {
    int N = n();
    auto flip = [&](int v) { return v == 0 ? 0 : N + 1 - v; };
    std::vector<std::vector<int>> par(N + 1), chl(N + 1);
    for (int v = 1; v <= N; ++v) {
        int m = flip(v);
        par[m] = parents_[v];
        chl[m] = children_[v];
        for (int& x : par[m]) x = flip(x);
        for (int& x : chl[m]) x = flip(x);
        if (par[m].size() == 2) std::swap(par[m][0], par[m][1]);
        if (chl[m].size() == 2) std::swap(chl[m][0], chl[m][1]);
    }
    return Permutree(dec_.reversed(), std::move(par), std::move(chl));
}

Permutree Permutree::vreflect() const {
    return Permutree(dec_.flipped(), children_, parents_);
}

std::string Permutree::canonical_str() const {
    std::ostringstream out;
    out << dec_.str();
    for (int v = 1; v <= n(); ++v) {
        out << '|' << v << ":(";
        for (size_t i = 0; i < parents_[v].size(); ++i)
            out << (i ? "," : "") << parents_[v][i];
        out << ")(";
        for (size_t i = 0; i < children_[v].size(); ++i)
            out << (i ? "," : "") << children_[v][i];
        out << ')';
    }
    return out.str();
}

bool Permutree::operator==(const Permutree& o) const {
    return dec_ == o.dec_ && parents_ == o.parents_ && children_ == o.children_;
}

bool Permutree::operator<(const Permutree& o) const {
    if (dec_.letters() != o.dec_.letters()) return dec_.letters() < o.dec_.letters();
    if (parents_ != o.parents_) return parents_ < o.parents_;
    return children_ < o.children_;
}

nlohmann::ordered_json Permutree::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n();
    j["decoration"] = dec_.str();
    auto slots = [](const std::vector<int>& v) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (int x : v) {
            if (x == 0) a.push_back(nullptr);
            else a.push_back(x);
        }
        return a;
    };
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (int v = 1; v <= n(); ++v) {
        nlohmann::ordered_json e;
        e["label"] = v;
        e["parents"] = slots(parents_[v]);
        e["children"] = slots(children_[v]);
        verts.push_back(e);
    }
    j["vertices"] = verts;
    return j;
}

Permutree Permutree::from_json(const nlohmann::json& j) {
    int N = j.at("n").get<int>();
    Decoration dec(j.at("decoration").get<std::string>());
    if (dec.size() != N) throw SizeMismatch("decoration length disagrees with n");
    std::vector<std::vector<int>> par(N + 1), chl(N + 1);
    auto unslots = [](const nlohmann::json& a) {
        std::vector<int> v;
        for (const auto& x : a) v.push_back(x.is_null() ? 0 : x.get<int>());
        return v;
    };
    std::vector<bool> seen(N + 1, false);
    for (const auto& e : j.at("vertices")) {
        int v = e.at("label").get<int>();
        if (v < 1 || v > N || seen[v])
            throw InvalidTree("vertex list must mention each label exactly once");
        seen[v] = true;
        par[v] = unslots(e.at("parents"));
        chl[v] = unslots(e.at("children"));
    }
    for (int v = 1; v <= N; ++v)
        if (!seen[v]) throw InvalidTree("vertex " + std::to_string(v) + " missing");
    Permutree t(std::move(dec), std::move(par), std::move(chl));
    t.validate();
    return t;
}

std::vector<int> LeveledPermutree::extension() const {
    int N = tree.n();
    std::vector<int> ext(N, 0);
    for (int v = 1; v <= N; ++v) ext[level[v] - 1] = v;
    return ext;
}

}  // namespace permutrees

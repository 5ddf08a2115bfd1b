#include "permutrees/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "permutrees/errors.hpp"

namespace permutrees {

namespace {

// increasing rotation of edge i -> j (i < j, i child of j).  The subtree D in
// the right (or only) child slot of i and the subtree U in the left (or only)
// parent slot of j change sides when the edge flips.
Permutree rotate_increasing(const Permutree& t, int i, int j) {
    const Decoration& dec = t.decoration();
    int piR = two_parents(dec[i]) ? 1 : 0;   // slot of i holding j
    int ciR = two_children(dec[i]) ? 1 : 0;  // slot of i holding D
    int pjL = 0;                             // slot of j holding U
    int cjL = 0;                             // slot of j holding i

    if (t.parents(i).at(piR) != j || t.children(j).at(cjL) != i)
        throw NotAnEdge("edge " + std::to_string(i) + "->" + std::to_string(j) +
                        " is not in the expected slots");

    Permutree out = t;
    int d_root = out.children_mut(i)[ciR];
    int u_root = out.parents_mut(j)[pjL];

    out.parents_mut(i)[piR] = u_root;
    out.children_mut(i)[ciR] = j;
    out.parents_mut(j)[pjL] = i;
    out.children_mut(j)[cjL] = d_root;

    if (u_root != 0) {
        auto& ch = out.children_mut(u_root);
        *std::find(ch.begin(), ch.end(), j) = i;
    }
    if (d_root != 0) {
        auto& pa = out.parents_mut(d_root);
        *std::find(pa.begin(), pa.end(), i) = j;
    }
    return out;
}

}  // namespace

Permutree rotate(const Permutree& t, int child, int parent) {
    if (!t.has_edge(child, parent))
        throw NotAnEdge("tree has no internal edge " + std::to_string(child) + "->" +
                        std::to_string(parent));
    if (child < parent) return rotate_increasing(t, child, parent);
    // decreasing direction: conjugate by the horizontal mirror
    int n = t.n();
    Permutree m = t.hreflect();
    Permutree r = rotate_increasing(m, n + 1 - child, n + 1 - parent);
    return r.hreflect();
}

RotationGraph rotation_graph(const Decoration& dec) {
    auto [lo, hi] = extremes(dec);
    (void)hi;
    std::map<std::string, int> index;
    std::vector<Permutree> nodes;
    std::deque<int> queue;
    auto intern = [&](const Permutree& t) {
        auto key = t.canonical_str();
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = (int)nodes.size();
        index.emplace(key, id);
        nodes.push_back(t);
        queue.push_back(id);
        return id;
    };
    intern(lo);
    std::vector<std::tuple<int, int, std::pair<int, int>>> raw_edges;
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        Permutree cur = nodes[id];  // copy: nodes may reallocate
        for (auto [c, p] : cur.internal_edges()) {
            if (c > p) continue;  // only increasing rotations
            int to = intern(rotate(cur, c, p));
            raw_edges.emplace_back(id, to, std::make_pair(c, p));
        }
    }
    // renumber so nodes come out in the library's canonical order
    std::vector<int> order(nodes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return nodes[a] < nodes[b]; });
    std::vector<int> rank(nodes.size());
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = (int)i;
    RotationGraph g;
    g.dec = dec;
    g.nodes.reserve(nodes.size());
    for (int id : order) g.nodes.push_back(nodes[id]);
    for (auto& [a, b, e] : raw_edges) g.edges.emplace_back(rank[a], rank[b], e);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

std::string rotation_graph_dot(const RotationGraph& g) {
    std::ostringstream out;
    out << "digraph rotations {\n";
    out << "  label=\"" << g.dec.str() << "\";\n";
    for (size_t i = 0; i < g.nodes.size(); ++i)
        out << "  n" << i << " [label=\"" << perm_to_string(min_extension(g.nodes[i]))
            << "\"];\n";
    for (auto& [a, b, e] : g.edges)
        out << "  n" << a << " -> n" << b << " [label=\"" << e.first << "->" << e.second
            << "\"];\n";
    out << "}\n";
    return out.str();
}

bool tree_leq(const Permutree& s, const Permutree& t) {
    if (s.decoration() != t.decoration())
        throw DecorationMismatch("comparing trees of different decorations");
    return weak_leq(min_extension(s), min_extension(t));
}

Permutree lattice_meet(const Permutree& s, const Permutree& t) {
    if (s.decoration() != t.decoration())
        throw DecorationMismatch("meet of trees of different decorations");
    return p_symbol(weak_meet(min_extension(s), min_extension(t)), s.decoration());
}

Permutree lattice_join(const Permutree& s, const Permutree& t) {
    if (s.decoration() != t.decoration())
        throw DecorationMismatch("join of trees of different decorations");
    return p_symbol(weak_join(max_extension(s), max_extension(t)), s.decoration());
}

std::pair<Perm, Perm> fiber_interval(const Permutree& t) {
    return {min_extension(t), max_extension(t)};
}

std::pair<Permutree, Permutree> extremes(const Decoration& dec) {
    int n = dec.size();
    return {p_symbol(identity_perm(n), dec), p_symbol(reverse_perm(n), dec)};
}

Permutree refine_project(const Permutree& t, const Decoration& coarser) {
    if (!t.decoration().refines_letterwise(coarser))
        throw NotARefinement("decoration " + t.decoration().str() +
                             " does not refine " + coarser.str());
    return p_symbol(min_extension(t), coarser);
}

}  // namespace permutrees

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "permutrees/correspond.hpp"
#include "permutrees/enumeration.hpp"
#include "permutrees/errors.hpp"
#include "permutrees/geometry.hpp"
#include "permutrees/lattice.hpp"
#include "permutrees/schroder.hpp"

using namespace permutrees;

namespace {

OrderedPartition op(const std::string& text) { return OrderedPartition::parse(text); }

std::set<OrderedPartition> op_set(const std::vector<OrderedPartition>& v) {
    return {v.begin(), v.end()};
}

std::vector<Perm> perms_of(int n) {
    std::vector<Perm> out;
    Perm w = identity_perm(n);
    do out.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

}  // namespace

// ==================== ordered partitions ====================

TEST_CASE("parse, print and validate ordered partitions") {
    auto p = op("125|37|46");
    CHECK(p.n() == 7);
    CHECK(p.parts.size() == 3);
    CHECK(p.level_of(5) == 1);
    CHECK(p.level_of(7) == 2);
    CHECK(p.level_of(4) == 3);
    CHECK(p.str() == "125|37|46");
    CHECK(op("1,2,5|3,7|4,6") == p);
    CHECK(OrderedPartition(Perm{2, 1, 3}) == op("2|1|3"));

    // parts are sorted on input
    CHECK(OrderedPartition({{5, 2, 1}, {7, 3}, {6, 4}}) == p);

    CHECK_THROWS_AS((void)op(""), EmptyInput);
    CHECK_THROWS_AS((void)op("1|x"), UnknownLetter);
    CHECK_THROWS_AS((void)op("12|2"), SizeMismatch);       // duplicate value
    CHECK_THROWS_AS((void)op("13"), SizeMismatch);         // gap in the values
    CHECK_THROWS_AS((void)OrderedPartition(std::vector<std::vector<int>>{{1}, {}}), EmptyInput);
    CHECK_THROWS_AS((void)p.level_of(9), SizeMismatch);
}

TEST_CASE("all ordered partitions by size") {
    CHECK(all_ordered_partitions(1).size() == 1);
    CHECK(all_ordered_partitions(2).size() == 3);
    CHECK(all_ordered_partitions(3).size() == 13);
    CHECK(all_ordered_partitions(4).size() == 75);
    CHECK(all_ordered_partitions(5).size() == 541);
    auto two = all_ordered_partitions(2);
    CHECK(op_set(two) == std::set<OrderedPartition>{op("1|2"), op("12"), op("2|1")});
    CHECK_THROWS_AS((void)all_ordered_partitions(0), EmptyInput);
}

// ==================== congruence ====================

TEST_CASE("rewriting equivalence around lower and upper walls") {
    // with walls below 1 and 4 and above 7, the first three of these are
    // equivalent and the fourth is not: between 3 and 4 no witness exists
    Decoration dec("doodoou");
    auto a = op("12|5|37|46"), b = op("125|37|46"), c = op("125|7|3|46"), d = op("125|7|46|3");
    CHECK(schroder_congruent(a, b, dec));
    CHECK(schroder_congruent(b, c, dec));
    CHECK(schroder_congruent(a, c, dec));
    CHECK_FALSE(schroder_congruent(c, d, dec));
    CHECK_FALSE(schroder_congruent(a, d, dec));

    // the sweep sees the same classes
    CHECK(p_star(a, dec) == p_star(b, dec));
    CHECK(p_star(b, dec) == p_star(c, dec));
    CHECK_FALSE(p_star(c, dec) == p_star(d, dec));

    // no walls, no moves: every partition is alone in its class
    CHECK(congruence_moves(b, Decoration("ooooooo")).empty());
    CHECK_THROWS_AS((void)congruence_moves(b, Decoration("oo")), DecorationMismatch);
}

TEST_CASE("classes partition the partitions and match the recurrence") {
    for (int n = 1; n <= 4; ++n) {
        auto parts = all_ordered_partitions(n);
        for (const Decoration& dec : all_decorations(n)) {
            std::set<OrderedPartition> seen;
            long long classes = 0;
            for (const auto& p : parts) {
                if (seen.count(p)) continue;
                ++classes;
                for (const auto& q : schroder_congruence_class(p, dec)) {
                    CHECK(seen.insert(q).second);  // classes are disjoint
                }
            }
            CHECK(seen.size() == parts.size());
            CHECK(classes == schroder_count(dec, SchroderMethod::Recurrence));
            CHECK(classes == (long long)all_schroder_trees(dec).size());
        }
    }
}

TEST_CASE("tree counts by sweeping at size five") {
    for (const Decoration& dec : all_decorations(5))
        CHECK((long long)all_schroder_trees(dec).size() ==
              schroder_count(dec, SchroderMethod::Recurrence));
}

// ==================== trees with merged blocks ====================

TEST_CASE("singleton sweeps agree with the plain insertion") {
    for (int n = 1; n <= 4; ++n)
        for (const Decoration& dec : all_decorations(n))
            for (const Perm& w : perms_of(n)) {
                auto s = p_star(OrderedPartition(w), dec);
                CHECK(s.violations().empty());
                CHECK(is_permutree(s));
                auto t = p_symbol(w, dec);
                CHECK(s == embed(t));
                CHECK(to_permutree(s) == t);
            }
}

TEST_CASE("a merged block with three incoming and two outgoing subtrees") {
    auto lev = insert_partition(op("125|37|46"), Decoration("ooobodo"));
    const auto& s = lev.tree;
    s.validate();
    CHECK(s.block_count() == 5);

    const int b = s.block_of(4);
    CHECK(s.block_of(6) == b);
    CHECK(s.block(b) == std::vector<int>{4, 6});
    CHECK(s.children(b).size() == 3);
    CHECK(s.parents(b).size() == 2);
    CHECK(lev.level[b] == 3);

    // the block catches 3 below the wall under 4, 5 between the walls, and 7
    // beyond the wall under 6; both upward gaps are stubs
    CHECK(s.children(b) == std::vector<int>{s.block_of(3), s.block_of(5), s.block_of(7)});
    CHECK(s.parents(b) == std::vector<int>{0, 0});
    CHECK(s.has_edge(s.block_of(3), b));
    CHECK_FALSE(s.has_edge(b, s.block_of(3)));
    CHECK_FALSE(is_permutree(s));
    CHECK_THROWS_AS((void)to_permutree(s), ScopeError);

    CHECK(s.canonical_str() ==
          "ooobodo|1,2:(3)(0)|3:(4)(1)|4,6:(0,0)(3,5,7)|5:(4)(0)|7:(4)(0)");
}

TEST_CASE("one part gives one block") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<int> all(n);
        for (int v = 1; v <= n; ++v) all[v - 1] = v;
        OrderedPartition whole(std::vector<std::vector<int>>{all});
        for (const Decoration& dec : all_decorations(n)) {
            auto s = p_star(whole, dec);
            s.validate();
            CHECK(s.block_count() == 1);
            CHECK(s.children(1).size() == dec.positions_two_children().size() + 1);
            CHECK(s.parents(1).size() == dec.positions_two_parents().size() + 1);
            for (int e : s.children(1)) CHECK(e == 0);
            for (int e : s.parents(1)) CHECK(e == 0);
        }
    }
}

TEST_CASE("structural violations are reported") {
    // block {1,2} under letter d on 1 needs two child slots, not one
    SchroderPermutree wrong(Decoration("do"), {{}, {1, 2}}, {{}, {0}}, {{}, {0}});
    CHECK_FALSE(wrong.violations().empty());
    CHECK_THROWS_AS(wrong.validate(), InvalidTree);

    // two blocks, no edge between them: not connected
    SchroderPermutree split(Decoration("oo"), {{}, {1}, {2}}, {{}, {0}, {0}}, {{}, {0}, {0}});
    CHECK_FALSE(split.violations().empty());

    // label on the wrong side of a wall: 2 hangs below the first gap of {1}
    // under letter d on 1, but the gap only admits labels smaller than 1
    SchroderPermutree side(Decoration("do"), {{}, {1}, {2}}, {{}, {0}, {1}},
                           {{}, {2, 0}, {0}});
    CHECK_FALSE(side.violations().empty());

    // blocks must cover every label exactly once
    CHECK_THROWS_AS(SchroderPermutree(Decoration("oo"), {{}, {1}}, {{}, {0}}, {{}, {0}}),
                    SizeMismatch);
    CHECK_THROWS_AS(SchroderPermutree(Decoration("oo"), {{}, {1, 1}}, {{}, {0}}, {{}, {0}}),
                    SizeMismatch);
}

TEST_CASE("contraction merges adjacent blocks") {
    // every contraction of every tree stays valid, loses one block, and is
    // refined by what it came from
    for (int n = 2; n <= 4; ++n)
        for (const Decoration& dec : all_decorations(n))
            for (const auto& s : all_schroder_trees(dec))
                for (auto [c, p] : s.internal_edges()) {
                    auto t = contract(s, s.block(c).front(), s.block(p).front());
                    CHECK(t.violations().empty());
                    CHECK(t.block_count() == s.block_count() - 1);
                    CHECK(schr_refines(s, t));
                }

    // contracting all edges in any greedy order reaches the one-block tree
    auto s = p_star(op("125|37|46"), Decoration("doodoou"));
    while (s.block_count() > 1) {
        auto [c, p] = s.internal_edges().front();
        s = contract(s, s.block(c).front(), s.block(p).front());
    }
    CHECK(s.block_count() == 1);

    auto t = p_star(op("1|2|3"), Decoration("ooo"));
    CHECK_THROWS_AS((void)contract(t, 1, 3), NotAnEdge);  // 3 is not adjacent to 1
    CHECK_THROWS_AS((void)contract(t, 2, 1), NotAnEdge);  // wrong way round
    CHECK_THROWS_AS((void)contract(t, 0, 1), NotAnEdge);
}

TEST_CASE("refinement between trees") {
    Decoration dec("odub");
    auto trees = all_schroder_trees(dec);
    for (const auto& s : trees) CHECK(schr_refines(s, s));

    // refinement is exactly reachability by contractions
    std::map<std::string, std::set<std::string>> above;  // canonical -> coarser
    std::vector<SchroderPermutree> queue = trees;
    for (size_t i = 0; i < queue.size(); ++i) {
        auto s = queue[i];
        for (auto [c, p] : s.internal_edges()) {
            auto t = contract(s, s.block(c).front(), s.block(p).front());
            if (above[s.canonical_str()].insert(t.canonical_str()).second) queue.push_back(t);
            for (const auto& higher : above[t.canonical_str()])
                above[s.canonical_str()].insert(higher);
        }
    }
    // run to a fixed point on the small set
    for (bool moved = true; moved;) {
        moved = false;
        for (auto& [key, ups] : above)
            for (const auto& u : std::set<std::string>(ups.begin(), ups.end()))
                for (const auto& uu : above[u])
                    if (ups.insert(uu).second) moved = true;
    }
    for (const auto& a : trees)
        for (const auto& b : trees) {
            bool reach = a.canonical_str() == b.canonical_str() ||
                         above[a.canonical_str()].count(b.canonical_str()) > 0;
            CHECK(schr_refines(a, b) == reach);
        }

    // different decorations never refine
    CHECK_FALSE(schr_refines(p_star(op("1|2"), Decoration("oo")),
                             p_star(op("12"), Decoration("od"))));
}

// ==================== fibers ====================

TEST_CASE("fibers are the congruence classes") {
    for (int n = 1; n <= 4; ++n) {
        auto parts = all_ordered_partitions(n);
        for (const Decoration& dec : all_decorations(n)) {
            std::set<OrderedPartition> covered;
            for (const auto& s : all_schroder_trees(dec)) {
                auto fiber = p_star_fiber(s);
                CHECK(op_set(fiber) ==
                      op_set(schroder_congruence_class(fiber.front(), dec)));
                for (const auto& q : fiber) {
                    CHECK(p_star(q, dec) == s);
                    CHECK(covered.insert(q).second);
                }
            }
            CHECK(covered.size() == parts.size());
        }
    }
}

TEST_CASE("the finest fiber member sections the sweep") {
    for (int n = 1; n <= 4; ++n)
        for (const Decoration& dec : all_decorations(n))
            for (const auto& s : all_schroder_trees(dec)) {
                auto lam = finest_fiber_member(s);
                CHECK(lam.parts.size() == (size_t)s.block_count());
                CHECK(p_star(lam, dec) == s);
            }
}

// ==================== the order on faces ====================

TEST_CASE("side counts order the partitions") {
    CHECK(coinversions(op("1|2")) == std::vector<int>{-1});
    CHECK(coinversions(op("12")) == std::vector<int>{0});
    CHECK(coinversions(op("2|1")) == std::vector<int>{1});
    CHECK(coinversions(op("13|2")) == std::vector<int>{-1, 0, 1});

    CHECK(facial_leq(op("1|2"), op("12")));
    CHECK(facial_leq(op("12"), op("2|1")));
    CHECK(facial_leq(op("1|2"), op("2|1")));
    CHECK_FALSE(facial_leq(op("2|1"), op("12")));
    CHECK_FALSE(facial_leq(op("12"), op("1|2")));

    // fully ordered bottom and top
    for (const auto& q : all_ordered_partitions(3)) {
        CHECK(facial_leq(op("1|2|3"), q));
        CHECK(facial_leq(q, op("3|2|1")));
    }
    CHECK_THROWS_AS((void)facial_leq(op("1|2"), op("1|2|3")), SizeMismatch);
}

TEST_CASE("covers are merges and splits") {
    for (int n = 1; n <= 4; ++n) {
        auto parts = all_ordered_partitions(n);
        for (const auto& p : parts) {
            // transitive reduction of the comparison order
            std::set<OrderedPartition> reduction;
            for (const auto& q : parts) {
                if (q == p || !facial_leq(p, q)) continue;
                bool direct = true;
                for (const auto& r : parts)
                    if (!(r == p) && !(r == q) && facial_leq(p, r) && facial_leq(r, q)) {
                        direct = false;
                        break;
                    }
                if (direct) reduction.insert(q);
            }
            CHECK(op_set(facial_covers(p)) == reduction);
        }
    }
}

TEST_CASE("each class has one lowest and one highest member") {
    for (int n = 1; n <= 4; ++n)
        for (const Decoration& dec : all_decorations(n))
            for (const auto& s : all_schroder_trees(dec)) {
                auto fiber = p_star_fiber(s);
                int lows = 0, highs = 0;
                for (const auto& p : fiber) {
                    bool is_low = true, is_high = true;
                    for (const auto& q : fiber) {
                        if (q == p) continue;
                        if (facial_leq(q, p)) is_low = false;
                        if (facial_leq(p, q)) is_high = false;
                    }
                    CHECK(is_schroder_class_minimum(p, dec) == is_low);
                    CHECK(is_schroder_class_maximum(p, dec) == is_high);
                    lows += is_low;
                    highs += is_high;
                }
                CHECK(lows == 1);
                CHECK(highs == 1);
            }
}

TEST_CASE("contraction generates a lattice") {
    // sizes and cover counts of the three decorations on three values, with
    // a unique bottom and top each
    const std::map<std::string, std::pair<int, int>> expected = {
        {"ooo", {13, 16}}, {"ddd", {11, 14}}, {"bbb", {9, 12}}};
    for (const auto& [ds, sizes] : expected) {
        auto lat = schroder_lattice(Decoration(ds));
        const int m = (int)lat.nodes.size();
        CHECK(m == sizes.first);
        int covers = 0, bottoms = 0, tops = 0;
        for (int a = 0; a < m; ++a) {
            bool isbot = true, istop = true;
            for (int b = 0; b < m; ++b) {
                if (b != a && lat.leq[b][a]) isbot = false;
                if (b != a && lat.leq[a][b]) istop = false;
                if (a == b || !lat.leq[a][b]) continue;
                bool direct = true;
                for (int c = 0; c < m && direct; ++c)
                    if (c != a && c != b && lat.leq[a][c] && lat.leq[c][b]) direct = false;
                covers += direct;
            }
            bottoms += isbot;
            tops += istop;
        }
        CHECK(covers == sizes.second);
        CHECK(bottoms == 1);
        CHECK(tops == 1);
    }

    // unique meets and joins on a mixed decoration of size four
    auto lat = schroder_lattice(Decoration("odub"));
    const int m = (int)lat.nodes.size();
    for (int a = 0; a < m; ++a) {
        CHECK(lat.leq[a][a]);
        for (int b = 0; b < m; ++b) {
            int meets = 0, joins = 0;
            for (int c = 0; c < m; ++c) {
                if (lat.leq[c][a] && lat.leq[c][b]) {
                    bool top = true;
                    for (int d = 0; d < m; ++d)
                        if (lat.leq[d][a] && lat.leq[d][b] && !lat.leq[d][c]) {
                            top = false;
                            break;
                        }
                    meets += top;
                }
                if (lat.leq[a][c] && lat.leq[b][c]) {
                    bool bot = true;
                    for (int d = 0; d < m; ++d)
                        if (lat.leq[a][d] && lat.leq[b][d] && !lat.leq[c][d]) {
                            bot = false;
                            break;
                        }
                    joins += bot;
                }
            }
            CHECK(meets == 1);
            CHECK(joins == 1);
        }
    }
    CHECK(lat.index_of(lat.nodes.front()) == 0);
    CHECK(lat.index_of(p_star(op("1|2"), Decoration("oo"))) == -1);
}

TEST_CASE("the lattice is the quotient of the partition order") {
    for (std::string ds : {"ooo", "ddd", "bbb", "odu", "oodd"}) {
        Decoration dec(ds);
        auto lat = schroder_lattice(dec);
        const int m = (int)lat.nodes.size();
        auto parts = all_ordered_partitions(dec.size());
        std::vector<int> cls(parts.size());
        for (size_t i = 0; i < parts.size(); ++i) cls[i] = lat.index_of(p_star(parts[i], dec));

        // class against class: related exactly when some members are
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                bool some = false;
                for (size_t i = 0; i < parts.size() && !some; ++i) {
                    if (cls[i] != a) continue;
                    for (size_t j = 0; j < parts.size(); ++j)
                        if (cls[j] == b && facial_leq(parts[i], parts[j])) {
                            some = true;
                            break;
                        }
                }
                CHECK(some == (bool)lat.leq[a][b]);
            }

        // every class is the whole interval between its extremes
        for (int a = 0; a < m; ++a) {
            auto fiber = p_star_fiber(lat.nodes[a]);
            OrderedPartition lo = fiber.front(), hi = fiber.front();
            for (const auto& q : fiber) {
                if (facial_leq(q, lo)) lo = q;
                if (facial_leq(hi, q)) hi = q;
            }
            std::set<OrderedPartition> interval;
            for (const auto& q : parts)
                if (facial_leq(lo, q) && facial_leq(q, hi)) interval.insert(q);
            CHECK(interval == op_set(fiber));
        }
    }
}

TEST_CASE("plain trees sit inside by rotation order") {
    for (std::string ds : {"ooo", "ddd", "odub"}) {
        Decoration dec(ds);
        auto lat = schroder_lattice(dec);
        auto trees = enumerate_trees(dec);
        for (const auto& a : trees)
            for (const auto& b : trees) {
                int ia = lat.index_of(embed(a)), ib = lat.index_of(embed(b));
                REQUIRE(ia >= 0);
                REQUIRE(ib >= 0);
                CHECK((bool)lat.leq[ia][ib] == tree_leq(a, b));
            }
    }
}

// ==================== faces of the polytope ====================

TEST_CASE("faces collect the refining trees") {
    for (std::string ds : {"oooo", "dddd", "bbbb", "odub"}) {
        Decoration dec(ds);
        const int n = dec.size();
        auto trees = all_schroder_trees(dec);
        auto plain = enumerate_trees(dec);
        std::vector<long long> by_dim(n, 0);
        for (const auto& s : trees) {
            auto info = face_of(s);
            CHECK(info.dimension == n - 1 - (int)s.internal_edges().size());
            ++by_dim[info.dimension];

            // inclusion both ways: a plain tree lies on the face exactly when
            // its vertex meets every tight inequality with equality
            std::set<std::string> on_face;
            for (const auto& t : info.refining) on_face.insert(t.canonical_str());
            CHECK(!info.refining.empty());
            for (const auto& t : plain) {
                auto x = vertex(t);
                bool tight = true;
                for (const auto& h : info.tight) {
                    long long sum = 0;
                    for (int v = 1; v <= n; ++v)
                        if ((h.block >> (v - 1)) & 1u) sum += x[v - 1];
                    if (sum != h.rhs) {
                        tight = false;
                        break;
                    }
                }
                CHECK(tight == (on_face.count(t.canonical_str()) > 0));
            }
        }
        // dimension profile matches the face counts, plus the whole polytope
        auto fv = f_vector(dec);
        for (int k = 0; k + 1 < n; ++k) CHECK(by_dim[k] == fv[k]);
        CHECK(by_dim[n - 1] == 1);
    }
}

TEST_CASE("face containment mirrors refinement") {
    Decoration dec("dddd");
    auto trees = all_schroder_trees(dec);
    std::vector<std::set<std::string>> refining;
    for (const auto& s : trees) {
        std::set<std::string> names;
        for (const auto& t : face_of(s).refining) names.insert(t.canonical_str());
        refining.push_back(std::move(names));
    }
    for (size_t i = 0; i < trees.size(); ++i)
        for (size_t j = 0; j < trees.size(); ++j) {
            bool subset = std::includes(refining[j].begin(), refining[j].end(),
                                        refining[i].begin(), refining[i].end());
            CHECK(subset == schr_refines(trees[i], trees[j]));
        }
}

TEST_CASE("geometric faces match the enumerated trees") {
    // every nonempty intersection of facets picks out the vertex set of
    // exactly one tree's face, and every tree arises this way
    for (std::string ds : {"oooo", "dddd", "bbbb", "odub"}) {
        Decoration dec(ds);
        auto poly = polytope(dec);
        const int n = dec.size();
        const int nf = (int)poly.facets.size();
        REQUIRE(nf <= 20);
        std::set<std::vector<int>> geometric;
        for (std::uint32_t pick = 0; pick < (1u << nf); ++pick) {
            std::vector<int> tightset;
            for (int k = 0; k < (int)poly.vertices.size(); ++k) {
                bool all = true;
                for (int f = 0; f < nf && all; ++f) {
                    if (!((pick >> f) & 1u)) continue;
                    long long sum = 0;
                    for (int v = 1; v <= n; ++v)
                        if ((poly.facets[f].block >> (v - 1)) & 1u)
                            sum += poly.vertices[k][v - 1];
                    if (sum != poly.facets[f].rhs) all = false;
                }
                if (all) tightset.push_back(k);
            }
            if (!tightset.empty()) geometric.insert(tightset);
        }

        std::set<std::vector<int>> enumerated;
        std::map<std::string, int> index;
        for (int k = 0; k < (int)poly.trees.size(); ++k)
            index[poly.trees[k].canonical_str()] = k;
        for (const auto& s : all_schroder_trees(dec)) {
            std::vector<int> verts;
            for (const auto& t : face_of(s).refining) verts.push_back(index.at(t.canonical_str()));
            std::sort(verts.begin(), verts.end());
            enumerated.insert(verts);
        }
        CHECK(geometric == enumerated);
        CHECK(geometric.size() == all_schroder_trees(dec).size());
    }
}

// ==================== products ====================

TEST_CASE("restriction to parts and to values") {
    auto mu = op("16|27|4|35");
    CHECK(restrict_parts(mu, {2, 3}) == op("13|2"));
    CHECK(restrict_values(mu, {1, 3, 5}) == op("1|23"));
    CHECK(restrict_parts(mu, {1, 2, 3, 4}) == mu);
    CHECK(restrict_values(mu, {1, 2, 3, 4, 5, 6, 7}) == mu);
    CHECK(restrict_values(mu, {4}) == op("1"));
    CHECK_THROWS_AS((void)restrict_parts(mu, {5}), SizeMismatch);
}

TEST_CASE("shuffle and convolution of partitions") {
    auto a = op("1|2"), b = op("2|13");
    CHECK(op_set(op_shuffle(a, b)) ==
          op_set({op("1|2|4|35"), op("1|24|35"), op("1|4|2|35"), op("1|4|235"), op("1|4|35|2"),
                  op("14|2|35"), op("14|235"), op("14|35|2"), op("4|1|2|35"), op("4|1|235"),
                  op("4|1|35|2"), op("4|135|2"), op("4|35|1|2")}));
    CHECK(op_shuffle(a, b).size() == 13);

    CHECK(op_set(op_convolution(a, b)) ==
          op_set({op("1|2|4|35"), op("1|3|4|25"), op("1|4|3|25"), op("1|5|3|24"), op("2|3|4|15"),
                  op("2|4|3|15"), op("2|5|3|14"), op("3|4|2|15"), op("3|5|2|14"),
                  op("4|5|2|13")}));
    CHECK(op_convolution(a, b).size() == 10);

    // every shuffle term restricts back to the operands
    for (const auto& q : op_shuffle(a, b)) {
        CHECK(restrict_values(q, {1, 2}) == a);
        CHECK(restrict_values(q, {3, 4, 5}) == b);
    }
    for (const auto& q : op_convolution(a, b)) {
        CHECK(restrict_parts(q, {1, 2}) == a);
        CHECK(restrict_parts(q, {3, 4}) == b);
    }
}

TEST_CASE("shuffles of whole fibers stay whole") {
    auto rep = schr_closure_check(4);
    CHECK(rep.closed);
    CHECK(rep.detail.empty());
    CHECK(rep.pairs_checked == 8336);
}

// ==================== projections ====================

TEST_CASE("coarsening the decoration projects the trees") {
    for (int n = 2; n <= 3; ++n)
        for (const Decoration& fine : all_decorations(n))
            for (const Decoration& coarse : all_decorations(n)) {
                if (!fine.refines_letterwise(coarse)) continue;
                std::set<SchroderPermutree> images;
                auto fine_lat = schroder_lattice(fine);
                auto coarse_lat = schroder_lattice(coarse);
                std::vector<int> img_index;
                for (const auto& s : fine_lat.nodes) {
                    auto image = schr_refine(s, coarse);
                    // the image does not depend on the chosen fiber member
                    for (const auto& lam : p_star_fiber(s)) CHECK(p_star(lam, coarse) == image);
                    images.insert(image);
                    img_index.push_back(coarse_lat.index_of(image));
                }
                // onto, and monotone for the contraction order
                CHECK(images.size() == coarse_lat.nodes.size());
                for (size_t i = 0; i < fine_lat.nodes.size(); ++i)
                    for (size_t j = 0; j < fine_lat.nodes.size(); ++j)
                        if (fine_lat.leq[i][j])
                            CHECK((bool)coarse_lat.leq[img_index[i]][img_index[j]]);
            }

    CHECK_THROWS_AS((void)schr_refine(p_star(op("12"), Decoration("dd")), Decoration("oo")),
                    NotARefinement);
}

// ==================== text and json ====================

TEST_CASE("decorated partition text form") {
    auto [p, dec] = parse_decorated_partition("125|37|46@odudodu");
    CHECK(p == op("125|37|46"));
    CHECK(dec == Decoration("odudodu"));
    CHECK(decorated_partition_str(p, dec) == "125|37|46@odudodu");
    CHECK_THROWS_AS((void)parse_decorated_partition("125|37|46"), UnknownLetter);
    CHECK_THROWS_AS((void)parse_decorated_partition("12|3@oo"), DecorationMismatch);
    CHECK_THROWS_AS((void)decorated_partition_str(op("12"), Decoration("o")),
                    DecorationMismatch);
}

TEST_CASE("json round trip") {
    for (std::string source : {"125|37|46@ooobodo", "12|5|37|46@doodoou", "1|2|3@uub"}) {
        auto [p, dec] = parse_decorated_partition(source);
        auto s = p_star(p, dec);
        auto j = s.to_json();
        CHECK(j.at("n").get<int>() == dec.size());
        CHECK(SchroderPermutree::from_json(j) == s);
    }
    // stubs serialize as null, labels as arrays
    auto s = p_star(op("12"), Decoration("oo"));
    CHECK(s.to_json().dump() ==
          R"({"n":2,"decoration":"oo","vertices":[{"label":[1,2],"parents":[null],"children":[null]}]})");

    auto broken = s.to_json();
    broken["vertices"][0]["label"] = {1};
    CHECK_THROWS_AS((void)SchroderPermutree::from_json(broken), InvalidTree);
}

TEST_CASE("size bounds and mismatches") {
    CHECK_THROWS_AS((void)insert_partition(op("1|2"), Decoration("ooo")), DecorationMismatch);
    CHECK_THROWS_AS((void)all_schroder_trees(Decoration("ooooo"), 4), SizeBound);
    CHECK_THROWS_AS((void)schroder_lattice(Decoration("ooooo"), 4), SizeBound);
    CHECK_THROWS_AS((void)face_of(p_star(op("12"), Decoration("oo")), 1), SizeBound);
    CHECK_THROWS_AS((void)is_schroder_class_minimum(op("1|2"), Decoration("o")),
                    DecorationMismatch);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "permutrees/correspond.hpp"
#include "permutrees/errors.hpp"

using namespace permutrees;

// ==================== parsing ====================

TEST_CASE("decorated permutation parsing round trip") {
    auto dp = DecoratedPerm::parse("2751346@values:odudodo");
    CHECK(dp.perm == Perm{2, 7, 5, 1, 3, 4, 6});
    CHECK(dp.dec.str() == "odudodo");
    CHECK(dp.str() == "2751346@values:odudodo");

    // positions mode: the letter written at position i belongs to value perm[i]
    auto pp = DecoratedPerm::parse("312@positions:oud");
    CHECK(pp.dec.str() == "udo");
    CHECK(pp.str(Attachment::Positions) == "312@positions:oud");
    CHECK(pp.positional().str() == "oud");

    CHECK_THROWS_AS(DecoratedPerm::parse("312"), DecorationMismatch);
    CHECK_THROWS_AS(DecoratedPerm::parse("312@values:od"), DecorationMismatch);
    CHECK_THROWS_AS(DecoratedPerm::parse("312@sideways:odo"), DecorationMismatch);
}

// ==================== the sweep ====================

TEST_CASE("insert keeps levels equal to positions") {
    // reading the labels back by level must reproduce the permutation, for
    // every decoration; this pins the bijection with leveled trees
    for (int n = 1; n <= 4; ++n) {
        for (const Decoration& dec : all_decorations(n)) {
            for_each_perm(n, [&](const Perm& p) {
                LeveledPermutree lt = insert(DecoratedPerm(p, dec));
                CHECK(lt.extension() == p);
                CHECK(lt.tree.violations().empty());
            });
        }
    }
}

TEST_CASE("insert stays valid on larger exhaustive sweeps") {
    for (int n = 5; n <= 6; ++n) {
        long long checked = 0, validated = 0;
        for (const Decoration& dec : all_decorations(n)) {
            for_each_perm(n, [&](const Perm& p) {
                LeveledPermutree lt = insert(DecoratedPerm(p, dec));
                if (lt.extension() != p) ++checked;  // count failures
                // full validation on a deterministic sample
                if (++validated % 97 == 0) CHECK(lt.tree.violations().empty());
            });
        }
        CHECK(checked == 0);
    }
}

namespace {

// oracle: classic binary search tree built by inserting the word from its
// last letter to its first; returns child->parent edges
std::set<std::pair<int, int>> bst_edges(const Perm& p) {
    std::set<std::pair<int, int>> edges;
    int root = -1;
    std::map<int, std::pair<int, int>> kids;  // node -> (left, right), -1 empty
    for (int i = (int)p.size() - 1; i >= 0; --i) {
        int v = p[i];
        kids[v] = {-1, -1};
        if (root == -1) {
            root = v;
            continue;
        }
        int cur = root;
        while (true) {
            auto& [l, r] = kids[cur];
            int& next = v < cur ? l : r;
            if (next == -1) {
                next = v;
                edges.insert({v, cur});
                break;
            }
            cur = next;
        }
    }
    return edges;
}

std::set<std::pair<int, int>> edge_set(const Permutree& t) {
    auto e = t.internal_edges();
    return std::set<std::pair<int, int>>(e.begin(), e.end());
}

}  // namespace

TEST_CASE("all-down decorations specialize to right-to-left BST insertion") {
    for (int n = 1; n <= 6; ++n) {
        Decoration dec(std::string(n, 'd'));
        for_each_perm(n, [&](const Perm& p) {
            Permutree t = p_symbol(p, dec);
            CHECK(edge_set(t) == bst_edges(p));
        });
    }
}

TEST_CASE("all-none decorations give the chain of positions") {
    // with every letter o the tree is the word itself stacked into a path
    Decoration dec("oooo");
    for_each_perm(4, [&](const Perm& p) {
        Permutree t = p_symbol(p, dec);
        for (int i = 0; i + 1 < 4; ++i) CHECK(t.has_edge(p[i], p[i + 1]));
    });
}

// ==================== fibers and the congruence ====================

TEST_CASE("fibers are exactly the linear extension sets") {
    for (int n = 1; n <= 4; ++n) {
        for (const Decoration& dec : all_decorations(n)) {
            std::map<std::string, std::set<Perm>> fibers;
            for_each_perm(n, [&](const Perm& p) {
                fibers[p_symbol(p, dec).canonical_str()].insert(p);
            });
            for (auto& [key, fiber] : fibers) {
                Permutree t = p_symbol(*fiber.begin(), dec);
                auto ext = linear_extensions(t);
                CHECK(std::set<Perm>(ext.begin(), ext.end()) == fiber);
            }
        }
    }
}

TEST_CASE("rewriting closure matches the fibers") {
    for (int n = 2; n <= 4; ++n) {
        for (const Decoration& dec : all_decorations(n)) {
            for_each_perm(n, [&](const Perm& p) {
                auto cls = congruence_class(p, dec);
                std::string key = p_symbol(p, dec).canonical_str();
                for (const Perm& q : cls) CHECK(p_symbol(q, dec).canonical_str() == key);
                // classes partition, so the closure size equals the fiber size
                CHECK(cls.size() == linear_extensions(p_symbol(p, dec)).size());
            });
        }
    }
}

TEST_CASE("congruent spot checks") {
    Decoration ddd("ddd");
    CHECK(congruent(Perm{1, 3, 2}, Perm{3, 1, 2}, ddd));
    CHECK(!congruent(Perm{1, 3, 2}, Perm{2, 3, 1}, ddd));
    // the class {132, 312}: swapping 1,3 is witnessed by 2 (two children, after)
    auto cls = congruence_class(Perm{1, 3, 2}, ddd);
    CHECK(cls == std::vector<Perm>{{1, 3, 2}, {3, 1, 2}});
}

TEST_CASE("classes are weak order intervals") {
    for (int n = 2; n <= 4; ++n) {
        for (const Decoration& dec : all_decorations(n)) {
            std::map<std::string, std::vector<Perm>> fibers;
            for_each_perm(n, [&](const Perm& p) {
                fibers[p_symbol(p, dec).canonical_str()].push_back(p);
            });
            for (auto& [key, fiber] : fibers) {
                // locate bottom and top by pairwise comparison
                Perm lo = fiber.front(), hi = fiber.front();
                for (const Perm& q : fiber) {
                    if (weak_leq(q, lo)) lo = q;
                    if (weak_leq(hi, q)) hi = q;
                }
                for (const Perm& q : fiber) {
                    CHECK(weak_leq(lo, q));
                    CHECK(weak_leq(q, hi));
                }
                // interval: everything between lo and hi lies in the fiber
                std::set<Perm> members(fiber.begin(), fiber.end());
                for_each_perm(n, [&](const Perm& q) {
                    if (weak_leq(lo, q) && weak_leq(q, hi)) CHECK(members.count(q) == 1);
                });
            }
        }
    }
}

TEST_CASE("pattern-avoidance extremes match brute force") {
    for (int n = 2; n <= 4; ++n) {
        for (const Decoration& dec : all_decorations(n)) {
            for_each_perm(n, [&](const Perm& p) {
                auto cls = congruence_class(p, dec);
                bool brute_min = true, brute_max = true;
                for (const Perm& q : cls) {
                    if (!weak_leq(p, q)) brute_min = false;
                    if (!weak_leq(q, p)) brute_max = false;
                }
                CHECK(is_class_minimum(p, dec) == brute_min);
                CHECK(is_class_maximum(p, dec) == brute_max);
                CHECK(is_class_extreme(p, dec, false) == brute_min);
                CHECK(is_class_extreme(p, dec, true) == brute_max);
            });
        }
    }
}

TEST_CASE("five minimal representatives for size three all-down") {
    Decoration ddd("ddd");
    int minima = 0;
    for_each_perm(3, [&](const Perm& p) { minima += is_class_minimum(p, ddd); });
    CHECK(minima == 5);
    // 132 is its class minimum, 312 its maximum
    CHECK(is_class_minimum(Perm{1, 3, 2}, ddd));
    CHECK(!is_class_maximum(Perm{1, 3, 2}, ddd));
    CHECK(is_class_maximum(Perm{3, 1, 2}, ddd));
}

TEST_CASE("greedy extreme extensions are the class extremes") {
    for (int n = 1; n <= 4; ++n) {
        for (const Decoration& dec : all_decorations(n)) {
            std::set<std::string> done;
            for_each_perm(n, [&](const Perm& p) {
                Permutree t = p_symbol(p, dec);
                if (!done.insert(t.canonical_str()).second) return;
                Perm lo = min_extension(t), hi = max_extension(t);
                for (const Perm& q : linear_extensions(t)) {
                    CHECK(weak_leq(lo, q));
                    CHECK(weak_leq(q, hi));
                }
                CHECK(p_symbol(lo, dec) == t);
                CHECK(p_symbol(hi, dec) == t);
            });
        }
    }
}

// ==================== arc diagrams ====================

TEST_CASE("arc sides record what comes after") {
    // 2751346: ascent pair (1,3) at positions 4,5; the value 2 sits before,
    // so it passes below the arc; no value between 1 and 3 comes later
    Perm p{2, 7, 5, 1, 3, 4, 6};
    auto asc = ascent_arcs(p);
    auto it = std::find_if(asc.arcs.begin(), asc.arcs.end(),
                           [](const Arc& a) { return a.left == 1 && a.right == 3; });
    REQUIRE(it != asc.arcs.end());
    CHECK(it->above == 0);
    // descent pair (7,5): the value 6 comes after, so it sits above the arc
    auto desc = descent_arcs(p);
    auto jt = std::find_if(desc.arcs.begin(), desc.arcs.end(),
                           [](const Arc& a) { return a.left == 5 && a.right == 7; });
    REQUIRE(jt != desc.arcs.end());
    CHECK(jt->above == (1u << 5));
}

TEST_CASE("wall-free ascents characterize class maxima") {
    for (int n = 2; n <= 5; ++n) {
        for (const Decoration& dec : all_decorations(n)) {
            for_each_perm(n, [&](const Perm& p) {
                bool asc_free = true;
                for (const Arc& a : ascent_arcs(p).arcs)
                    if (!arc_allowed(a, dec)) asc_free = false;
                bool desc_free = true;
                for (const Arc& a : descent_arcs(p).arcs)
                    if (!arc_allowed(a, dec)) desc_free = false;
                CHECK(asc_free == is_class_maximum(p, dec));
                CHECK(desc_free == is_class_minimum(p, dec));
            });
        }
    }
}

TEST_CASE("ascent map is injective on permutations") {
    for (int n = 1; n <= 5; ++n) {
        std::set<std::vector<Arc>> asc_seen, desc_seen;
        long long total = 0;
        for_each_perm(n, [&](const Perm& p) {
            asc_seen.insert(ascent_arcs(p).arcs);
            desc_seen.insert(descent_arcs(p).arcs);
            ++total;
        });
        CHECK((long long)asc_seen.size() == total);
        CHECK((long long)desc_seen.size() == total);
    }
}

TEST_CASE("ascent diagrams are noncrossing with distinct endpoints") {
    for_each_perm(5, [&](const Perm& p) {
        auto d = ascent_arcs(p);
        std::set<int> lefts, rights;
        for (const Arc& a : d.arcs) {
            CHECK(lefts.insert(a.left).second);
            CHECK(rights.insert(a.right).second);
        }
        for (size_t i = 0; i < d.arcs.size(); ++i)
            for (size_t j = i + 1; j < d.arcs.size(); ++j)
                CHECK(!arcs_cross(d.arcs[i], d.arcs[j]));
    });
}

TEST_CASE("every noncrossing diagram is an ascent diagram at size four") {
    // independent enumeration: all arc subsets, filtered to noncrossing with
    // distinct left and right endpoints, must number exactly 4!
    const int n = 4;
    std::vector<Arc> arcs;
    for (int l = 1; l <= n; ++l)
        for (int r = l + 1; r <= n; ++r) {
            int mid = r - l - 1;
            for (int sub = 0; sub < (1 << mid); ++sub) {
                Arc a;
                a.left = l;
                a.right = r;
                for (int k = 0; k < mid; ++k)
                    if ((sub >> k) & 1) a.above |= 1u << (l + k);  // value l+1+k
                arcs.push_back(a);
            }
        }
    REQUIRE(arcs.size() == 11);
    int good = 0;
    for (int sub = 0; sub < (1 << 11); ++sub) {
        std::vector<Arc> chosen;
        for (int i = 0; i < 11; ++i)
            if ((sub >> i) & 1) chosen.push_back(arcs[i]);
        std::set<int> lefts, rights;
        bool ok = true;
        for (const Arc& a : chosen) {
            if (!lefts.insert(a.left).second || !rights.insert(a.right).second) ok = false;
        }
        for (size_t i = 0; ok && i < chosen.size(); ++i)
            for (size_t j = i + 1; ok && j < chosen.size(); ++j)
                if (arcs_cross(chosen[i], chosen[j])) ok = false;
        good += ok;
    }
    CHECK(good == 24);
    // and the ascent diagrams of S_4 realize all of them
    std::set<std::vector<Arc>> seen;
    for_each_perm(4, [&](const Perm& p) { seen.insert(ascent_arcs(p).arcs); });
    CHECK((int)seen.size() == 24);
}

TEST_CASE("tree arcs come from the extreme extensions and determine the tree") {
    for (int n = 2; n <= 4; ++n) {
        for (const Decoration& dec : all_decorations(n)) {
            std::set<std::string> done;
            std::set<std::vector<Arc>> asc_diagrams;
            int trees = 0;
            for_each_perm(n, [&](const Perm& p) {
                Permutree t = p_symbol(p, dec);
                if (!done.insert(t.canonical_str()).second) return;
                ++trees;
                auto asc = tree_ascent_arcs(t);
                auto desc = tree_descent_arcs(t);
                // the defining identities
                CHECK(asc == ascent_arcs(max_extension(t)));
                CHECK(desc == descent_arcs(min_extension(t)));
                // tree arcs avoid every wall
                for (const Arc& a : asc.arcs) CHECK(arc_allowed(a, dec));
                for (const Arc& a : desc.arcs) CHECK(arc_allowed(a, dec));
                asc_diagrams.insert(asc.arcs);
            });
            CHECK((int)asc_diagrams.size() == trees);
        }
    }
}

// ==================== singletons ====================

TEST_CASE("singleton detection matches class size one") {
    for (int n = 1; n <= 4; ++n) {
        for (const Decoration& dec : all_decorations(n)) {
            std::set<std::string> done;
            for_each_perm(n, [&](const Perm& p) {
                Permutree t = p_symbol(p, dec);
                if (!done.insert(t.canonical_str()).second) return;
                CHECK(is_singleton(t) == (linear_extensions(t).size() == 1));
            });
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "permutrees/correspond.hpp"
#include "permutrees/decoration.hpp"
#include "permutrees/errors.hpp"
#include "permutrees/permutation.hpp"
#include "permutrees/permutree.hpp"

using namespace permutrees;

// ==================== decorations ====================

TEST_CASE("letters parse and print") {
    CHECK(Decoration("odub").str() == "odub");
    CHECK(letter_from_char('b') == Letter::Both);
    CHECK(letter_to_char(Letter::Up) == 'u');
    CHECK_THROWS_AS(Decoration("oxdu"), UnknownLetter);
    CHECK_THROWS_AS(Decoration(""), EmptyInput);
}

TEST_CASE("slot counts follow the letter") {
    CHECK(!two_children(Letter::None));
    CHECK(!two_parents(Letter::None));
    CHECK(two_children(Letter::Down));
    CHECK(!two_parents(Letter::Down));
    CHECK(!two_children(Letter::Up));
    CHECK(two_parents(Letter::Up));
    CHECK(two_children(Letter::Both));
    CHECK(two_parents(Letter::Both));
}

TEST_CASE("decoration symmetries") {
    Decoration d("odub");
    CHECK(d.reversed().str() == "budo");
    CHECK(d.flipped().str() == "oudb");
    CHECK(d.reversed().reversed() == d);
    CHECK(d.flipped().flipped() == d);
    // the two symmetries commute
    CHECK(d.reversed().flipped() == d.flipped().reversed());
}

TEST_CASE("letterwise refinement order") {
    CHECK(Decoration("oo").refines_letterwise(Decoration("db")));
    CHECK(Decoration("du").refines_letterwise(Decoration("bb")));
    CHECK(!Decoration("du").refines_letterwise(Decoration("ud")));
    CHECK(!Decoration("b").refines_letterwise(Decoration("d")));
    CHECK(Decoration("d").refines_letterwise(Decoration("d")));
}

TEST_CASE("restriction and boundary replacement") {
    Decoration d("odub");
    CHECK(d.restrict_to({1, 3}).str() == "ou");
    CHECK(d.restrict_to({2, 3, 4}).str() == "dub");
    CHECK(d.with_boundary(Letter::None).str() == "oduo");
    CHECK(all_decorations(3).size() == 64);
    CHECK(all_decorations(2, "od").size() == 4);
}

// ==================== permutations ====================

TEST_CASE("permutation basics") {
    Perm p{2, 7, 5, 1, 3, 4, 6};
    CHECK(perm_to_string(p) == "2751346");
    CHECK(perm_from_string("2751346") == p);
    CHECK(compose(p, inverse(p)) == identity_perm(7));
    CHECK(position_of(p, 5) == 3);
    CHECK(standardize({40, 10, 30}) == Perm{3, 1, 2});
    CHECK(relabel(Perm{2, 1, 3}, {4, 7, 9}) == std::vector<int>{7, 4, 9});
    CHECK_THROWS_AS(perm_from_string("121"), SizeMismatch);
    CHECK_THROWS_AS(perm_from_string(""), EmptyInput);
}

TEST_CASE("for_each_perm covers S_n in lex order") {
    std::vector<Perm> all;
    for_each_perm(3, [&](const Perm& p) { all.push_back(p); });
    REQUIRE(all.size() == 6);
    CHECK(all.front() == Perm{1, 2, 3});
    CHECK(all.back() == Perm{3, 2, 1});
    CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("inversion sets round-trip") {
    for (int n = 1; n <= 5; ++n) {
        for_each_perm(n, [&](const Perm& p) {
            auto mask = inversion_set(p);
            CHECK(is_inversion_set(mask, n));
            CHECK(perm_from_inversions(mask, n) == p);
        });
    }
    // non-closed masks are rejected
    int n = 3;
    std::uint64_t bad = (1ull << inv_index(1, 2, n)) | (1ull << inv_index(2, 3, n));
    CHECK(!is_inversion_set(bad, n));
}

namespace {

// independent oracle for the weak order: breadth-first closure of the cover
// relation "swap an ascent", giving the full reachability order
std::set<std::pair<Perm, Perm>> weak_order_by_covers(int n) {
    std::set<std::pair<Perm, Perm>> leq;
    std::vector<Perm> all;
    for_each_perm(n, [&](const Perm& p) { all.push_back(p); });
    for (const Perm& p : all) {
        // BFS up from p
        std::set<Perm> seen{p};
        std::vector<Perm> queue{p};
        while (!queue.empty()) {
            Perm cur = queue.back();
            queue.pop_back();
            leq.insert({p, cur});
            for (const Perm& q : weak_upper_covers(cur))
                if (seen.insert(q).second) queue.push_back(q);
        }
    }
    return leq;
}

}  // namespace

TEST_CASE("weak order comparison matches the cover closure") {
    for (int n = 1; n <= 4; ++n) {
        auto oracle = weak_order_by_covers(n);
        for_each_perm(n, [&](const Perm& p) {
            for_each_perm(n, [&](const Perm& q) {
                CHECK(weak_leq(p, q) == (oracle.count({p, q}) > 0));
            });
        });
    }
}

TEST_CASE("join and meet agree with brute-force bounds") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<Perm> all;
        for_each_perm(n, [&](const Perm& p) { all.push_back(p); });
        for (const Perm& p : all)
            for (const Perm& q : all) {
                Perm j = weak_join(p, q);
                Perm m = weak_meet(p, q);
                CHECK(weak_leq(p, j));
                CHECK(weak_leq(q, j));
                CHECK(weak_leq(m, p));
                CHECK(weak_leq(m, q));
                for (const Perm& r : all) {
                    if (weak_leq(p, r) && weak_leq(q, r)) CHECK(weak_leq(j, r));
                    if (weak_leq(r, p) && weak_leq(r, q)) CHECK(weak_leq(r, m));
                }
            }
    }
}

TEST_CASE("interleavings have binomial cardinality and keep orders") {
    auto shuffles = interleavings({1, 2}, {8, 9, 7});
    CHECK((long long)shuffles.size() == binomial(5, 2));
    std::set<std::vector<int>> distinct(shuffles.begin(), shuffles.end());
    CHECK(distinct.size() == shuffles.size());
    for (const auto& w : shuffles) {
        std::vector<int> left, right;
        for (int x : w) (x <= 2 ? left : right).push_back(x);
        CHECK(left == std::vector<int>{1, 2});
        CHECK(right == std::vector<int>{8, 9, 7});
    }
}

// ==================== permutree structure ====================

namespace {

// the running example tree: decoration by value o,u,o,o,d,o,o on labels 1..7,
// drawn from the worked 2751346 insertion
Permutree example_tree() {
    return p_symbol(DecoratedPerm::parse("2751346@values:ouoodoo"));
}

}  // namespace

TEST_CASE("hand-built single vertex trees validate") {
    // one vertex, letter o: one parent stub, one child stub
    Permutree t(Decoration("o"), {{}, {0}}, {{}, {0}});
    CHECK(t.violations().empty());
    CHECK(t.internal_edges().empty());

    Permutree tb(Decoration("b"), {{}, {0, 0}}, {{}, {0, 0}});
    CHECK(tb.violations().empty());
}

TEST_CASE("validate flags broken structures") {
    // wrong slot count for letter d
    Permutree t1(Decoration("d"), {{}, {0}}, {{}, {0}});
    CHECK(!t1.violations().empty());

    // asymmetric adjacency: 1 lists 2 as parent, 2 does not list 1
    Permutree t2(Decoration("oo"), {{}, {2}, {0}}, {{}, {0}, {0}});
    CHECK(!t2.violations().empty());

    // label condition: 3's left child subtree may not contain 4
    // (3 has children {4 left} -> violation)
    Permutree t3(Decoration("oodo"),
                 {{}, {3}, {0}, {0}, {3}},
                 {{}, {0}, {0}, {4, 1}, {0}});
    // reorder to a fully consistent adjacency first: 1->3 (right? 1<3 left) ...
    // simply check a violation is reported
    CHECK(!t3.violations().empty());

    CHECK_THROWS_AS(t1.validate(), InvalidTree);
}

TEST_CASE("example tree has the expected shape") {
    Permutree t = example_tree();
    CHECK(t.violations().empty());
    CHECK(t.n() == 7);
    CHECK(t.internal_edges().size() == 6);
    // 5 carries two children, 2 carries two parents
    CHECK(t.children(5).size() == 2);
    CHECK(t.parents(2).size() == 2);
}

TEST_CASE("edge cuts split the label set") {
    Permutree t = example_tree();
    auto cuts = t.edge_cuts();
    CHECK(cuts.size() == 6);
    for (const Cut& c : cuts) {
        CHECK(((c.below >> (c.child - 1)) & 1) == 1);
        CHECK(((c.below >> (c.parent - 1)) & 1) == 0);
        auto vals = mask_to_values(c.below);
        CHECK(values_to_mask(vals) == c.below);
    }
}

TEST_CASE("reflections are involutions and transform the decoration") {
    Permutree t = example_tree();
    CHECK(t.hreflect().decoration().str() == Decoration("ouoodoo").reversed().str());
    CHECK(t.vreflect().decoration().str() == Decoration("ouoodoo").flipped().str());
    CHECK(t.hreflect().hreflect() == t);
    CHECK(t.vreflect().vreflect() == t);
    CHECK(t.hreflect().violations().empty());
    CHECK(t.vreflect().violations().empty());
    // the two reflections commute
    CHECK(t.hreflect().vreflect() == t.vreflect().hreflect());
}

TEST_CASE("json round trip") {
    Permutree t = example_tree();
    auto j = t.to_json();
    CHECK(j["n"] == 7);
    CHECK(j["decoration"] == "ouoodoo");
    Permutree back = Permutree::from_json(j);
    CHECK(back == t);
    // stubs serialize as null
    bool saw_null = false;
    for (const auto& v : j["vertices"])
        for (const auto& x : v["children"])
            if (x.is_null()) saw_null = true;
    CHECK(saw_null);
}

TEST_CASE("canonical string is stable and discriminating") {
    Permutree t = example_tree();
    CHECK(t.canonical_str() == example_tree().canonical_str());
    Permutree other = p_symbol(DecoratedPerm::parse("1234567@values:ouoodoo"));
    CHECK(t.canonical_str() != other.canonical_str());
}

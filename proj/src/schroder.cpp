#include "permutrees/schroder.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "permutrees/correspond.hpp"
#include "permutrees/errors.hpp"

namespace permutrees {

OrderedPartition::OrderedPartition(std::vector<std::vector<int>> p) : parts(std::move(p)) {
    for (auto& part : parts) std::sort(part.begin(), part.end());
    std::vector<bool> seen(n() + 1, false);
    int covered = 0;
    for (const auto& part : parts) {
        if (part.empty()) throw EmptyInput("ordered partition with an empty part");
        for (int v : part) {
            if (v < 1 || v > n() || seen[v])
                throw SizeMismatch("parts must cover each value exactly once");
            seen[v] = true;
            ++covered;
        }
    }
    if (covered != n()) throw SizeMismatch("parts must cover each value exactly once");
}

OrderedPartition::OrderedPartition(const Perm& perm) {
    for (int v : perm) parts.push_back({v});
}

int OrderedPartition::n() const {
    int total = 0;
    for (const auto& part : parts) total += (int)part.size();
    return total;
}

int OrderedPartition::level_of(int value) const {
    for (int i = 0; i < (int)parts.size(); ++i)
        for (int v : parts[i])
            if (v == value) return i + 1;
    throw SizeMismatch("value " + std::to_string(value) + " not in the partition");
}

OrderedPartition OrderedPartition::parse(const std::string& text) {
    if (text.empty()) throw EmptyInput("empty ordered partition");
    const bool commas = text.find(',') != std::string::npos;
    std::vector<std::vector<int>> parts;
    std::stringstream outer(text);
    std::string chunk;
    while (std::getline(outer, chunk, '|')) {
        std::vector<int> part;
        if (commas) {
            std::stringstream inner(chunk);
            std::string num;
            while (std::getline(inner, num, ',')) part.push_back(std::stoi(num));
        } else {
            for (char c : chunk) {
                if (c < '1' || c > '9')
                    throw UnknownLetter("expected a digit in an ordered partition, got '" +
                                        std::string(1, c) + "'");
                part.push_back(c - '0');
            }
        }
        parts.push_back(std::move(part));
    }
    return OrderedPartition(std::move(parts));
}

std::string OrderedPartition::str() const {
    const bool commas = n() > 9;
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '|';
        for (std::size_t j = 0; j < parts[i].size(); ++j) {
            if (j && commas) out += ',';
            out += std::to_string(parts[i][j]);
        }
    }
    return out;
}

std::vector<OrderedPartition> all_ordered_partitions(int n) {
    std::vector<OrderedPartition> result;
    if (n < 1) throw EmptyInput("no ordered partitions of an empty set");
    std::vector<std::vector<std::vector<int>>> current = {{{1}}};
    for (int v = 2; v <= n; ++v) {
        std::vector<std::vector<std::vector<int>>> next;
        for (const auto& parts : current) {
            for (std::size_t i = 0; i < parts.size(); ++i) {
                auto grown = parts;
                grown[i].push_back(v);
                next.push_back(std::move(grown));
            }
            for (std::size_t i = 0; i <= parts.size(); ++i) {
                auto split = parts;
                split.insert(split.begin() + i, {v});
                next.push_back(std::move(split));
            }
        }
        current = std::move(next);
    }
    result.reserve(current.size());
    for (auto& parts : current) result.push_back(OrderedPartition(std::move(parts)));
    std::sort(result.begin(), result.end());
    return result;
}

namespace {

// is there a value b strictly between the blocks, sitting before position i
// with two parents or after position j with two children?
bool witnessed(const OrderedPartition& p, const Decoration& dec, int lo, int hi, int i, int j) {
    for (int b = lo + 1; b < hi; ++b) {
        const int level = p.level_of(b);
        if (level <= i && two_parents(dec[b])) return true;
        if (level >= j && two_children(dec[b])) return true;
    }
    return false;
}

}  // namespace

std::vector<OrderedPartition> congruence_moves(const OrderedPartition& p, const Decoration& dec) {
    if (p.n() != dec.size()) throw DecorationMismatch("partition and decoration sizes differ");
    std::vector<OrderedPartition> moves;
    const auto& parts = p.parts;
    // swap or merge two adjacent parts on opposite sides of a witness
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        const auto &x = parts[i], &y = parts[i + 1];
        const bool x_low = x.back() < y.front(), y_low = y.back() < x.front();
        if (!x_low && !y_low) continue;
        const auto &low = x_low ? x : y, &high = x_low ? y : x;
        if (!witnessed(p, dec, low.back(), high.front(), (int)i, (int)i + 3)) continue;
        auto swapped = parts;
        std::swap(swapped[i], swapped[i + 1]);
        moves.push_back(OrderedPartition(std::move(swapped)));
        auto merged = parts;
        merged[i].insert(merged[i].end(), y.begin(), y.end());
        merged.erase(merged.begin() + i + 1);
        moves.push_back(OrderedPartition(std::move(merged)));
    }
    // split one part into its lower and upper half, either way round
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t cut = 1; cut < parts[i].size(); ++cut) {
            std::vector<int> low(parts[i].begin(), parts[i].begin() + cut);
            std::vector<int> high(parts[i].begin() + cut, parts[i].end());
            if (!witnessed(p, dec, low.back(), high.front(), (int)i, (int)i + 2)) continue;
            for (bool low_first : {true, false}) {
                auto split = parts;
                split[i] = low_first ? low : high;
                split.insert(split.begin() + i + 1, low_first ? high : low);
                moves.push_back(OrderedPartition(std::move(split)));
            }
        }
    }
    return moves;
}

std::vector<OrderedPartition> schroder_congruence_class(const OrderedPartition& p,
                                                        const Decoration& dec) {
    std::set<OrderedPartition> seen = {p};
    std::deque<OrderedPartition> queue = {p};
    while (!queue.empty()) {
        OrderedPartition cur = queue.front();
        queue.pop_front();
        for (OrderedPartition& next : congruence_moves(cur, dec))
            if (seen.insert(next).second) queue.push_back(next);
    }
    return {seen.begin(), seen.end()};
}

bool schroder_congruent(const OrderedPartition& a, const OrderedPartition& b,
                        const Decoration& dec) {
    auto cls = schroder_congruence_class(a, dec);
    return std::binary_search(cls.begin(), cls.end(), b);
}

long long schroder_count_brute(const Decoration& dec) {
    std::set<OrderedPartition> remaining;
    for (OrderedPartition& p : all_ordered_partitions(dec.size())) remaining.insert(std::move(p));
    long long classes = 0;
    while (!remaining.empty()) {
        ++classes;
        for (const OrderedPartition& p : schroder_congruence_class(*remaining.begin(), dec))
            remaining.erase(p);
    }
    return classes;
}

// ---------------------------------------------------------------------------
// SchroderPermutree

namespace {

// values of the block that carry walls on the given side, in sorted order
std::vector<int> block_dots(const std::vector<int>& block, const Decoration& dec, bool down) {
    std::vector<int> dots;
    for (int v : block)
        if (down ? two_children(dec[v]) : two_parents(dec[v])) dots.push_back(v);
    return dots;
}

// open gap of slot j among the dots, with 0 and n+1 as outer bounds
std::pair<int, int> slot_gap(const std::vector<int>& dots, int j, int n) {
    int lo = j == 0 ? 0 : dots[j - 1];
    int hi = j == (int)dots.size() ? n + 1 : dots[j];
    return {lo, hi};
}

}  // namespace

SchroderPermutree::SchroderPermutree(Decoration dec, std::vector<std::vector<int>> blocks,
                                     std::vector<std::vector<int>> parents,
                                     std::vector<std::vector<int>> children)
    : dec_(std::move(dec)) {
    if (blocks.size() != parents.size() || blocks.size() != children.size())
        throw SizeMismatch("block and slot tables must have matching sizes");
    const int m = (int)blocks.size() - 1;
    if (m < 1) throw EmptyInput("a tree needs at least one block");
    for (int b = 1; b <= m; ++b) {
        if (blocks[b].empty()) throw EmptyInput("blocks must be non-empty");
        std::sort(blocks[b].begin(), blocks[b].end());
    }

    // order blocks by least label and renumber the slot entries to match
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return blocks[a].front() < blocks[b].front(); });
    std::vector<int> renum(m + 1, 0);
    for (int i = 0; i < m; ++i) renum[order[i]] = i + 1;

    blocks_.assign(m + 1, {});
    parents_.assign(m + 1, {});
    children_.assign(m + 1, {});
    for (int i = 0; i < m; ++i) {
        blocks_[i + 1] = std::move(blocks[order[i]]);
        parents_[i + 1] = std::move(parents[order[i]]);
        children_[i + 1] = std::move(children[order[i]]);
    }
    for (auto table : {&parents_, &children_})
        for (int b = 1; b <= m; ++b)
            for (int& e : (*table)[b]) {
                if (e < 0 || e > m) throw SizeMismatch("slot entry outside the block range");
                e = e ? renum[e] : 0;
            }

    owner_.assign(n() + 1, 0);
    for (int b = 1; b <= m; ++b)
        for (int v : blocks_[b]) {
            if (v < 1 || v > n() || owner_[v])
                throw SizeMismatch("blocks must partition the label set");
            owner_[v] = b;
        }
    for (int v = 1; v <= n(); ++v)
        if (!owner_[v]) throw SizeMismatch("blocks must partition the label set");
}

std::vector<std::pair<int, int>> SchroderPermutree::internal_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int b = 1; b <= block_count(); ++b)
        for (int p : parents_[b])
            if (p) out.push_back({b, p});
    return out;
}

bool SchroderPermutree::has_edge(int child, int parent) const {
    const auto& par = parents_[child];
    return std::find(par.begin(), par.end(), parent) != par.end();
}

std::uint32_t SchroderPermutree::side_labels(int b, int other) const {
    std::vector<char> seen(block_count() + 1, 0);
    std::vector<int> stack{b};
    seen[b] = 1;
    std::uint32_t mask = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int v : blocks_[x]) mask |= 1u << (v - 1);
        auto step = [&](int y) {
            if (!y || seen[y]) return;
            if ((x == b && y == other) || (x == other && y == b)) return;
            seen[y] = 1;
            stack.push_back(y);
        };
        for (int y : parents_[x]) step(y);
        for (int y : children_[x]) step(y);
    }
    return mask;
}

std::vector<std::string> SchroderPermutree::violations() const {
    std::vector<std::string> bad;
    const int m = block_count();
    if (m < 1 || owner_.empty()) {
        bad.push_back("no blocks");
        return bad;
    }
    auto say = [&](const std::string& s) { bad.push_back(s); };
    auto name = [&](int b) { return std::to_string(blocks_[b].front()); };

    // slot counts from the dots inside each block, entries in range
    for (int b = 1; b <= m; ++b) {
        const auto down = block_dots(blocks_[b], dec_, true);
        const auto up = block_dots(blocks_[b], dec_, false);
        if (children_[b].size() != down.size() + 1)
            say("block " + name(b) + " has the wrong number of child slots");
        if (parents_[b].size() != up.size() + 1)
            say("block " + name(b) + " has the wrong number of parent slots");
        for (int e : parents_[b])
            if (e < 0 || e > m || e == b)
                say("block " + name(b) + " has an out-of-range parent entry");
        for (int e : children_[b])
            if (e < 0 || e > m || e == b)
                say("block " + name(b) + " has an out-of-range child entry");
    }
    if (!bad.empty()) return bad;

    // mutual adjacency
    for (int b = 1; b <= m; ++b)
        for (int p : parents_[b]) {
            if (p == 0) continue;
            long n_up = std::count(parents_[b].begin(), parents_[b].end(), p);
            long n_dn = std::count(children_[p].begin(), children_[p].end(), b);
            if (n_up != n_dn)
                say("edge " + name(b) + "->" + name(p) + " is not recorded on both endpoints");
        }
    if (!bad.empty()) return bad;

    // exactly m-1 edges, connected, acyclic upward
    auto edges = internal_edges();
    if ((int)edges.size() != m - 1)
        say("expected " + std::to_string(m - 1) + " internal edges, found " +
            std::to_string(edges.size()));
    {
        std::vector<char> seen(m + 1, 0);
        std::vector<int> stack{1};
        int reached = 0;
        while (!stack.empty()) {
            int b = stack.back();
            stack.pop_back();
            if (seen[b]) continue;
            seen[b] = 1;
            ++reached;
            for (int y : parents_[b]) if (y) stack.push_back(y);
            for (int y : children_[b]) if (y) stack.push_back(y);
        }
        if (reached != m) say("the internal edges do not connect all blocks");
    }
    {
        std::vector<int> state(m + 1, 0);
        bool cyclic = false;
        auto dfs = [&](auto&& self, int b) -> void {
            state[b] = 1;
            for (int p : parents_[b]) {
                if (p == 0 || cyclic) continue;
                if (state[p] == 1) cyclic = true;
                else if (state[p] == 0) self(self, p);
            }
            state[b] = 2;
        };
        for (int b = 1; b <= m && !cyclic; ++b)
            if (state[b] == 0) dfs(dfs, b);
        if (cyclic) say("the parent relation has a directed cycle");
    }
    if (!bad.empty()) return bad;

    // labels hanging off each slot stay inside the slot's gap
    auto check_side = [&](int b, const std::vector<int>& slots, bool down) {
        const auto dots = block_dots(blocks_[b], dec_, down);
        for (int j = 0; j < (int)slots.size(); ++j) {
            if (slots[j] == 0) continue;
            auto [lo, hi] = slot_gap(dots, j, n());
            std::uint32_t side = side_labels(slots[j], b);
            for (int v = 1; v <= n(); ++v)
                if ((side >> (v - 1)) & 1u)
                    if (v <= lo || v >= hi) {
                        say(std::string(down ? "subtree" : "supertree") + " in gap (" +
                            std::to_string(lo) + "," + std::to_string(hi) + ") of block " +
                            name(b) + " holds the out-of-gap label " + std::to_string(v));
                        return;
                    }
        }
    };
    for (int b = 1; b <= m; ++b) {
        check_side(b, children_[b], true);
        check_side(b, parents_[b], false);
    }
    return bad;
}

void SchroderPermutree::validate() const {
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

std::vector<Cut> SchroderPermutree::edge_cuts() const {
    std::vector<Cut> out;
    for (auto [c, p] : internal_edges()) {
        Cut cut;
        cut.child = blocks_[c].front();
        cut.parent = blocks_[p].front();
        cut.below = side_labels(c, p);
        out.push_back(cut);
    }
    return out;
}

std::string SchroderPermutree::canonical_str() const {
    std::ostringstream out;
    out << dec_.str();
    auto least = [&](int e) { return e ? blocks_[e].front() : 0; };
    for (int b = 1; b <= block_count(); ++b) {
        out << '|';
        for (size_t i = 0; i < blocks_[b].size(); ++i)
            out << (i ? "," : "") << blocks_[b][i];
        out << ":(";
        for (size_t i = 0; i < parents_[b].size(); ++i)
            out << (i ? "," : "") << least(parents_[b][i]);
        out << ")(";
        for (size_t i = 0; i < children_[b].size(); ++i)
            out << (i ? "," : "") << least(children_[b][i]);
        out << ')';
    }
    return out.str();
}

nlohmann::ordered_json SchroderPermutree::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n();
    j["decoration"] = dec_.str();
    auto slots = [&](const std::vector<int>& v) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (int x : v) {
            if (x == 0) a.push_back(nullptr);
            else a.push_back(blocks_[x].front());
        }
        return a;
    };
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (int b = 1; b <= block_count(); ++b) {
        nlohmann::ordered_json e;
        e["label"] = blocks_[b];
        e["parents"] = slots(parents_[b]);
        e["children"] = slots(children_[b]);
        verts.push_back(e);
    }
    j["vertices"] = verts;
    return j;
}

SchroderPermutree SchroderPermutree::from_json(const nlohmann::json& j) {
    int N = j.at("n").get<int>();
    Decoration dec(j.at("decoration").get<std::string>());
    if (dec.size() != N) throw SizeMismatch("decoration length disagrees with n");
    const auto& verts = j.at("vertices");
    const int m = (int)verts.size();
    std::vector<std::vector<int>> blocks(m + 1), par(m + 1), chl(m + 1);
    // first pass: collect the blocks so references by least label resolve
    std::vector<int> owner(N + 1, 0);
    int id = 0;
    for (const auto& e : verts) {
        ++id;
        blocks[id] = e.at("label").get<std::vector<int>>();
        for (int v : blocks[id]) {
            if (v < 1 || v > N || owner[v])
                throw InvalidTree("vertex list must mention each label exactly once");
            owner[v] = id;
        }
    }
    for (int v = 1; v <= N; ++v)
        if (!owner[v]) throw InvalidTree("label " + std::to_string(v) + " missing");
    auto unslots = [&](const nlohmann::json& a) {
        std::vector<int> v;
        for (const auto& x : a) v.push_back(x.is_null() ? 0 : owner[x.get<int>()]);
        return v;
    };
    id = 0;
    for (const auto& e : verts) {
        ++id;
        par[id] = unslots(e.at("parents"));
        chl[id] = unslots(e.at("children"));
    }
    SchroderPermutree s(std::move(dec), std::move(blocks), std::move(par), std::move(chl));
    s.validate();
    return s;
}

bool SchroderPermutree::operator==(const SchroderPermutree& o) const {
    return dec_ == o.dec_ && blocks_ == o.blocks_ && parents_ == o.parents_ &&
           children_ == o.children_;
}

bool SchroderPermutree::operator<(const SchroderPermutree& o) const {
    if (dec_.letters() != o.dec_.letters()) return dec_.letters() < o.dec_.letters();
    if (blocks_ != o.blocks_) return blocks_ < o.blocks_;
    if (parents_ != o.parents_) return parents_ < o.parents_;
    return children_ < o.children_;
}

SchroderPermutree embed(const Permutree& t) {
    const int N = t.n();
    std::vector<std::vector<int>> blocks(N + 1), par(N + 1), chl(N + 1);
    for (int v = 1; v <= N; ++v) {
        blocks[v] = {v};
        par[v] = t.parents(v);
        chl[v] = t.children(v);
    }
    return SchroderPermutree(t.decoration(), std::move(blocks), std::move(par), std::move(chl));
}

bool is_permutree(const SchroderPermutree& s) {
    for (int b = 1; b <= s.block_count(); ++b)
        if (s.block(b).size() != 1) return false;
    return true;
}

Permutree to_permutree(const SchroderPermutree& s) {
    if (!is_permutree(s))
        throw ScopeError("only a tree with singleton blocks maps back to a plain tree");
    const int N = s.n();
    std::vector<std::vector<int>> par(N + 1), chl(N + 1);
    auto value_of = [&](int e) { return e ? s.block(e).front() : 0; };
    for (int b = 1; b <= s.block_count(); ++b) {
        const int v = s.block(b).front();
        for (int e : s.parents(b)) par[v].push_back(value_of(e));
        for (int e : s.children(b)) chl[v].push_back(value_of(e));
    }
    return Permutree(s.decoration(), std::move(par), std::move(chl));
}

SchroderPermutree contract(const SchroderPermutree& s, int child_value, int parent_value) {
    const int N = s.n();
    if (child_value < 1 || child_value > N || parent_value < 1 || parent_value > N)
        throw NotAnEdge("values outside the label range");
    const int c = s.block_of(child_value), p = s.block_of(parent_value);
    if (c == p || !s.has_edge(c, p))
        throw NotAnEdge("no edge from the block of " + std::to_string(child_value) +
                        " to the block of " + std::to_string(parent_value));
    const Decoration& dec = s.decoration();
    const int m = s.block_count();

    std::vector<int> merged = s.block(c);
    merged.insert(merged.end(), s.block(p).begin(), s.block(p).end());
    std::sort(merged.begin(), merged.end());

    // surviving blocks keep their contents; c and p fuse into one new block
    std::vector<int> renum(m + 1, 0);
    std::vector<std::vector<int>> blocks(1), par(1), chl(1);
    for (int b = 1; b <= m; ++b) {
        if (b == c || b == p) continue;
        renum[b] = (int)blocks.size();
        blocks.push_back(s.block(b));
        par.push_back(s.parents(b));
        chl.push_back(s.children(b));
    }
    const int fused = (int)blocks.size();
    renum[c] = renum[p] = fused;
    blocks.push_back(merged);
    for (int b = 1; b < fused; ++b) {
        for (int& e : par[b]) e = e ? renum[e] : 0;
        for (int& e : chl[b]) e = e ? renum[e] : 0;
    }

    // redistribute the remaining neighbours of c and p into the fused block's
    // gaps by the label range of the subtree they carry
    auto place = [&](bool down) {
        const auto dots = block_dots(merged, dec, down);
        std::vector<int> slots(dots.size() + 1, 0);
        bool dropped_inner = false;  // the contracted edge leaves exactly one side
        auto add = [&](int nb, int from) {
            if (nb == 0) return;
            if ((nb == c && from == p) || (nb == p && from == c)) {
                // the contracted edge itself: skip one occurrence
                if (!dropped_inner) {
                    dropped_inner = true;
                    return;
                }
            }
            std::uint32_t side = s.side_labels(nb, from);
            int first = 0, last = 0;
            for (int v = 1; v <= N; ++v)
                if ((side >> (v - 1)) & 1u) {
                    if (!first) first = v;
                    last = v;
                }
            for (int j = 0; j <= (int)dots.size(); ++j) {
                auto [lo, hi] = slot_gap(dots, j, N);
                if (lo < first && last < hi) {
                    if (slots[j])
                        throw InvalidTree("two subtrees fall in the same gap of the merged block");
                    slots[j] = renum[nb];
                    return;
                }
            }
            throw InvalidTree("a subtree straddles a wall of the merged block");
        };
        for (int nb : (down ? s.children(c) : s.parents(c))) add(nb, c);
        for (int nb : (down ? s.children(p) : s.parents(p))) add(nb, p);
        return slots;
    };
    chl.push_back(place(true));
    par.push_back(place(false));
    return SchroderPermutree(dec, std::move(blocks), std::move(par), std::move(chl));
}

bool schr_refines(const SchroderPermutree& fine, const SchroderPermutree& coarse) {
    if (fine.n() != coarse.n() || !(fine.decoration() == coarse.decoration())) return false;
    // every fine block inside one coarse block
    for (int b = 1; b <= fine.block_count(); ++b) {
        const int target = coarse.block_of(fine.block(b).front());
        for (int v : fine.block(b))
            if (coarse.block_of(v) != target) return false;
    }
    // fine edges project to loops or coarse edges; the cross edges must be
    // exactly as many as coarse has, which forces connected fibers and full,
    // one-to-one coverage
    long cross = 0;
    for (auto [cb, pb] : fine.internal_edges()) {
        const int qc = coarse.block_of(fine.block(cb).front());
        const int qp = coarse.block_of(fine.block(pb).front());
        if (qc == qp) continue;
        if (!coarse.has_edge(qc, qp)) return false;
        ++cross;
    }
    return cross == coarse.block_count() - 1;
}

// ---------------------------------------------------------------------------
// Sweep of an ordered partition

namespace {

struct Strand {
    int pos;     // columns scaled by four; walls live on multiples
    int origin;  // block id the strand hangs from, 0 for a bottom stub
    int slot;    // parent slot index at the origin
};

}  // namespace

LeveledSchroder insert_partition(const OrderedPartition& p, const Decoration& dec) {
    const int N = dec.size();
    if (p.n() != N) throw DecorationMismatch("partition and decoration sizes differ");

    // active vertical walls: below every unplaced two-children value, and
    // above every already placed two-parents value
    std::set<int> walls;
    for (int w : dec.positions_two_children()) walls.insert(4 * w);

    std::vector<Strand> strands;
    {
        std::vector<int> cols{0};
        for (int w : dec.positions_two_children()) cols.push_back(w);
        cols.push_back(N + 1);
        for (size_t i = 0; i + 1 < cols.size(); ++i)
            strands.push_back(Strand{2 * (cols[i] + cols[i + 1]), 0, 0});
    }
    auto strand_less = [](const Strand& a, const Strand& b) { return a.pos < b.pos; };

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
        return it == walls.end() ? 4 * (N + 1) + 1 : *it;
    };

    std::vector<std::vector<int>> blocks(1), par(1), chl(1);

    for (int t = 1; t <= (int)p.parts.size(); ++t) {
        const std::vector<int>& part = p.parts[t - 1];

        // the part's values clump into one node per wall-free run
        std::vector<std::vector<int>> nodes;
        for (int v : part) {
            if (!nodes.empty() &&
                walls.lower_bound(4 * nodes.back().back() + 1) == walls.lower_bound(4 * v))
                nodes.back().push_back(v);
            else
                nodes.push_back({v});
        }

        // catch the subtree strand in each gap of each node before any wall
        // moves; a node's gaps sit between its own lower walls
        std::vector<int> ids;
        std::vector<std::vector<Strand>> caught(nodes.size());
        for (size_t k = 0; k < nodes.size(); ++k) {
            const auto down = block_dots(nodes[k], dec, true);
            if (down.empty()) {
                const int col = 4 * nodes[k].front();
                caught[k].push_back(catch_in(wall_below(col), wall_above(col)));
            } else {
                caught[k].push_back(catch_in(wall_below(4 * down.front()), 4 * down.front()));
                for (size_t j = 1; j < down.size(); ++j)
                    caught[k].push_back(catch_in(4 * down[j - 1], 4 * down[j]));
                caught[k].push_back(catch_in(4 * down.back(), wall_above(4 * down.back())));
            }
            const int id = (int)blocks.size();
            ids.push_back(id);
            blocks.push_back(nodes[k]);
            chl.push_back({});
            par.push_back({});
        }

        // lower walls of the placed values end here, upper walls start
        for (int v : part) {
            if (two_children(dec[v])) walls.erase(4 * v);
            if (two_parents(dec[v])) walls.insert(4 * v);
        }

        // attach what was caught and emit one strand per upward gap
        for (size_t k = 0; k < nodes.size(); ++k) {
            const int id = ids[k];
            for (const Strand& s : caught[k]) {
                chl[id].push_back(s.origin);
                if (s.origin) par[s.origin][s.slot] = id;
            }
            auto emit = [&](int pos, int slot) {
                Strand s{pos, id, slot};
                auto it = std::lower_bound(strands.begin(), strands.end(), s, strand_less);
                if (it != strands.end() && it->pos == pos)
                    throw InvalidTree("strand position collision");
                strands.insert(it, s);
            };
            const auto up = block_dots(nodes[k], dec, false);
            par[id].assign(up.size() + 1, -1);
            if (up.empty()) {
                emit(4 * nodes[k].front(), 0);
            } else {
                emit(4 * up.front() - 1, 0);
                for (size_t j = 1; j < up.size(); ++j)
                    emit(2 * (up[j - 1] + up[j]), (int)j);
                emit(4 * up.back() + 1, (int)up.size());
            }
        }
    }

    // surviving strands are the top stubs
    for (const Strand& s : strands) {
        if (s.origin == 0) throw InvalidTree("bottom strand not caught");
        par[s.origin][s.slot] = 0;
    }
    for (size_t b = 1; b < par.size(); ++b)
        for (int x : par[b])
            if (x < 0) throw InvalidTree("unfilled parent slot after the sweep");

    SchroderPermutree tree(dec, std::move(blocks), std::move(par), std::move(chl));
    // block ids were renumbered on construction; levels follow the labels
    std::vector<int> by_id(tree.block_count() + 1, 0);
    for (int b = 1; b <= tree.block_count(); ++b) by_id[b] = p.level_of(tree.block(b).front());
    return LeveledSchroder{std::move(tree), std::move(by_id)};
}

SchroderPermutree p_star(const OrderedPartition& p, const Decoration& dec) {
    return insert_partition(p, dec).tree;
}

std::vector<OrderedPartition> p_star_fiber(const SchroderPermutree& s) {
    const int m = s.block_count();
    // strict order between blocks: directed reachability along the edges
    std::vector<std::vector<char>> above(m + 1, std::vector<char>(m + 1, 0));
    for (int b = 1; b <= m; ++b) {
        std::vector<int> stack{b};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : s.parents(x))
                if (y && !above[b][y]) {
                    above[b][y] = 1;
                    stack.push_back(y);
                }
        }
    }
    std::vector<OrderedPartition> out;
    for (const OrderedPartition& q : all_ordered_partitions(m)) {
        bool ok = true;
        for (int a = 1; a <= m && ok; ++a)
            for (int b = 1; b <= m && ok; ++b)
                if (above[a][b] && q.level_of(a) >= q.level_of(b)) ok = false;
        if (!ok) continue;
        std::vector<std::vector<int>> parts;
        for (const auto& qp : q.parts) {
            std::vector<int> part;
            for (int b : qp) part.insert(part.end(), s.block(b).begin(), s.block(b).end());
            parts.push_back(std::move(part));
        }
        out.push_back(OrderedPartition(std::move(parts)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

OrderedPartition finest_fiber_member(const SchroderPermutree& s) {
    const int m = s.block_count();
    auto edges = s.internal_edges();
    std::vector<int> indeg(m + 1, 0);
    for (auto [c, p] : edges) ++indeg[p];
    std::vector<char> used(m + 1, 0);
    std::vector<std::vector<int>> parts;
    for (int step = 0; step < m; ++step) {
        int pick = 0;
        for (int b = 1; b <= m; ++b)
            if (!used[b] && indeg[b] == 0 &&
                (pick == 0 || s.block(b).front() < s.block(pick).front()))
                pick = b;
        if (!pick) throw InvalidTree("the parent relation has a directed cycle");
        used[pick] = 1;
        for (auto [c, p] : edges)
            if (c == pick) --indeg[p];
        parts.push_back(s.block(pick));
    }
    return OrderedPartition(std::move(parts));
}

SchroderPermutree schr_refine(const SchroderPermutree& s, const Decoration& coarser) {
    if (!s.decoration().refines_letterwise(coarser))
        throw NotARefinement("decoration " + s.decoration().str() + " does not refine " +
                             coarser.str());
    return p_star(finest_fiber_member(s), coarser);
}

// ---------------------------------------------------------------------------
// Faces

FaceInfo face_of(const SchroderPermutree& s, int max_n) {
    const int N = s.n();
    if (N > max_n)
        throw SizeBound("face enumeration over " + std::to_string(N) +
                        " labels exceeds the bound " + std::to_string(max_n));
    FaceInfo info;
    for (const Cut& cut : s.edge_cuts()) {
        long long size = std::popcount(cut.below);
        info.tight.push_back(HalfSpace{cut.below, size * (size + 1) / 2});
    }
    std::sort(info.tight.begin(), info.tight.end(),
              [](const HalfSpace& a, const HalfSpace& b) {
                  return std::popcount(a.block) != std::popcount(b.block)
                             ? std::popcount(a.block) < std::popcount(b.block)
                             : a.block < b.block;
              });
    for (const Permutree& t : enumerate_trees(s.decoration(), max_n))
        if (schr_refines(embed(t), s)) info.refining.push_back(t);
    info.dimension = N - 1 - (int)s.internal_edges().size();
    return info;
}

std::vector<SchroderPermutree> all_schroder_trees(const Decoration& dec, int max_n) {
    if (dec.size() > max_n)
        throw SizeBound("enumeration over " + std::to_string(dec.size()) +
                        " labels exceeds the bound " + std::to_string(max_n));
    std::set<SchroderPermutree> seen;
    for (const OrderedPartition& p : all_ordered_partitions(dec.size()))
        seen.insert(p_star(p, dec));
    return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// The order on faces

std::vector<int> coinversions(const OrderedPartition& p) {
    const int N = p.n();
    std::vector<int> lvl(N + 1, 0);
    for (int i = 0; i < (int)p.parts.size(); ++i)
        for (int v : p.parts[i]) lvl[v] = i + 1;
    std::vector<int> out;
    out.reserve(N * (N - 1) / 2);
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j)
            out.push_back(lvl[i] < lvl[j] ? -1 : lvl[i] > lvl[j] ? 1 : 0);
    return out;
}

bool facial_leq(const OrderedPartition& a, const OrderedPartition& b) {
    if (a.n() != b.n()) throw SizeMismatch("partitions of different sets are incomparable");
    const auto ca = coinversions(a), cb = coinversions(b);
    for (size_t i = 0; i < ca.size(); ++i)
        if (ca[i] > cb[i]) return false;
    return true;
}

std::vector<OrderedPartition> facial_covers(const OrderedPartition& p) {
    std::vector<OrderedPartition> out;
    const auto& parts = p.parts;
    // merge an ascending adjacent pair
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
        if (parts[i].back() >= parts[i + 1].front()) continue;
        auto merged = parts;
        merged[i].insert(merged[i].end(), parts[i + 1].begin(), parts[i + 1].end());
        merged.erase(merged.begin() + i + 1);
        out.push_back(OrderedPartition(std::move(merged)));
    }
    // split a part into top half followed by bottom half
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t cut = 1; cut < parts[i].size(); ++cut) {
            std::vector<int> low(parts[i].begin(), parts[i].begin() + cut);
            std::vector<int> high(parts[i].begin() + cut, parts[i].end());
            auto split = parts;
            split[i] = std::move(high);
            split.insert(split.begin() + i + 1, std::move(low));
            out.push_back(OrderedPartition(std::move(split)));
        }
    return out;
}

bool is_schroder_class_minimum(const OrderedPartition& p, const Decoration& dec) {
    if (p.n() != dec.size()) throw DecorationMismatch("partition and decoration sizes differ");
    const auto& parts = p.parts;
    // a witnessed descending adjacent pair could swap or merge downwards
    for (size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i + 1].back() < parts[i].front() &&
            witnessed(p, dec, parts[i + 1].back(), parts[i].front(), (int)i, (int)i + 3))
            return false;
    // a witnessed cut could split a part with its lower half first
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t cut = 1; cut < parts[i].size(); ++cut)
            if (witnessed(p, dec, parts[i][cut - 1], parts[i][cut], (int)i, (int)i + 2))
                return false;
    return true;
}

bool is_schroder_class_maximum(const OrderedPartition& p, const Decoration& dec) {
    if (p.n() != dec.size()) throw DecorationMismatch("partition and decoration sizes differ");
    const auto& parts = p.parts;
    // a witnessed ascending adjacent pair could swap or merge upwards
    for (size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i].back() < parts[i + 1].front() &&
            witnessed(p, dec, parts[i].back(), parts[i + 1].front(), (int)i, (int)i + 3))
            return false;
    // a witnessed cut could split a part with its upper half first
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t cut = 1; cut < parts[i].size(); ++cut)
            if (witnessed(p, dec, parts[i][cut - 1], parts[i][cut], (int)i, (int)i + 2))
                return false;
    return true;
}

int SchroderLattice::index_of(const SchroderPermutree& s) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), s);
    if (it == nodes.end() || !(*it == s)) return -1;
    return (int)(it - nodes.begin());
}

SchroderLattice schroder_lattice(const Decoration& dec, int max_n) {
    SchroderLattice lat;
    lat.dec = dec;
    lat.nodes = all_schroder_trees(dec, max_n);
    const int m = (int)lat.nodes.size();
    std::vector<std::vector<int>> up(m);
    for (int i = 0; i < m; ++i) {
        const SchroderPermutree& s = lat.nodes[i];
        for (auto [c, p] : s.internal_edges()) {
            const int j = lat.index_of(contract(s, s.block(c).front(), s.block(p).front()));
            if (j < 0) throw InvalidTree("a contraction left the enumerated family");
            if (s.block(c).back() < s.block(p).front()) up[i].push_back(j);
            else if (s.block(p).back() < s.block(c).front()) up[j].push_back(i);
        }
    }
    lat.leq.assign(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i) {
        std::vector<int> stack{i};
        lat.leq[i][i] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : up[x])
                if (!lat.leq[i][y]) {
                    lat.leq[i][y] = 1;
                    stack.push_back(y);
                }
        }
    }
    return lat;
}

// ---------------------------------------------------------------------------
// Product rules on ordered partitions

OrderedPartition restrict_parts(const OrderedPartition& p, const std::vector<int>& positions) {
    std::vector<int> pos = positions;
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    std::vector<int> kept;
    std::vector<std::vector<int>> parts;
    for (int i : pos) {
        if (i < 1 || i > (int)p.parts.size())
            throw SizeMismatch("part position " + std::to_string(i) + " out of range");
        parts.push_back(p.parts[i - 1]);
        kept.insert(kept.end(), p.parts[i - 1].begin(), p.parts[i - 1].end());
    }
    std::sort(kept.begin(), kept.end());
    for (auto& part : parts)
        for (int& v : part)
            v = (int)(std::lower_bound(kept.begin(), kept.end(), v) - kept.begin()) + 1;
    return OrderedPartition(std::move(parts));
}

OrderedPartition restrict_values(const OrderedPartition& p, const std::vector<int>& values) {
    std::vector<int> kept = values;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    std::vector<std::vector<int>> parts;
    for (const auto& part : p.parts) {
        std::vector<int> filtered;
        for (int v : part)
            if (std::binary_search(kept.begin(), kept.end(), v))
                filtered.push_back(
                    (int)(std::lower_bound(kept.begin(), kept.end(), v) - kept.begin()) + 1);
        if (!filtered.empty()) parts.push_back(std::move(filtered));
    }
    return OrderedPartition(std::move(parts));
}

std::vector<OrderedPartition> op_shuffle(const OrderedPartition& a, const OrderedPartition& b) {
    const int n1 = a.n(), n2 = b.n();
    std::vector<int> low(n1), high(n2);
    std::iota(low.begin(), low.end(), 1);
    std::iota(high.begin(), high.end(), n1 + 1);
    std::vector<OrderedPartition> out;
    for (const OrderedPartition& mu : all_ordered_partitions(n1 + n2))
        if (restrict_values(mu, low) == a && restrict_values(mu, high) == b) out.push_back(mu);
    return out;
}

std::vector<OrderedPartition> op_convolution(const OrderedPartition& a,
                                             const OrderedPartition& b) {
    const int k1 = (int)a.parts.size(), k2 = (int)b.parts.size();
    std::vector<int> lead(k1), trail(k2);
    std::iota(lead.begin(), lead.end(), 1);
    std::iota(trail.begin(), trail.end(), k1 + 1);
    std::vector<OrderedPartition> out;
    for (const OrderedPartition& mu : all_ordered_partitions(a.n() + b.n())) {
        if ((int)mu.parts.size() != k1 + k2) continue;
        if (restrict_parts(mu, lead) == a && restrict_parts(mu, trail) == b) out.push_back(mu);
    }
    return out;
}

ClosureReport schr_closure_check(int n_bound) {
    ClosureReport rep;
    for (int n1 = 1; n1 < n_bound; ++n1)
        for (int n2 = 1; n1 + n2 <= n_bound; ++n2)
            for (const Decoration& da : all_decorations(n1))
                for (const Decoration& db : all_decorations(n2)) {
                    const Decoration dcat(da.str() + db.str());
                    for (const SchroderPermutree& s1 : all_schroder_trees(da))
                        for (const SchroderPermutree& s2 : all_schroder_trees(db)) {
                            ++rep.pairs_checked;
                            std::map<OrderedPartition, int> times;
                            for (const OrderedPartition& x : p_star_fiber(s1))
                                for (const OrderedPartition& y : p_star_fiber(s2))
                                    for (const OrderedPartition& mu : op_shuffle(x, y))
                                        ++times[mu];
                            std::map<std::string, std::set<OrderedPartition>> groups;
                            for (const auto& [mu, count] : times) {
                                if (count != 1) {
                                    rep.closed = false;
                                    rep.detail = mu.str() + " produced " +
                                                 std::to_string(count) + " times from " +
                                                 s1.canonical_str() + " and " +
                                                 s2.canonical_str();
                                    return rep;
                                }
                                groups[p_star(mu, dcat).canonical_str()].insert(mu);
                            }
                            for (const auto& [key, got] : groups) {
                                const auto fiber =
                                    p_star_fiber(p_star(*got.begin(), dcat));
                                if (std::set<OrderedPartition>(fiber.begin(), fiber.end()) !=
                                    got) {
                                    rep.closed = false;
                                    rep.detail = "the class of " + got.begin()->str() +
                                                 " under " + dcat.str() +
                                                 " is only partially covered";
                                    return rep;
                                }
                            }
                        }
                }
    return rep;
}

// ---------------------------------------------------------------------------
// Text form

std::pair<OrderedPartition, Decoration> parse_decorated_partition(const std::string& text) {
    const auto at = text.find('@');
    if (at == std::string::npos)
        throw UnknownLetter("expected '<partition>@<decoration>', got '" + text + "'");
    OrderedPartition p = OrderedPartition::parse(text.substr(0, at));
    Decoration dec(text.substr(at + 1));
    if (p.n() != dec.size())
        throw DecorationMismatch("partition on " + std::to_string(p.n()) +
                                 " values but " + std::to_string(dec.size()) + " letters");
    return {std::move(p), std::move(dec)};
}

std::string decorated_partition_str(const OrderedPartition& p, const Decoration& dec) {
    if (p.n() != dec.size()) throw DecorationMismatch("partition and decoration sizes differ");
    return p.str() + "@" + dec.str();
}

}  // namespace permutrees

#pragma once

// Decorations: words over the four vertex kinds.  The letter fixes how many
// parent and child slots a vertex carries:
//   o  none  : 1 parent, 1 child
//   d  down  : 1 parent, 2 children
//   u  up    : 2 parents, 1 child
//   b  both  : 2 parents, 2 children

#include <string>
#include <vector>

namespace permutrees {

enum class Letter : unsigned char { None = 0, Down = 1, Up = 2, Both = 3 };

inline bool two_children(Letter l) { return l == Letter::Down || l == Letter::Both; }
inline bool two_parents(Letter l) { return l == Letter::Up || l == Letter::Both; }

char letter_to_char(Letter l);
Letter letter_from_char(char c);

class Decoration {
public:
    Decoration() = default;
    explicit Decoration(std::vector<Letter> letters) : letters_(std::move(letters)) {}
    explicit Decoration(const std::string& word);  // e.g. "odub"; throws UnknownLetter

    int size() const { return (int)letters_.size(); }
    Letter operator[](int value) const { return letters_[value - 1]; }  // 1-based by value
    const std::vector<Letter>& letters() const { return letters_; }

    std::string str() const;

    bool operator==(const Decoration& o) const { return letters_ == o.letters_; }
    bool operator!=(const Decoration& o) const { return !(*this == o); }
    bool operator<(const Decoration& o) const { return letters_ < o.letters_; }

    // subword at the given 1-based values, kept in increasing value order
    Decoration restrict_to(const std::vector<int>& values) const;

    // concatenation (left values first)
    Decoration concat(const Decoration& other) const;

    // mirror symmetry: reverse the word
    Decoration reversed() const;
    // up/down symmetry: swap d <-> u, fix o and b
    Decoration flipped() const;

    // replace both boundary letters by `l` (boundary letters never change the
    // family of trees, so a canonical choice simplifies comparisons)
    Decoration with_boundary(Letter l) const;

    // letterwise refinement order: o below d,u below b; true iff this <= other
    // at every position
    bool refines_letterwise(const Decoration& other) const;

    std::vector<int> positions_of(Letter l) const;            // 1-based
    std::vector<int> positions_two_children() const;          // letters d, b
    std::vector<int> positions_two_parents() const;           // letters u, b

private:
    std::vector<Letter> letters_;
};

// iterate all decorations of size n over the given alphabet (default all four)
std::vector<Decoration> all_decorations(int n, const std::string& alphabet = "odub");

}  // namespace permutrees

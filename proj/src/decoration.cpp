#include "permutrees/decoration.hpp"

#include "permutrees/errors.hpp"

namespace permutrees {

char letter_to_char(Letter l) {
    switch (l) {
        case Letter::None: return 'o';
        case Letter::Down: return 'd';
        case Letter::Up:   return 'u';
        case Letter::Both: return 'b';
    }
    return '?';
}

Letter letter_from_char(char c) {
    switch (c) {
        case 'o': return Letter::None;
        case 'd': return Letter::Down;
        case 'u': return Letter::Up;
        case 'b': return Letter::Both;
        default:
            throw UnknownLetter(std::string("'") + c + "' is not one of o, d, u, b");
    }
}

Decoration::Decoration(const std::string& word) {
    if (word.empty()) throw EmptyInput("empty decoration word");
    letters_.reserve(word.size());
    for (char c : word) letters_.push_back(letter_from_char(c));
}

std::string Decoration::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(letter_to_char(l));
    return s;
}

Decoration Decoration::restrict_to(const std::vector<int>& values) const {
    std::vector<Letter> sub;
    sub.reserve(values.size());
    for (int v : values) sub.push_back(letters_.at(v - 1));
    return Decoration(std::move(sub));
}

Decoration Decoration::concat(const Decoration& other) const {
    std::vector<Letter> w = letters_;
    w.insert(w.end(), other.letters_.begin(), other.letters_.end());
    return Decoration(std::move(w));
}

Decoration Decoration::reversed() const {
    return Decoration(std::vector<Letter>(letters_.rbegin(), letters_.rend()));
}

Decoration Decoration::flipped() const {
    std::vector<Letter> w = letters_;
    for (Letter& l : w) {
        if (l == Letter::Down) l = Letter::Up;
        else if (l == Letter::Up) l = Letter::Down;
    }
    return Decoration(std::move(w));
}

Decoration Decoration::with_boundary(Letter l) const {
    std::vector<Letter> w = letters_;
    if (!w.empty()) {
        w.front() = l;
        w.back() = l;
    }
    return Decoration(std::move(w));
}

bool Decoration::refines_letterwise(const Decoration& other) const {
    if (size() != other.size()) return false;
    for (int i = 0; i < size(); ++i) {
        Letter a = letters_[i], b = other.letters_[i];
        if (a == b) continue;
        if (a == Letter::None) continue;               // o below everything
        if (b == Letter::Both && a != Letter::Both) continue;  // everything below b
        return false;
    }
    return true;
}

std::vector<int> Decoration::positions_of(Letter l) const {
    std::vector<int> out;
    for (int v = 1; v <= size(); ++v)
        if (letters_[v - 1] == l) out.push_back(v);
    return out;
}

std::vector<int> Decoration::positions_two_children() const {
    std::vector<int> out;
    for (int v = 1; v <= size(); ++v)
        if (two_children(letters_[v - 1])) out.push_back(v);
    return out;
}

std::vector<int> Decoration::positions_two_parents() const {
    std::vector<int> out;
    for (int v = 1; v <= size(); ++v)
        if (two_parents(letters_[v - 1])) out.push_back(v);
    return out;
}

std::vector<Decoration> all_decorations(int n, const std::string& alphabet) {
    std::vector<Decoration> out;
    std::vector<Letter> word(n, Letter::None);
    std::vector<int> digits(n, 0);
    int base = (int)alphabet.size();
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= base;
    out.reserve(total);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < n; ++i) {
            word[i] = letter_from_char(alphabet[c % base]);
            c /= base;
        }
        out.push_back(Decoration(word));
    }
    return out;
}

}  // namespace permutrees

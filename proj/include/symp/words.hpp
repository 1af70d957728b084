#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symp/spmat.hpp"

namespace symp {

struct Letter {
    Root root;
    int exp = 1;  // +1 or -1

    Letter inverse() const { return {root, -exp}; }
    bool operator==(const Letter&) const = default;
    auto operator<=>(const Letter& o) const {
        if (auto c = root <=> o.root; c != 0) return c;
        return exp <=> o.exp;
    }
    std::string str() const;
};

struct Word {
    int p = 1;
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(int rank) : p(rank) {}
    Word(int rank, std::vector<Letter> ls) : p(rank), letters(std::move(ls)) {}

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    Word operator*(const Word& o) const;
    Word& operator*=(const Word& o);
    Word inverse() const;
    bool operator==(const Word& o) const { return p == o.p && letters == o.letters; }
    auto operator<=>(const Word& o) const { return letters <=> o.letters; }
    std::string str() const;
};

// e_a(x) spelled with |x| letters
Word power_word(const Root& a, const mpz_class& x, int p);
Word commutator_word(const Word& a, const Word& b);

SpMatrix evaluate(const Word& w);
Word free_reduce(const Word& w);
Word parse_word(const std::string& text, int p);

struct HomotopyMove {
    enum class Kind { insert_relator, delete_relator, free_expand, free_contract } kind;
    size_t pos = 0;
    Word relator;      // insert_relator
    size_t length = 0; // delete_relator
    Letter letter;     // free_expand

    static HomotopyMove insert(size_t pos, Word r) { return {Kind::insert_relator, pos, std::move(r), 0, {}}; }
    static HomotopyMove remove(size_t pos, size_t len) { return {Kind::delete_relator, pos, {}, len, {}}; }
    static HomotopyMove expand(size_t pos, Letter t) { return {Kind::free_expand, pos, {}, 0, t}; }
    static HomotopyMove contract(size_t pos) { return {Kind::free_contract, pos, {}, 0, {}}; }
    int cost() const { return kind == Kind::insert_relator || kind == Kind::delete_relator ? 1 : 0; }
};

using RelatorSet = std::set<Word>;

// throws std::invalid_argument (with a reason) on a malformed move
Word apply_move(const Word& w, const HomotopyMove& m, const RelatorSet& active);

RelatorSet relator_set(int p, int xbound);

struct AreaResult {
    std::optional<int> area;
    size_t states = 0;
};
AreaResult area_search(const Word& w, const RelatorSet& relators, size_t max_len, size_t max_cost);

}  // namespace symp

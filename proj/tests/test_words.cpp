#include <doctest.h>

#include <random>

#include "symp/words.hpp"

using namespace symp;

TEST_CASE("word text, inverse, evaluate") {
    int p = 2;
    Word w = parse_word("e(+1-2) e(2*+1)^-1 e(+1+2)", p);
    CHECK(w.size() == 3);
    CHECK(parse_word(w.str(), p) == w);
    CHECK(evaluate(w * w.inverse()).is_identity());
    CHECK(evaluate(w) == elementary(parse_root("+1-2", p), 1, p) * elementary(parse_root("2*+1", p), -1, p) *
                             elementary(parse_root("+1+2", p), 1, p));
    CHECK_THROWS(parse_word("e(+1-2)^2", p));
    CHECK_THROWS(parse_word("f(+1-2)", p));
    CHECK(evaluate(power_word(parse_root("+1-2", p), -4, p)) == elementary(parse_root("+1-2", p), -4, p));
    CHECK_THROWS(power_word(parse_root("+1-2", p), mpz_class("1000000000"), p));
}

TEST_CASE("free_reduce") {
    int p = 2;
    Word w = parse_word("e(+1-2) e(2*+1) e(2*+1)^-1 e(+1-2)^-1 e(+1+2)", p);
    CHECK(free_reduce(w) == parse_word("e(+1+2)", p));
    CHECK(free_reduce(w * w.inverse()).empty());
    CHECK(evaluate(free_reduce(w)) == evaluate(w));
}

TEST_CASE("homotopy moves") {
    int p = 2;
    RelatorSet R = relator_set(p, 1);
    REQUIRE(!R.empty());
    Word r = *R.begin();
    Word w = parse_word("e(+1-2)", p);
    Word w2 = apply_move(w, HomotopyMove::insert(1, r), R);
    CHECK(w2.size() == w.size() + r.size());
    CHECK(apply_move(w2, HomotopyMove::remove(1, r.size()), R) == w);
    Letter l{parse_root("2*+1", p), 1};
    Word w3 = apply_move(w, HomotopyMove::expand(0, l), R);
    CHECK(w3.size() == 3);
    CHECK(apply_move(w3, HomotopyMove::contract(0), R) == w);
    CHECK(HomotopyMove::insert(0, r).cost() == 1);
    CHECK(HomotopyMove::contract(0).cost() == 0);
    CHECK_THROWS_AS(apply_move(w, HomotopyMove::contract(0), R), std::invalid_argument);
    CHECK_THROWS_AS(apply_move(w, HomotopyMove::insert(5, r), R), std::invalid_argument);
    CHECK_THROWS_AS(apply_move(w, HomotopyMove::insert(0, w), R), std::invalid_argument);
    CHECK_THROWS_AS(apply_move(w, HomotopyMove::remove(0, 1), R), std::invalid_argument);
}

TEST_CASE("relators all evaluate to the identity") {
    for (int p = 1; p <= 3; ++p) {
        RelatorSet R = relator_set(p, 2);
        CHECK(!R.empty());
        for (auto& r : R) CHECK(evaluate(r).is_identity());
    }
    CHECK_THROWS(relator_set(0, 1));
}

TEST_CASE("commutator relators cover every non-opposite pair at x=y=1") {
    int p = 2;
    RelatorSet R = relator_set(p, 1);
    auto roots = all_roots(p);
    for (auto& a : roots)
        for (auto& b : roots) {
            if (a == b || a == -b) continue;
            Word c = commutator_word(power_word(a, 1, p), power_word(b, 1, p));
            bool found = false;
            for (auto& r : R)
                if (r.size() >= 4 && std::equal(c.letters.begin(), c.letters.end(), r.letters.begin())) found = true;
            CHECK(found);
        }
}

TEST_CASE("area search") {
    int p = 2;
    RelatorSet R = relator_set(p, 1);
    Word empty(p);
    CHECK(area_search(empty, R, 20, 1000).area == 0);
    // a relator that is not freely trivial
    Word r(p);
    for (auto& c : R)
        if (free_reduce(c).size() >= 4) r = c;
    REQUIRE(!r.empty());
    auto res = area_search(r, R, 20, 1000);
    REQUIRE(res.area);
    CHECK(*res.area == 1);
    // conjugate of a relator still has area 1
    Word g = parse_word("e(+1-2) e(2*+2)", p);
    auto res2 = area_search(g * r * g.inverse(), R, 30, 1000);
    REQUIRE(res2.area);
    CHECK(*res2.area == 1);
    // product of two relators: at most 2
    Word r2(p);
    for (auto& c : R)
        if (free_reduce(c).size() >= 4 && r2.empty() && c != r) r2 = c;
    auto res3 = area_search(r * r2, R, 40, 200000);
    REQUIRE(res3.area);
    CHECK(*res3.area <= 2);
    CHECK_THROWS_AS(area_search(parse_word("e(+1-2)", p), R, 10, 10), DomainError);
}

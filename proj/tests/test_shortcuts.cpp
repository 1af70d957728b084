#include <doctest.h>

#include <random>

#include "symp/shortcuts.hpp"

using namespace symp;

static HalfRoot P(int i) { return {1, i}; }
static HalfRoot M(int i) { return {-1, i}; }

TEST_CASE("sl2_factors") {
    HyperbolicBase b;
    auto f = sl2_factors(b.A);
    REQUIRE(f.size() == 2);
    CHECK(f[0].upper);
    CHECK(f[0].k == 1);
    CHECK(!f[1].upper);
    CHECK(f[1].k == 1);
    CHECK(sl2_product(f) == b.A);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        std::vector<Sl2Factor> fs;
        for (int j = 0; j < 8; ++j) fs.push_back({j % 2 == 0, static_cast<long>(rng() % 9) - 4});
        Mat2 m = sl2_product(fs);
        CHECK(sl2_product(sl2_factors(m)) == m);
    }
    Mat2 minus;
    minus[0][0] = -1;
    minus[1][1] = -1;
    minus[0][1] = 0;
    minus[1][0] = 0;
    CHECK(sl2_product(sl2_factors(minus)) == minus);
    Mat2 bad;
    bad[0][0] = 2;
    bad[1][1] = 1;
    bad[0][1] = 0;
    bad[1][0] = 0;
    CHECK_THROWS_AS(sl2_factors(bad), DomainError);
}

TEST_CASE("hyperbolic base validation") {
    Mat2 id;
    id[0][0] = 1;
    id[1][1] = 1;
    id[0][1] = 0;
    id[1][0] = 0;
    CHECK_THROWS(HyperbolicBase(id));
    Mat2 a3;
    a3[0][0] = 3;
    a3[0][1] = 1;
    a3[1][0] = 2;
    a3[1][1] = 1;
    CHECK_NOTHROW(HyperbolicBase(a3));
}

TEST_CASE("radix expansion of (10^6, 0)") {
    HyperbolicBase b;
    Vec2 v{1000000, 0};
    auto e = radix_expand(v, b);
    CHECK(radix_reconstruct(e, b) == v);
    for (auto& r : e.digits) {
        CHECK(abs(r[0]) <= 2);
        CHECK(abs(r[1]) <= 2);
    }
    // number of levels is logarithmic: lambda = (3+sqrt5)/2, log_lambda(1e6) ~ 14.4
    CHECK(e.steps() <= 2 * 15 + 4);
    CHECK_THROWS(radix_expand(v, b, 1));
}

TEST_CASE("radix expansion, random vectors and digit bound") {
    HyperbolicBase b;
    std::mt19937_64 rng(5);
    gmp_randclass gr(gmp_randinit_default);
    gr.seed(17);
    for (int k = 0; k < 2000; ++k) {
        Vec2 v;
        if (k % 2) v = {static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 2001) - 1000};
        else v = {gr.get_z_bits(200) - gr.get_z_bits(200), gr.get_z_bits(200) - gr.get_z_bits(200)};
        auto e = radix_expand(v, b);
        CHECK(radix_reconstruct(e, b) == v);
        for (auto& r : e.digits) CHECK((abs(r[0]) <= 2 && abs(r[1]) <= 2));
    }
    CHECK(radix_expand({0, 0}, b).digits.empty());
}

TEST_CASE("lambda_pow_le") {
    HyperbolicBase b;  // lambda = 2.618...
    CHECK(lambda_pow_le(b, 0, 1));
    CHECK(!lambda_pow_le(b, 1, 2));
    CHECK(lambda_pow_le(b, 1, 3));
    CHECK(lambda_pow_le(b, 2, 7));   // 6.854
    CHECK(!lambda_pow_le(b, 2, 6));
}

TEST_CASE("shortcut exactness at x = 10^12") {
    mpz_class x("1000000000000");
    for (int p = 2; p <= 4; ++p)
        for (auto& a : all_roots(p)) {
            ShortcutPlan sp = shortcut(a, x, p);
            CHECK(evaluate(sp.ladder) == elementary(a, x, p));
            CHECK(sp.ladder.size() < 2000);
            ShortcutPlan sn = shortcut(a, -x, p);
            CHECK(evaluate(sn.ladder) == elementary(a, -x, p));
        }
}

TEST_CASE("explicit variants") {
    mpz_class x = 987654321;
    int p = 3;
    Root a = parse_root("+1-2", p);
    CHECK(evaluate(shortcut_gl(a, x, p).ladder) == elementary(a, x, p));
    CHECK(evaluate(shortcut_special(a, x, p).ladder) == elementary(a, x, p));
    Root l = parse_root("2*-3", p);
    CHECK(evaluate(shortcut_long(l, x, p, true).ladder) == elementary(l, x, p));
    CHECK(evaluate(shortcut_long(l, x + 1, p, false).ladder) == elementary(l, x + 1, p));
    CHECK_THROWS_AS(shortcut_gl(parse_root("+1-2", 2), x, 2), UnsupportedRank);
    CHECK_THROWS_AS(shortcut(parse_root("2*+1", 1), x, 1), UnsupportedRank);
    CHECK_THROWS(shortcut_gl(l, x, p));
    CHECK(shortcut_gl(a, 0, p).ladder.empty());
}

TEST_CASE("small x uses the plain word, every x in a window is exact") {
    int p = 2;
    for (auto& a : all_roots(p))
        for (int x = -300; x <= 300; x += 7) {
            auto sp = shortcut(a, x, p);
            CHECK(evaluate(sp.ladder) == elementary(a, x, p));
            CHECK(sp.ladder.size() <= static_cast<size_t>(std::abs(x)));
        }
    CHECK(shortcut(parse_root("+1-2", 2), 3, 2).variant == ShortcutVariant::plain);
}

TEST_CASE("length is logarithmic") {
    int p = 3;
    Root a = parse_root("+1+3", p);
    std::vector<mpz_class> xs;
    mpz_class x = 10;
    for (int k = 0; k < 12; ++k, x *= 1000) xs.push_back(x);
    auto rows = length_profile(a, p, xs);
    double worst = 0;
    for (auto& r : rows) worst = std::max(worst, r.ratio);
    CHECK(worst < 60);
    CHECK(rows.back().length < 3000);
}

TEST_CASE("tensor shortcut") {
    SubgroupFrame f(3, {P(1)}, {P(2), M(2), P(3), M(3)});
    TensorElem V(f);
    V.add(P(1), P(2), mpz_class("123456789123"));
    V.add(P(1), M(2), mpz_class("-98765432109"));
    V.add(P(1), P(3), 5);
    auto sp = shortcut_tensor(V);
    CHECK(evaluate(sp.ladder) == u_of(V));
    SubgroupFrame g(4, {P(1), M(2)}, {P(3), M(3)});
    TensorElem W(g);
    W.add(P(1), P(3), mpz_class("1000000007"));
    W.add(M(2), M(3), mpz_class("3000000019"));
    W.add(P(1), M(3), mpz_class("-77777777777"));
    CHECK(evaluate(shortcut_tensor(W).ladder) == u_of(W));
    CHECK(plan_to_json(sp).find("\"variant\":\"tensor\"") != std::string::npos);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "symp/boundedgen.hpp"

using namespace symp;

static HalfRoot P(int i) { return {1, i}; }
static HalfRoot M(int i) { return {-1, i}; }

// smallest positive c by brute force
static long crt_brute(std::vector<long> ps, std::vector<long> qs) {
    for (long c = 1;; ++c) {
        bool ok = true;
        for (long q : qs) ok = ok && c % q == 0;
        for (long p : ps) ok = ok && c % p == 1;
        if (ok) return c;
    }
}

static double log_norm(const mpz_class& x) {
    mpz_class a = abs(x) + 2;
    long e;
    double m = mpz_get_d_2exp(&e, a.get_mpz_t());
    return std::log(m) + e * std::log(2.0);
}

// random product of generators of Sp(T)
static SpMatrix random_block(const SubgroupFrame& f, int len, std::mt19937_64& rng, int xmax = 3) {
    auto roots = phi_set(PhiKind::Sp, f);
    SpMatrix m = SpMatrix::identity(f.p);
    for (int k = 0; k < len; ++k) {
        long x = static_cast<long>(rng() % (2 * xmax + 1)) - xmax;
        m.right_mul(roots[rng() % roots.size()], x);
    }
    return m;
}

TEST_CASE("crt_mix against brute force") {
    CHECK(crt_mix({5}, {3}) == 6);
    CHECK(crt_mix({2}, {}) == 1);
    CHECK(crt_mix({}, {2, 3}) == 6);
    CHECK(crt_mix({}, {}) == 1);
    std::vector<long> primes{2, 3, 5, 7, 11, 13};
    for (int mask = 0; mask < 729; ++mask) {
        std::vector<long> ps, qs;
        int m = mask;
        for (long pr : primes) {
            if (m % 3 == 1) ps.push_back(pr);
            if (m % 3 == 2) qs.push_back(pr);
            m /= 3;
        }
        std::vector<mpz_class> pz(ps.begin(), ps.end()), qz(qs.begin(), qs.end());
        CHECK(crt_mix(pz, qz) == crt_brute(ps, qs));
    }
    CHECK_THROWS(crt_mix({4}, {}));
    CHECK_THROWS(crt_mix({3}, {3}));
    CHECK_THROWS(crt_mix({1}, {}));
}

TEST_CASE("bezout") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 300; ++k) {
        std::vector<mpz_class> m;
        for (int i = 0; i < 4; ++i) m.push_back(static_cast<long>(rng() % 2001) - 1000);
        auto a = bezout(m);
        mpz_class s = 0, g = 0;
        for (int i = 0; i < 4; ++i) s += a[i] * m[i], g = gcd(g, m[i]);
        CHECK(s == g);
        for (int i = 0; i < 4; ++i) CHECK(abs(a[i]) <= 1000);
    }
}

TEST_CASE("sl2_decompose") {
    int p = 3;
    HalfRoot t = P(2);
    auto id = sl2_decompose(SpMatrix::identity(p), t);
    CHECK(id.factors.empty());
    Root up = Root::long_root(t, p), lo = Root::long_root(-t, p);
    auto d1 = sl2_decompose(elementary(up, 5, p), t);
    REQUIRE(d1.factors.size() == 1);
    CHECK(d1.factors[0] == Factor{up, 5});
    SpMatrix fib = elementary(up, 1, p) * elementary(lo, 1, p);
    CHECK(fib.at(t, t) == 2);
    CHECK(fib.at(t, -t) == 1);
    CHECK(fib.at(-t, t) == 1);
    CHECK(fib.at(-t, -t) == 1);
    auto d2 = sl2_decompose(fib, t);
    CHECK(d2.factors == std::vector<Factor>{{up, 1}, {lo, 1}});
    CHECK_THROWS_AS(sl2_decompose(elementary(parse_root("+1-2", p), 1, p), t), DomainError);
    // Lame: factor count is logarithmic; Fibonacci-type matrices are the worst case
    std::mt19937_64 rng(2);
    SubgroupFrame f(p, {}, {t, -t});
    for (int k = 0; k < 200; ++k) {
        SpMatrix m = random_block(f, 40, rng);
        auto d = sl2_decompose(m, t);
        CHECK(factors_product(d.factors, p) == m);
        double phi = (1 + std::sqrt(5.0)) / 2;
        CHECK(d.elementary_count <= 2 * (std::log(m.norm_inf().get_d() + 1) / std::log(phi) + 2) + 6);
    }
}

TEST_CASE("sp_decompose examples") {
    int p = 3;
    SubgroupFrame f(p, {}, {P(2), M(2), P(3), M(3)});
    CHECK(sp_decompose(SpMatrix::identity(p), f).factors.empty());
    SpMatrix e = elementary(parse_root("+2-3", p), 4, p);
    auto d = sp_decompose(e, f);
    CHECK(factors_product(d.factors, p) == e);
    CHECK(d.elementary_count <= 20);
    CHECK_THROWS_AS(sp_decompose(elementary(parse_root("+1-2", p), 1, p), f), DomainError);
}

TEST_CASE("sp_decompose random families and norm control") {
    std::mt19937_64 rng(9);
    struct Case {
        SubgroupFrame f;
        int len;
    };
    std::vector<Case> cases = {
        {{2, {}, {P(1), M(1), P(2), M(2)}}, 30},
        {{3, {}, {P(1), M(1), P(2), M(2)}}, 60},
        {{3, {}, {P(1), M(1), P(2), M(2), P(3), M(3)}}, 30},
        {{4, {P(1)}, {P(2), M(2), P(4), M(4)}}, 30},
    };
    for (auto& c : cases) {
        double worst = 0;
        for (int k = 0; k < 40; ++k) {
            SpMatrix m = random_block(c.f, c.len, rng);
            auto d = sp_decompose(m, c.f);
            CHECK(factors_product(d.factors, c.f.p) == m);
            double ln = log_norm(m.norm_inf());
            for (auto& fa : d.factors) worst = std::max(worst, log_norm(fa.x) / (ln + 1));
        }
        MESSAGE("p=" << c.f.p << " #T=" << c.f.T.size() << " max log|x|/(log||M||+1) = " << worst);
        CHECK(worst <= 64.0 * c.f.p * c.f.p);
    }
}

TEST_CASE("sp_decompose_short") {
    std::mt19937_64 rng(4);
    int p = 3;
    SubgroupFrame f(p, {}, {P(1), M(1), P(2), M(2)});
    auto [d0, w0] = sp_decompose_short(SpMatrix::identity(p), f);
    CHECK(w0.empty());
    // sl2 case
    SubgroupFrame g(p, {}, {P(1), M(1)});
    Root up = parse_root("2*+1", p), lo = parse_root("2*-1", p);
    SpMatrix fib = elementary(up, 1, p) * elementary(lo, 1, p);
    auto [d1, w1] = sp_decompose_short(fib, g);
    Word expect = shortcut(up, 1, p).ladder * shortcut(lo, 1, p).ladder;
    CHECK(w1 == expect);
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
        SpMatrix m = random_block(f, 60, rng);
        auto [d, w] = sp_decompose_short(m, f);
        CHECK(evaluate(w) == m);
        CHECK(d.shortcut_length == w.size());
        worst = std::max(worst, w.size() / (log_norm(m.norm_inf()) / std::log(2.0) + 1));
    }
    MESSAGE("measured C for sp_decompose_short (log2 units): " << worst);
    CHECK(worst <= 1e4);
}

#include <doctest.h>

#include "symp/relations.hpp"

using namespace symp;

TEST_CASE("kappa values") {
    // (1,-1) + (1,1) = 2e1, long
    CHECK(std::abs(kappa(parse_root("+1-2", 2), parse_root("+1+2", 2), 2)) == 2);
    CHECK(std::abs(kappa(parse_root("+1-2", 3), parse_root("+2-3", 3), 3)) == 1);
    CHECK_THROWS_AS(kappa(parse_root("+1-2", 2), parse_root("+1-2", 2), 2), DomainError);
}

TEST_CASE("relation table, full form") {
    for (int p = 1; p <= 3; ++p) {
        auto r = verify_relations(p, 2, false);
        CHECK(r.ok());
        CHECK(r.checked > 0);
    }
}

TEST_CASE("relation table, literal form fails only for short + long") {
    auto r = verify_relations(2, 1, true);
    CHECK(r.kappa_mismatch == 0);
    CHECK(r.antisym_failures == 0);
    CHECK(r.failures > 0);
    // p = 1 has no pair with a sum
    CHECK(verify_relations(1, 2, true).ok());
}

TEST_CASE("prop 3.1 suite") {
    for (int p = 2; p <= 4; ++p)
        for (int nS = 1; nS < p; ++nS) {
            std::vector<HalfRoot> S, T;
            for (int i = 1; i <= nS; ++i) S.push_back({1, i});
            for (int i = nS + 1; i <= p; ++i) T.push_back({1, i}), T.push_back({-1, i});
            std::sort(T.begin(), T.end());
            auto r = verify_prop31(SubgroupFrame(p, S, T), 50, 3);
            CHECK(r.ok());
        }
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symp/unipotent.hpp"

namespace symp {

struct RelationReport {
    uint64_t checked = 0;
    uint64_t failures = 0;
    uint64_t kappa_mismatch = 0;   // |kappa| does not match short/long
    uint64_t antisym_failures = 0; // kappa(b,a) != -kappa(a,b)
    std::vector<std::string> examples;  // first few failures
    bool ok() const { return failures == 0 && kappa_mismatch == 0 && antisym_failures == 0; }
};

// kappa with [e_a(1), e_b(1)] = e_{a+b}(kappa) * (higher terms); a+b must be a root
int kappa(const Root& a, const Root& b, int p);

// additivity, commutators and commutation for all roots a != -b and 0 < |x|,|y| <= xbound.
// literal: [e_a(x),e_b(y)] = e_{a+b}(kappa x y) exactly.
// otherwise the e_{2a+b}(c x^2 y) / e_{a+2b}(c x y^2) term is allowed when that root exists.
RelationReport verify_relations(int p, int xbound, bool literal);

// the u / u_Z identities (a)-(d) on basis vectors and count seeded random small inputs
RelationReport verify_prop31(const SubgroupFrame& f, int count, unsigned seed);

std::string relation_report_json(const RelationReport& r);

}  // namespace symp

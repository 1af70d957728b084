#pragma once

#include <map>
#include <string>
#include <vector>

#include "symp/spmat.hpp"

namespace symp {

// functional on A = D x E; d_part has its mean subtracted (trace relation on D)
struct Weight {
    std::vector<mpq_class> d_part;  // indexed by S
    std::vector<int> e_part;        // indexed by T+
    bool is_zero() const;
    Weight operator+(const Weight& o) const;
    Weight operator-() const;
    auto operator<=>(const Weight&) const = default;
    bool operator==(const Weight&) const = default;
    std::string str() const;
};

Weight weight_of(const Root& a, const SubgroupFrame& f);

using LieVec = std::map<int, mpq_class>;  // sparse, basis index -> coefficient

struct GradedNilpotentAlgebra {
    SubgroupFrame frame;
    std::vector<Root> basis;  // PhiN order
    std::vector<Weight> weights;
    std::vector<std::vector<LieVec>> bracket;  // bracket[i][j] = [X_i, X_j]
    int dim() const { return static_cast<int>(basis.size()); }
    int index_of(const Root& a) const;  // -1 if absent
};

GradedNilpotentAlgebra build_algebra(const SubgroupFrame& f);

struct AlgebraChecks {
    bool antisymmetric = true, jacobi = true, two_step = true, additive = true, chain = true;
    bool all() const { return antisymmetric && jacobi && two_step && additive && chain; }
};
// chain: d2(d3(x^y^z)) = 0 for every basis triple
AlgebraChecks check_algebra(const GradedNilpotentAlgebra& g);

enum class Space { tensor2, wedge2, wedge3, sym2 };
Space parse_space(const std::string& s);
// index tuples of basis monomials of total weight 0 (i<j / i<j<k / i<=j / ordered pairs)
std::vector<std::vector<int>> zero_weight_component(Space space, const GradedNilpotentAlgebra& g);

int h2_zero_dim(const GradedNilpotentAlgebra& g);
int kill_zero_dim(const GradedNilpotentAlgebra& g);

// weights of u/[u,u] (principal weights), with multiplicity dropped
std::vector<Weight> principal_weights(const GradedNilpotentAlgebra& g);
bool quasi_opposite(const Weight& a, const Weight& b);

// the displayed #S = 4 identities, for every pair partition of S and every t in T:
// d3(X_{s1+t} ^ X_{s2-t} ^ X_{s3+s4}) is a nonzero multiple of X_{s1+s2} ^ X_{s3+s4},
// and [X_{s1+t},X_{s2-t}].X_{s3+s4} - [X_{s1+t},X_{s3+s4}].X_{s2-t} of X_{s1+s2}.X_{s3+s4}
bool check_s4_identities(const GradedNilpotentAlgebra& g);

struct DctReport {
    int nS = 0, nT = 0;
    int dim = 0;
    bool standard_solvable = false;
    bool quasi_opposite_principal = false;
    int h2_0 = 0, kill_0 = 0;
    AlgebraChecks checks;
    bool verdict = false;
};
DctReport dct_report(const SubgroupFrame& f);
// S = {+[1]..+[nS]}, T = {+-[nS+1] .. +-[nS+nT/2]}
SubgroupFrame standard_frame(int nS, int nT_half);
std::string dct_csv_header();
std::string dct_csv_row(const DctReport& r);

}  // namespace symp

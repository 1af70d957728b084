#pragma once

#include <string>
#include <vector>

#include "symp/boundedgen.hpp"

namespace symp {

// M R^S in R^S, and M z_h = z_h for h outside S, -S, T
bool parabolic_membership(const SpMatrix& M, const SubgroupFrame& f);

struct BlockSplit {
    SpMatrix gl_part;  // GL(S), identity on R^T and the rest
    SpMatrix sp_part;  // Sp(T)
    TensorElem n_tensor;
    SymElem n_sym;
};

BlockSplit project_blocks(const SpMatrix& M, const SubgroupFrame& f);
SpMatrix reassemble(const BlockSplit& b);

// GL(S) element as elementary factors: row reduction with s-s' letters, then a -1 fix per sign
std::vector<Factor> gl_factors(const SpMatrix& gl_part, const SubgroupFrame& f);
// the unipotent part as prod over PhiN (roots order) of e_a(x_a)
std::vector<Factor> n_factors(const SpMatrix& n, const SubgroupFrame& f);

struct OmegaResult {
    Word word;  // d e n
    Word d, e, n;
    BlockSplit split;
};
OmegaResult omega_normal_form(const SpMatrix& M, const SubgroupFrame& f);

std::string omega_report_json(const OmegaResult& r);

}  // namespace symp

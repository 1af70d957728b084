#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "symp/spmat.hpp"

namespace symp {

using Vec = std::vector<mpz_class>;  // length 2p, indexed by HalfRoot::pos

// element of R^S (x) R^T; key (s, t) is the coefficient of z_s (x) z_t
struct TensorElem {
    SubgroupFrame frame;
    std::map<std::pair<HalfRoot, HalfRoot>, mpz_class> coeffs;

    explicit TensorElem(SubgroupFrame f) : frame(std::move(f)) {}
    void add(HalfRoot s, HalfRoot t, const mpz_class& x);
    mpz_class get(HalfRoot s, HalfRoot t) const;
    bool is_zero() const;
    TensorElem operator-() const;
    TensorElem operator+(const TensorElem& o) const;
    bool operator==(const TensorElem& o) const;
    Vec w_of(HalfRoot s) const;  // sum_t x_st z_t
};

// element of Sym^2 R^S; key {s <= s'} is the coefficient of the monomial z_s z_s'
struct SymElem {
    SubgroupFrame frame;
    std::map<std::pair<HalfRoot, HalfRoot>, mpq_class> coeffs;

    explicit SymElem(SubgroupFrame f) : frame(std::move(f)) {}
    void add(HalfRoot s, HalfRoot s2, const mpq_class& x);
    mpq_class get(HalfRoot s, HalfRoot s2) const;
    bool is_zero() const;
    SymElem operator-() const;
    bool operator==(const SymElem& o) const;
};

Vec basis_vec(HalfRoot h, int p);
mpz_class omega(const Vec& v, const Vec& w);  // v^T J0 w

// u(v (x) w) = I + v w^T + J0 w v^T J0, v in R^S, w in R^T
SpMatrix u_simple(const Vec& v, const Vec& w);
// product over s in S of u(z_s (x) w_s)
SpMatrix u_of(const TensorElem& V);
// product over (s,t) of e_{s-t}(x_st), the naive alternative
SpMatrix u_of_pairs(const TensorElem& V);

// u_Z(v v') = I + (v' v^T + v v'^T) J0
SpMatrix uz_pair(const Vec& v, const Vec& v2);
RatMatrix uz_rat(const SymElem& q);
SpMatrix uz_of(const SymElem& q);  // throws if the matrix is not integral

bool in_N(const SpMatrix& M, const SubgroupFrame& f);
bool in_Z(const SpMatrix& M, const SubgroupFrame& f);
TensorElem ab_of(const SpMatrix& M, const SubgroupFrame& f);
SymElem uz_inverse(const SpMatrix& M, const SubgroupFrame& f);

// the symmetric product v v' as a SymElem
SymElem sym_product(const Vec& v, const Vec& v2, const SubgroupFrame& f);

// u / u_Z conjugation and commutator identities (a)-(d), each returns lhs == rhs
bool check_a_tensor(const Vec& v, const Vec& w);
bool check_a_sym(const SymElem& q);
bool check_b_tensor(const SpMatrix& d, const Vec& v, const Vec& w);
bool check_b_sym(const SpMatrix& d, const Vec& v, const Vec& v2, const SubgroupFrame& f);
bool check_c(const SpMatrix& d, const Vec& v, const Vec& w);
bool check_d(const Vec& v, const Vec& w, const Vec& v2, const Vec& w2, const SubgroupFrame& f);

std::string tensor_to_json(const TensorElem& V);
TensorElem tensor_from_json(const std::string& text, const SubgroupFrame& f);
std::string sym_to_json(const SymElem& q);
SymElem sym_from_json(const std::string& text, const SubgroupFrame& f);

}  // namespace symp

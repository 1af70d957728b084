#pragma once

#include <string>
#include <utility>
#include <vector>

#include "symp/shortcuts.hpp"

namespace symp {

struct Factor {
    Root root;
    mpz_class x;
    bool operator==(const Factor&) const = default;
};

struct Decomposition {
    SpMatrix target;
    std::vector<Factor> factors;  // target = prod elementary(root, x), left to right
    size_t shortcut_length = 0;
    size_t elementary_count = 0;
};

SpMatrix factors_product(const std::vector<Factor>& fs, int p);

// M fixes every z_h with h outside T, and preserves R^T
bool in_block(const SpMatrix& M, const std::vector<HalfRoot>& T);

// M in Sp({+-t}), t positive or negative
Decomposition sl2_decompose(const SpMatrix& M, HalfRoot t);

// smallest c > 0 with q | c for all q and c = 1 mod all p
mpz_class crt_mix(const std::vector<mpz_class>& p_primes, const std::vector<mpz_class>& q_primes);

// a with sum a_i m_i = gcd(m), shrunk by pairwise syzygies
std::vector<mpz_class> bezout(const std::vector<mpz_class>& m);

Decomposition sp_decompose(const SpMatrix& M, const SubgroupFrame& frame);
std::pair<Decomposition, Word> sp_decompose_short(const SpMatrix& M, const SubgroupFrame& frame);

// shortcut word for a factor list
Word factors_word(const std::vector<Factor>& fs, int p);

std::string decomposition_to_json(const Decomposition& d);

}  // namespace symp

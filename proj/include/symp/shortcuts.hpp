#pragma once

#include <array>
#include <string>
#include <vector>

#include "symp/unipotent.hpp"
#include "symp/words.hpp"

namespace symp {

using Vec2 = std::array<mpz_class, 2>;
using Mat2 = std::array<std::array<mpz_class, 2>, 2>;

struct HyperbolicBase {
    Mat2 A;
    HyperbolicBase();  // [[2,1],[1,1]]
    explicit HyperbolicBase(const Mat2& a);  // needs det 1, trace > 2
    mpz_class trace() const { return A[0][0] + A[1][1]; }
};

// v = sum_{i} A^(low+i) digits[i]
struct RadixExpansion {
    int low = 0;
    std::vector<Vec2> digits;
    size_t steps() const { return digits.size(); }
};

RadixExpansion radix_expand(const Vec2& v, const HyperbolicBase& base, int digit_bound = 2);
Vec2 radix_reconstruct(const RadixExpansion& e, const HyperbolicBase& base);

// exact test of lambda^k <= X for the expanding eigenvalue of A (k >= 0, X >= 0)
bool lambda_pow_le(const HyperbolicBase& base, int k, const mpz_class& X);

// SL(2,Z) as a product of upper [[1,k],[0,1]] and lower [[1,0],[k,1]] factors
struct Sl2Factor {
    bool upper;
    mpz_class k;
};
std::vector<Sl2Factor> sl2_factors(const Mat2& M);
Mat2 sl2_product(const std::vector<Sl2Factor>& fs);

enum class ShortcutVariant { plain, gl_short, special_short, long_gl, long_special, tensor };
std::string variant_name(ShortcutVariant v);

struct ShortcutPlan {
    Root root;
    mpz_class x;
    ShortcutVariant variant = ShortcutVariant::plain;
    RadixExpansion digits;
    Word ladder;
};

// explicit variants; throw UnsupportedRank when the rank is too small
ShortcutPlan shortcut_gl(const Root& a, const mpz_class& x, int p, const HyperbolicBase& base = {});
ShortcutPlan shortcut_special(const Root& a, const mpz_class& x, int p, const HyperbolicBase& base = {});
ShortcutPlan shortcut_long(const Root& a, const mpz_class& x, int p, bool use_gl, const HyperbolicBase& base = {});

// default choice, the plain word when it is no longer than the constructed one
ShortcutPlan shortcut(const Root& a, const mpz_class& x, int p);
ShortcutPlan shortcut_tensor(const TensorElem& V);

// appends the shortcut word for e_a(x) to w
void append_shortcut(Word& w, const Root& a, const mpz_class& x);

struct LengthRow {
    mpz_class x;
    size_t length;
    double ratio;  // length / log2(|x|+2)
};
std::vector<LengthRow> length_profile(const Root& a, int p, const std::vector<mpz_class>& xs);

std::string plan_to_json(const ShortcutPlan& plan);

}  // namespace symp

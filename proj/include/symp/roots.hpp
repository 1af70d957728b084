#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symp {

// thrown when an input is in range syntactically but not in the required set
// (matrix outside a block, non-relation word, ...)
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct UnsupportedRank : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// +[index] or -[index], index is 1-based
struct HalfRoot {
    int sign = 1;
    int index = 1;

    HalfRoot operator-() const { return {-sign, index}; }
    bool operator==(const HalfRoot&) const = default;
    // (index, sign) with + before -
    std::strong_ordering operator<=>(const HalfRoot& o) const {
        if (index != o.index) return index <=> o.index;
        return o.sign <=> sign;
    }
    // 0-based row/column of z_h in a 2p matrix
    int pos(int p) const { return sign > 0 ? index - 1 : p + index - 1; }
    std::string str() const;
};

HalfRoot parse_half_root(const std::string& s);
std::vector<HalfRoot> all_half_roots(int p);
HalfRoot half_root_at(int pos, int p);

class Root {
public:
    Root() = default;
    explicit Root(std::vector<int> coeffs);  // validates

    static Root short_root(HalfRoot s, HalfRoot t, int p);  // s - t
    static Root long_root(HalfRoot s, int p);               // 2s
    // s - t for any s != t (short or long)
    static Root diff(HalfRoot s, HalfRoot t, int p);

    int rank() const { return static_cast<int>(c_.size()); }
    const std::vector<int>& coeffs() const { return c_; }
    bool is_long() const;
    bool is_short() const { return !is_long(); }

    // canonical s,t with root = s - t; for a long root t = -s
    HalfRoot s() const;
    HalfRoot t() const;

    Root operator-() const;
    bool operator==(const Root&) const = default;
    auto operator<=>(const Root& o) const { return c_ <=> o.c_; }

    std::string str() const;

private:
    std::vector<int> c_;
};

Root parse_root(const std::string& text, int p);
bool is_root_vector(const std::vector<int>& v);
std::optional<Root> root_add(const Root& a, const Root& b);
std::vector<Root> all_roots(int p);

enum class SubsetKind { isotropic, symplectic, neither };
SubsetKind classify_subset(const std::vector<HalfRoot>& X, int p);

struct SubgroupFrame {
    int p = 0;
    std::vector<HalfRoot> S;  // sorted
    std::vector<HalfRoot> T;  // sorted

    SubgroupFrame() = default;
    SubgroupFrame(int p, std::vector<HalfRoot> S, std::vector<HalfRoot> T);

    bool in_S(HalfRoot h) const;
    bool in_T(HalfRoot h) const;
    std::vector<HalfRoot> T_plus() const;
};

// "+1,+2" or "±2,±3" style lists
std::vector<HalfRoot> parse_half_root_list(const std::string& text);

enum class PhiKind { P, GL, Sp, N, Z };
std::vector<Root> phi_set(PhiKind kind, const SubgroupFrame& f);

}  // namespace symp

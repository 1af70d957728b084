#include "symp/roots.hpp"

#include <algorithm>
#include <cstdlib>
#include <regex>
#include <set>

namespace symp {

std::string HalfRoot::str() const {
    return (sign > 0 ? "+" : "-") + std::to_string(index);
}

HalfRoot parse_half_root(const std::string& s) {
    static const std::regex re(R"(\s*(\+|-)?\[?(\d+)\]?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw std::invalid_argument("bad half root: " + s);
    HalfRoot h{m[1].str() == "-" ? -1 : 1, std::stoi(m[2].str())};
    if (h.index < 1) throw std::invalid_argument("bad half root index: " + s);
    return h;
}

std::vector<HalfRoot> all_half_roots(int p) {
    std::vector<HalfRoot> out;
    for (int i = 1; i <= p; ++i) {
        out.push_back({1, i});
        out.push_back({-1, i});
    }
    return out;
}

HalfRoot half_root_at(int pos, int p) {
    return pos < p ? HalfRoot{1, pos + 1} : HalfRoot{-1, pos - p + 1};
}

bool is_root_vector(const std::vector<int>& v) {
    int nz = 0, ones = 0, twos = 0;
    for (int c : v) {
        if (c == 0) continue;
        ++nz;
        if (c == 1 || c == -1) ++ones;
        else if (c == 2 || c == -2) ++twos;
        else return false;
    }
    return (nz == 2 && ones == 2) || (nz == 1 && twos == 1);
}

Root::Root(std::vector<int> coeffs) : c_(std::move(coeffs)) {
    if (!is_root_vector(c_)) throw std::invalid_argument("not a root vector");
}

Root Root::short_root(HalfRoot s, HalfRoot t, int p) {
    if (s.index == t.index) throw std::invalid_argument("short root needs t != ±s");
    std::vector<int> c(p, 0);
    c[s.index - 1] += s.sign;
    c[t.index - 1] -= t.sign;
    Root r;
    r.c_ = c;
    return r;
}

Root Root::long_root(HalfRoot s, int p) {
    std::vector<int> c(p, 0);
    c[s.index - 1] = 2 * s.sign;
    Root r;
    r.c_ = c;
    return r;
}

Root Root::diff(HalfRoot s, HalfRoot t, int p) {
    if (s == t) throw std::invalid_argument("s - s is not a root");
    if (s == -t) return long_root(s, p);
    return short_root(s, t, p);
}

bool Root::is_long() const {
    for (int c : c_)
        if (c == 2 || c == -2) return true;
    return false;
}

HalfRoot Root::s() const {
    for (int i = 0; i < rank(); ++i)
        if (c_[i] != 0) return {c_[i] > 0 ? 1 : -1, i + 1};
    throw std::logic_error("zero root");
}

HalfRoot Root::t() const {
    if (is_long()) return -s();
    bool first = true;
    for (int i = 0; i < rank(); ++i) {
        if (c_[i] == 0) continue;
        if (first) { first = false; continue; }
        return {c_[i] > 0 ? -1 : 1, i + 1};
    }
    throw std::logic_error("malformed root");
}

Root Root::operator-() const {
    Root r;
    r.c_ = c_;
    for (int& c : r.c_) c = -c;
    return r;
}

std::string Root::str() const {
    std::string out;
    for (int i = 0; i < rank(); ++i) {
        int c = c_[i];
        if (c == 0) continue;
        if (c == 2 || c == -2) return std::string("2*") + (c > 0 ? "+" : "-") + std::to_string(i + 1);
        out += (c > 0 ? "+" : "-") + std::to_string(i + 1);
    }
    return out;
}

Root parse_root(const std::string& text, int p) {
    static const std::regex long_re(R"(\s*2\*([+-])(\d+)\s*)");
    static const std::regex short_re(R"(\s*([+-])(\d+)([+-])(\d+)\s*)");
    std::smatch m;
    std::vector<int> c(p, 0);
    auto idx = [&](const std::string& s) {
        int i = std::stoi(s);
        if (i < 1 || i > p) throw std::invalid_argument("root index out of range: " + text);
        return i - 1;
    };
    if (std::regex_match(text, m, long_re)) {
        c[idx(m[2])] = m[1] == "+" ? 2 : -2;
    } else if (std::regex_match(text, m, short_re)) {
        int i = idx(m[2]), j = idx(m[4]);
        if (i == j) throw std::invalid_argument("bad root: " + text);
        c[i] = m[1] == "+" ? 1 : -1;
        c[j] = m[3] == "+" ? 1 : -1;
    } else {
        throw std::invalid_argument("bad root: " + text);
    }
    return Root(c);
}

std::optional<Root> root_add(const Root& a, const Root& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("rank mismatch");
    std::vector<int> c(a.rank());
    for (int i = 0; i < a.rank(); ++i) c[i] = a.coeffs()[i] + b.coeffs()[i];
    if (!is_root_vector(c)) return std::nullopt;
    return Root(c);
}

std::vector<Root> all_roots(int p) {
    std::set<Root> out;
    auto H = all_half_roots(p);
    for (auto s : H)
        for (auto t : H) {
            if (s == t) continue;
            std::vector<int> c(p, 0);
            c[s.index - 1] += s.sign;
            c[t.index - 1] -= t.sign;
            out.insert(Root(c));
        }
    return {out.begin(), out.end()};
}

SubsetKind classify_subset(const std::vector<HalfRoot>& X, int p) {
    std::set<HalfRoot> set;
    for (auto h : X) {
        if (h.index < 1 || h.index > p || (h.sign != 1 && h.sign != -1))
            throw std::invalid_argument("half root out of range: " + h.str());
        set.insert(h);
    }
    bool has_pair = false, closed = true;
    for (auto h : set) {
        if (set.count(-h)) has_pair = true;
        else closed = false;
    }
    if (!has_pair) return SubsetKind::isotropic;
    return closed ? SubsetKind::symplectic : SubsetKind::neither;
}

SubgroupFrame::SubgroupFrame(int p_, std::vector<HalfRoot> S_, std::vector<HalfRoot> T_)
    : p(p_), S(std::move(S_)), T(std::move(T_)) {
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    std::sort(T.begin(), T.end());
    T.erase(std::unique(T.begin(), T.end()), T.end());
    if (classify_subset(S, p) != SubsetKind::isotropic) throw std::invalid_argument("S is not isotropic");
    if (!T.empty() && classify_subset(T, p) != SubsetKind::symplectic)
        throw std::invalid_argument("T is not symplectic");
    for (auto s : S)
        for (auto t : T)
            if (s.index == t.index) throw std::invalid_argument("±S and T overlap");
}

bool SubgroupFrame::in_S(HalfRoot h) const { return std::binary_search(S.begin(), S.end(), h); }
bool SubgroupFrame::in_T(HalfRoot h) const { return std::binary_search(T.begin(), T.end(), h); }

std::vector<HalfRoot> SubgroupFrame::T_plus() const {
    std::vector<HalfRoot> out;
    for (auto t : T)
        if (t.sign > 0) out.push_back(t);
    return out;
}

std::vector<HalfRoot> parse_half_root_list(const std::string& text) {
    std::vector<HalfRoot> out;
    std::string tok;
    auto flush = [&] {
        // strip whitespace
        std::string t;
        for (char ch : tok)
            if (!isspace(static_cast<unsigned char>(ch))) t += ch;
        tok.clear();
        if (t.empty()) return;
        for (const std::string pm : {"±", "+-", "pm"}) {
            if (t.rfind(pm, 0) == 0) {
                auto h = parse_half_root("+" + t.substr(pm.size()));
                out.push_back(h);
                out.push_back(-h);
                return;
            }
        }
        out.push_back(parse_half_root(t));
    };
    for (char ch : text) {
        if (ch == ',') flush();
        else tok += ch;
    }
    flush();
    return out;
}

std::vector<Root> phi_set(PhiKind kind, const SubgroupFrame& f) {
    std::set<Root> out;
    int p = f.p;
    auto diff = [&](HalfRoot a, HalfRoot b) {  // a - b, padded to rank p
        std::vector<int> c(p, 0);
        c[a.index - 1] += a.sign;
        c[b.index - 1] -= b.sign;
        if (is_root_vector(c)) out.insert(Root(c));
    };
    auto sum = [&](HalfRoot a, HalfRoot b) { diff(a, -b); };
    bool st = kind == PhiKind::P || kind == PhiKind::N;
    bool gl = kind == PhiKind::P || kind == PhiKind::GL;
    bool z = kind == PhiKind::P || kind == PhiKind::N || kind == PhiKind::Z;
    bool sp = kind == PhiKind::P || kind == PhiKind::Sp;
    for (auto s : f.S) {
        if (st)
            for (auto t : f.T) diff(s, t);
        for (auto s2 : f.S) {
            if (gl && s != s2) diff(s, s2);
            if (z) sum(s, s2);
        }
    }
    if (sp)
        for (auto t : f.T)
            for (auto t2 : f.T)
                if (t != t2) diff(t, t2);
    return {out.begin(), out.end()};
}

}  // namespace symp

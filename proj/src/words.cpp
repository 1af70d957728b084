#include "symp/words.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>
#include <unordered_set>

namespace symp {

std::string Letter::str() const {
    return "e(" + root.str() + ")" + (exp < 0 ? "^-1" : "");
}

Word Word::operator*(const Word& o) const {
    Word out = *this;
    out *= o;
    return out;
}

Word& Word::operator*=(const Word& o) {
    letters.insert(letters.end(), o.letters.begin(), o.letters.end());
    return *this;
}

Word Word::inverse() const {
    Word out(p);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(it->inverse());
    return out;
}

std::string Word::str() const {
    std::string out;
    for (size_t i = 0; i < letters.size(); ++i) out += (i ? " " : "") + letters[i].str();
    return out;
}

Word power_word(const Root& a, const mpz_class& x, int p) {
    Word w(p);
    if (!x.fits_slong_p() || abs(x) > 100000000) throw std::invalid_argument("power_word exponent too large");
    long n = x.get_si();
    int e = n < 0 ? -1 : 1;
    for (long i = 0; i < std::labs(n); ++i) w.letters.push_back({a, e});
    return w;
}

Word commutator_word(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

SpMatrix evaluate(const Word& w) {
    SpMatrix m = SpMatrix::identity(w.p);
    for (auto& l : w.letters) m.right_mul(l.root, l.exp);
    return m;
}

Word free_reduce(const Word& w) {
    Word out(w.p);
    for (auto& l : w.letters) {
        if (!out.letters.empty() && out.letters.back() == l.inverse()) out.letters.pop_back();
        else out.letters.push_back(l);
    }
    return out;
}

Word parse_word(const std::string& text, int p) {
    static const std::regex tok_re(R"(e\(([^)]*)\)(?:\^([+-]?1))?)");
    Word w(p);
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        std::smatch m;
        if (!std::regex_match(tok, m, tok_re)) throw std::invalid_argument("bad letter token: " + tok);
        int e = (m[2].matched && m[2].str() == "-1") ? -1 : 1;
        w.letters.push_back({parse_root(m[1].str(), p), e});
    }
    return w;
}

Word apply_move(const Word& w, const HomotopyMove& m, const RelatorSet& active) {
    using K = HomotopyMove::Kind;
    const auto& L = w.letters;
    Word out(w.p);
    switch (m.kind) {
    case K::insert_relator:
        if (m.pos > L.size()) throw std::invalid_argument("insert position out of range");
        if (!active.count(m.relator)) throw std::invalid_argument("inserted word is not an active relator");
        out.letters.assign(L.begin(), L.begin() + m.pos);
        out.letters.insert(out.letters.end(), m.relator.letters.begin(), m.relator.letters.end());
        out.letters.insert(out.letters.end(), L.begin() + m.pos, L.end());
        return out;
    case K::delete_relator: {
        if (m.pos + m.length > L.size()) throw std::invalid_argument("delete range out of bounds");
        Word sub(w.p, {L.begin() + m.pos, L.begin() + m.pos + m.length});
        if (!active.count(sub)) throw std::invalid_argument("deleted subword is not an active relator");
        out.letters.assign(L.begin(), L.begin() + m.pos);
        out.letters.insert(out.letters.end(), L.begin() + m.pos + m.length, L.end());
        return out;
    }
    case K::free_expand:
        if (m.pos > L.size()) throw std::invalid_argument("expand position out of range");
        out.letters.assign(L.begin(), L.begin() + m.pos);
        out.letters.push_back(m.letter.inverse());
        out.letters.push_back(m.letter);
        out.letters.insert(out.letters.end(), L.begin() + m.pos, L.end());
        return out;
    case K::free_contract:
        if (m.pos + 2 > L.size()) throw std::invalid_argument("contract position out of range");
        if (L[m.pos] != L[m.pos + 1].inverse()) throw std::invalid_argument("letters at contract position are not inverse");
        out.letters.assign(L.begin(), L.begin() + m.pos);
        out.letters.insert(out.letters.end(), L.begin() + m.pos + 2, L.end());
        return out;
    }
    throw std::invalid_argument("unknown move");
}

// correction word c with [e_a(x), e_b(y)] c = 1, using the roots a+b, 2a+b, a+2b
static std::optional<Word> commutator_correction(const Root& a, const Root& b, int x, int y, int p) {
    SpMatrix C = commutator(elementary(a, x, p), elementary(b, y, p));
    SpMatrix R = C.inverse();
    Word corr(p);
    std::vector<std::vector<int>> combos = {{1, 1}, {2, 1}, {1, 2}};
    for (auto& ab : combos) {
        std::vector<int> c(p);
        for (int i = 0; i < p; ++i) c[i] = ab[0] * a.coeffs()[i] + ab[1] * b.coeffs()[i];
        if (!is_root_vector(c)) continue;
        Root g(c);
        auto e = elementary_pattern(g, p)[0];
        mpz_class v = R(e.row, e.col) * e.coeff;
        if (v == 0) continue;
        corr *= power_word(g, v, p);
        R = elementary(g, -v, p) * R;
    }
    if (!R.is_identity()) return std::nullopt;
    return corr;
}

RelatorSet relator_set(int p, int xbound) {
    if (p < 1 || xbound < 1) throw std::invalid_argument("relator_set needs p >= 1 and xbound >= 1");
    RelatorSet out;
    auto roots = all_roots(p);
    for (auto& a : roots)
        for (int x = -xbound; x <= xbound; ++x)
            for (int y = -xbound; y <= xbound; ++y) {
                if (x == 0 || y == 0) continue;
                Word r = power_word(a, x, p) * power_word(a, y, p) * power_word(a, x + y, p).inverse();
                out.insert(r);
            }
    for (auto& a : roots)
        for (auto& b : roots) {
            if (a == -b || a == b) continue;
            for (int x = -xbound; x <= xbound; ++x)
                for (int y = -xbound; y <= xbound; ++y) {
                    if (x == 0 || y == 0) continue;
                    auto corr = commutator_correction(a, b, x, y, p);
                    if (!corr) continue;
                    Word r = commutator_word(power_word(a, x, p), power_word(b, y, p)) * *corr;
                    if (evaluate(r).is_identity()) out.insert(r);
                }
        }
    return out;
}

// --- area search over free-reduced words, letters packed as small integers ---

namespace {

using Code = std::u16string;

struct Alphabet {
    std::map<Letter, char16_t> enc;
    explicit Alphabet(int p) {
        char16_t k = 2;
        for (auto& r : all_roots(p)) {
            enc[{r, 1}] = k;
            enc[{r, -1}] = k + 1;
            k += 2;
        }
    }
    Code code(const Word& w) const {
        Code c;
        for (auto& l : w.letters) c.push_back(enc.at(l));
        return c;
    }
};

inline char16_t inv(char16_t c) { return c ^ 1; }

Code reduce(const Code& w) {
    Code out;
    for (char16_t c : w) {
        if (!out.empty() && out.back() == inv(c)) out.pop_back();
        else out.push_back(c);
    }
    return out;
}

Code cyclic_core(Code w) {
    w = reduce(w);
    size_t i = 0, j = w.size();
    while (j - i >= 2 && w[i] == inv(w[j - 1])) ++i, --j;
    return w.substr(i, j - i);
}

Code invert(const Code& w) {
    Code out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inv(*it));
    return out;
}

// reduce(w[:i] + c + w[i:]) for reduced w and c
Code insert_reduce(const Code& w, size_t i, const Code& c) {
    Code out(w.begin(), w.begin() + i);
    for (char16_t x : c) {
        if (!out.empty() && out.back() == inv(x)) out.pop_back();
        else out.push_back(x);
    }
    for (size_t k = i; k < w.size(); ++k) {
        char16_t x = w[k];
        if (!out.empty() && out.back() == inv(x)) out.pop_back();
        else out.push_back(x);
    }
    return out;
}

}  // namespace

AreaResult area_search(const Word& w, const RelatorSet& relators, size_t max_len, size_t max_cost) {
    if (!evaluate(w).is_identity()) throw DomainError("area_search input does not evaluate to the identity");
    Alphabet A(w.p);
    // closure of the relators under inversion and cyclic rotation
    std::unordered_set<Code> closed_set;
    for (auto& r : relators) {
        Code c = cyclic_core(A.code(r));
        if (c.empty()) continue;
        for (Code d : {c, invert(c)})
            for (size_t k = 0; k < d.size(); ++k) closed_set.insert(d.substr(k) + d.substr(0, k));
    }
    std::vector<Code> closed(closed_set.begin(), closed_set.end());
    std::sort(closed.begin(), closed.end());

    AreaResult res;
    Code start = reduce(A.code(w));
    if (start.empty()) {
        res.area = 0;
        return res;
    }
    // a reduced word needs exactly one move iff its cyclic core is a closed relator
    auto one_move = [&](const Code& u) { return closed_set.count(cyclic_core(u)) > 0; };

    std::unordered_set<Code> seen{start};
    std::vector<Code> level{start};
    res.states = 1;
    for (int d = 0; !level.empty(); ++d) {
        for (auto& u : level)
            if (one_move(u)) {
                res.area = d + 1;
                return res;
            }
        std::vector<Code> next;
        for (auto& u : level)
            for (size_t i = 0; i <= u.size(); ++i)
                for (auto& c : closed) {
                    Code v = insert_reduce(u, i, c);
                    if (v.size() > max_len || !seen.insert(v).second) continue;
                    next.push_back(std::move(v));
                    if (++res.states > max_cost) return res;
                }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    return res;
}

}  // namespace symp

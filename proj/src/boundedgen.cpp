#include "symp/boundedgen.hpp"

#include <algorithm>
#include <json.hpp>
#include <set>

namespace symp {

SpMatrix factors_product(const std::vector<Factor>& fs, int p) {
    SpMatrix m = SpMatrix::identity(p);
    for (auto& f : fs) m.right_mul(f.root, f.x);
    return m;
}

bool in_block(const SpMatrix& M, const std::vector<HalfRoot>& T) {
    int p = M.rank();
    std::vector<bool> inT(2 * p, false);
    for (auto h : T) inT[h.pos(p)] = true;
    for (int i = 0; i < 2 * p; ++i)
        for (int j = 0; j < 2 * p; ++j) {
            if (inT[i] && inT[j]) continue;
            if (M(i, j) != (i == j ? 1 : 0)) return false;
        }
    return true;
}

static std::vector<Factor> merge_factors(const std::vector<Factor>& fs) {
    std::vector<Factor> out;
    for (auto& f : fs) {
        if (f.x == 0) continue;
        if (!out.empty() && out.back().root == f.root) {
            out.back().x += f.x;
            if (out.back().x == 0) out.pop_back();
        } else {
            out.push_back(f);
        }
    }
    return out;
}

static void finish(Decomposition& d) {
    d.factors = merge_factors(d.factors);
    d.elementary_count = d.factors.size();
    int p = d.target.rank();
    if (!(factors_product(d.factors, p) == d.target)) throw std::logic_error("decomposition does not reconstruct");
    d.shortcut_length = 0;
    for (auto& f : d.factors)
        d.shortcut_length += p >= 2 ? shortcut(f.root, f.x, p).ladder.size() : mpz_class(abs(f.x)).get_ui();
}

static std::vector<Factor> sl2_raw(const SpMatrix& M, HalfRoot t) {
    int p = M.rank();
    Mat2 a;
    a[0][0] = M.at(t, t);
    a[0][1] = M.at(t, -t);
    a[1][0] = M.at(-t, t);
    a[1][1] = M.at(-t, -t);
    // upper acts as e on (z_t, z_-t) with entry (t,-t), lower with entry (-t,t)
    OrientedRoot up = oriented_root(t, -t, p), lo = oriented_root(-t, t, p);
    std::vector<Factor> out;
    for (auto& f : sl2_factors(a)) {
        const OrientedRoot& o = f.upper ? up : lo;
        out.push_back({o.root, f.k * o.sign});
    }
    return out;
}

Decomposition sl2_decompose(const SpMatrix& M, HalfRoot t) {
    if (!in_block(M, {t, -t})) throw DomainError("matrix is not in the block Sp({+-t})");
    Decomposition d{M, sl2_raw(M, t), 0, 0};
    finish(d);
    return d;
}

mpz_class crt_mix(const std::vector<mpz_class>& ps, const std::vector<mpz_class>& qs) {
    std::set<mpz_class> seen;
    for (auto* v : {&ps, &qs})
        for (auto& x : *v) {
            if (x < 2 || mpz_probab_prime_p(x.get_mpz_t(), 30) == 0) throw std::invalid_argument("crt_mix: " + x.get_str() + " is not prime");
            if (!seen.insert(x).second) throw std::invalid_argument("crt_mix: repeated or shared prime " + x.get_str());
        }
    mpz_class P = 1, Q = 1;
    for (auto& x : ps) P *= x;
    for (auto& x : qs) Q *= x;
    if (P == 1) return Q;
    mpz_class k;
    mpz_invert(k.get_mpz_t(), Q.get_mpz_t(), P.get_mpz_t());
    if (k == 0) k = P;
    return Q * k;
}

std::vector<mpz_class> bezout(const std::vector<mpz_class>& m) {
    size_t n = m.size();
    std::vector<mpz_class> a(n, 0);
    mpz_class g = 0;
    for (size_t i = 0; i < n; ++i) {
        if (m[i] == 0) continue;
        mpz_class ng, u, v;
        mpz_gcdext(ng.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t(), m[i].get_mpz_t());
        for (size_t j = 0; j < i; ++j) a[j] *= u;
        a[i] = v;
        g = ng;
    }
    // shrink with the syzygies (m_j/g, -m_i/g) until nothing improves
    auto cost = [](const mpz_class& x, const mpz_class& y) { return mpz_class(abs(x) + abs(y)); };
    for (int pass = 0; pass < 8; ++pass) {
        bool changed = false;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                if (m[i] == 0 || m[j] == 0) continue;
                mpz_class gij = gcd(m[i], m[j]);
                mpz_class si = m[j] / gij, sj = -m[i] / gij;
                // a_i + k si: try k near -a_i/si
                mpz_class k0;
                mpz_fdiv_q(k0.get_mpz_t(), mpz_class(-a[i]).get_mpz_t(), si.get_mpz_t());
                mpz_class best_k = 0, best = cost(a[i], a[j]);
                for (mpz_class k = k0 - 1; k <= k0 + 2; ++k) {
                    mpz_class c = cost(a[i] + k * si, a[j] + k * sj);
                    if (c < best || (c == best && k != 0 && a[i] + k * si > 0 && a[i] < 0 && abs(a[i] + k * si) == abs(a[i]))) {
                        best = c;
                        best_k = k;
                    }
                }
                if (best_k != 0) {
                    a[i] += best_k * si;
                    a[j] += best_k * sj;
                    changed = true;
                }
            }
        if (!changed) break;
    }
    return a;
}

namespace {

// one peeling pass: records left factors (already inverted, in order) and right factors
struct Peeler {
    SpMatrix M;
    int p;
    std::vector<Factor> front, back;

    // left multiply by the element putting v at entry (r, c)
    void L(HalfRoot r, HalfRoot c, const mpz_class& v) {
        if (v == 0) return;
        OrientedRoot o = oriented_root(r, c, p);
        mpz_class x = v * o.sign;
        M.left_mul(o.root, x);
        front.push_back({o.root, -x});
    }
    void R(HalfRoot r, HalfRoot c, const mpz_class& v) {
        if (v == 0) return;
        OrientedRoot o = oriented_root(r, c, p);
        mpz_class x = v * o.sign;
        M.right_mul(o.root, x);
        back.insert(back.begin(), Factor{o.root, -x});
    }
    mpz_class col(HalfRoot s, HalfRoot t) const { return M.at(s, t); }

    void check(bool ok, const std::string& what) const {
        if (!ok) throw std::logic_error("sp_decompose invariant failed: " + what);
    }

    void peel(const std::vector<HalfRoot>& T, HalfRoot t) {
        std::vector<HalfRoot> rest;  // T minus {+-t}
        for (auto s : T)
            if (s != t && s != -t) rest.push_back(s);

        // Step 1: make the column coordinates over T \ {-t} coprime
        auto gcd_plus = [&] {
            mpz_class g = col(t, t);
            for (auto s : rest) g = gcd(g, col(s, t));
            return mpz_class(abs(g));
        };
        if (gcd_plus() != 1) {
            mpz_class h = 0;
            for (auto s : rest) h = gcd(h, col(s, t));
            if (h == 0) {
                // nothing to mix with yet: copy the -t coordinate into one other slot
                L(rest.front(), -t, 1);
            } else {
                mpz_class a = col(t, t), c = h;
                for (mpz_class g = gcd(c, a); g > 1; g = gcd(c, a)) c /= g;
                c %= h;  // only c mod h matters
                if (c == 0) c = h;
                if (2 * c > h) c -= h;
                L(t, -t, c);
            }
        }
        check(gcd_plus() == 1, "step 1 unimodular projection");

        // Step 2: z_-t coordinate to 1 by Bezout, then z_t coordinate to 1
        std::vector<HalfRoot> idx{t};
        idx.insert(idx.end(), rest.begin(), rest.end());
        std::vector<mpz_class> m;
        for (auto s : idx) m.push_back(col(s, t));
        std::vector<mpz_class> a = bezout(m);
        mpz_class d = 1 - col(-t, t);
        for (size_t i = 1; i < idx.size(); ++i) L(-t, idx[i], a[i] * d);
        mpz_class mt = col(t, t), left = 1 - col(-t, t);
        if (mt == 0) {
            check(left == 0, "step 2 with zero pivot");
        } else {
            check(left % mt == 0, "step 2 divisibility");
            L(-t, t, left / mt);
        }
        check(col(-t, t) == 1, "step 2 z_-t coordinate");
        L(t, -t, 1 - col(t, t));
        check(col(t, t) == 1, "step 2 z_t coordinate");

        // Step 3: clear the t column
        for (auto s : rest) L(s, t, -col(s, t));
        L(-t, t, -col(-t, t));
        for (auto s : T) check(col(s, t) == (s == t ? 1 : 0), "step 3 column");

        // Step 4: clear the t row
        for (auto s : rest) R(t, s, -M.at(t, s));
        R(t, -t, -M.at(t, -t));
        for (auto s : T) check(M.at(t, s) == (s == t ? 1 : 0), "step 4 row");
        check(in_block(M, rest), "step 4 block");
    }
};

}  // namespace

Decomposition sp_decompose(const SpMatrix& M, const SubgroupFrame& frame) {
    const auto& T = frame.T;
    if (M.rank() != frame.p) throw std::invalid_argument("rank mismatch");
    if (T.size() < 2) throw std::invalid_argument("sp_decompose needs #T >= 2");
    if (!is_symplectic(M.matrix()) || !in_block(M, T)) throw DomainError("matrix is not in Sp(T)");
    Peeler pl{M, frame.p, {}, {}};
    std::vector<HalfRoot> cur = T;
    while (cur.size() > 2) {
        HalfRoot t = cur.front().sign > 0 ? cur.front() : -cur.front();
        pl.peel(cur, t);
        std::vector<HalfRoot> next;
        for (auto s : cur)
            if (s.index != t.index) next.push_back(s);
        cur = next;
    }
    HalfRoot t = cur.front().sign > 0 ? cur.front() : -cur.front();
    Decomposition d{M, pl.front, 0, 0};
    for (auto& f : sl2_raw(pl.M, t)) d.factors.push_back(f);
    d.factors.insert(d.factors.end(), pl.back.begin(), pl.back.end());
    finish(d);
    return d;
}

Word factors_word(const std::vector<Factor>& fs, int p) {
    Word w(p);
    for (auto& f : fs) append_shortcut(w, f.root, f.x);
    return w;
}

std::pair<Decomposition, Word> sp_decompose_short(const SpMatrix& M, const SubgroupFrame& frame) {
    if (frame.p < 2) throw UnsupportedRank("shortcuts need p >= 2");
    Decomposition d = sp_decompose(M, frame);
    Word w = factors_word(d.factors, frame.p);
    if (!(evaluate(w) == M)) throw std::logic_error("sp_decompose_short: word does not evaluate to M");
    return {d, w};
}

std::string decomposition_to_json(const Decomposition& d) {
    nlohmann::json j;
    nlohmann::json fs = nlohmann::json::array();
    for (auto& f : d.factors) fs.push_back({{"root", f.root.str()}, {"x", f.x.get_str()}});
    j["factors"] = fs;
    j["elementary_count"] = d.elementary_count;
    j["shortcut_length"] = d.shortcut_length;
    j["norm_inf"] = d.target.norm_inf().get_str();
    return j.dump();
}

}  // namespace symp

#include "symp/shortcuts.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace symp {

namespace {

// a + b*sqrt(D)
struct QF {
    mpq_class a, b;
};

struct Field {
    mpz_class D;

    int sign(const QF& x) const {
        int sa = sgn(x.a), sb = sgn(x.b);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        mpq_class lhs = x.a * x.a, rhs = x.b * x.b * D;
        return lhs > rhs ? sa : sb;
    }
    QF add(const QF& x, const QF& y) const { return {x.a + y.a, x.b + y.b}; }
    QF sub(const QF& x, const QF& y) const { return {x.a - y.a, x.b - y.b}; }
    QF mul(const QF& x, const QF& y) const { return {x.a * y.a + x.b * y.b * D, x.a * y.b + x.b * y.a}; }
    QF abs(const QF& x) const { return sign(x) < 0 ? QF{-x.a, -x.b} : x; }
    bool less(const QF& x, const QF& y) const { return sign(sub(y, x)) > 0; }
    bool abs_less(const QF& x, const QF& y) const { return less(abs(x), abs(y)); }
};

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Mat2 mul2(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

Mat2 inv2(const Mat2& x) {  // det 1
    Mat2 r;
    r[0][0] = x[1][1];
    r[1][1] = x[0][0];
    r[0][1] = -x[0][1];
    r[1][0] = -x[1][0];
    return r;
}

Vec2 apply2(const Mat2& m, const Vec2& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

Mat2 ident2() {
    Mat2 r;
    r[0][0] = 1;
    r[1][1] = 1;
    r[0][1] = 0;
    r[1][0] = 0;
    return r;
}

// everything radix_expand needs for one base and digit bound
struct Expander {
    HyperbolicBase base;
    int bound;
    Field F;
    QF mu, mu_conj;
    QF dmax_plus, dmax_minus;
    std::vector<std::pair<QF, Vec2>> vals_plus, vals_minus;  // sorted digit values of both forms
    static constexpr int L = 1;
    std::map<std::pair<long, long>, std::array<Vec2, 2 * L + 1>> table;  // levels -L..L

    QF form(const Vec2& v, bool conj) const {
        const auto& A = base.A;
        mpz_class t = base.trace();
        mpq_class re = mpq_class(A[1][0] * v[0]) + mpq_class(t, 2) * v[1] - mpq_class(A[0][0] * v[1]);
        mpq_class im(v[1], 2);
        return {re, conj ? -im : im};
    }

    Expander(const HyperbolicBase& b, int db) : base(b), bound(db) {
        mpz_class t = base.trace();
        F.D = t * t - 4;
        mu = {mpq_class(t, 2), mpq_class(1, 2)};
        mu_conj = {mpq_class(t, 2), mpq_class(-1, 2)};
        dmax_plus = dmax_minus = {0, 0};
        for (int x = -bound; x <= bound; ++x)
            for (int y = -bound; y <= bound; ++y) {
                Vec2 r{x, y};
                QF p = form(r, false), m = form(r, true);
                vals_plus.push_back({p, r});
                vals_minus.push_back({m, r});
                if (F.abs_less(dmax_plus, p)) dmax_plus = F.abs(p);
                if (F.abs_less(dmax_minus, m)) dmax_minus = F.abs(m);
            }
        auto cmp = [&](const auto& u, const auto& v) { return F.less(u.first, v.first); };
        std::sort(vals_plus.begin(), vals_plus.end(), cmp);
        std::sort(vals_minus.begin(), vals_minus.end(), cmp);
        build_table();
    }

    void build_table() {
        Mat2 Ap = base.A, Am = inv2(base.A);
        std::vector<Vec2> digs;
        for (int x = -bound; x <= bound; ++x)
            for (int y = -bound; y <= bound; ++y) digs.push_back({x, y});
        std::map<std::pair<long, long>, std::array<int, 3>> cost;
        auto nz = [](const Vec2& r) { return r[0] != 0 || r[1] != 0; };
        for (auto& rm : digs)
            for (auto& r0 : digs)
                for (auto& rp : digs) {
                    Vec2 a = apply2(Am, rm), c = apply2(Ap, rp);
                    Vec2 v{a[0] + r0[0] + c[0], a[1] + r0[1] + c[1]};
                    std::pair<long, long> key{v[0].get_si(), v[1].get_si()};
                    int n = nz(rm) + nz(r0) + nz(rp);
                    int span = (nz(rm) || nz(rp)) ? 1 : 0;
                    int weight = 0;
                    for (auto* r : {&rm, &r0, &rp}) weight += static_cast<int>(mpz_class(abs((*r)[0])).get_si() + mpz_class(abs((*r)[1])).get_si());
                    std::array<int, 3> c3{n, span, weight};
                    auto it = cost.find(key);
                    if (it == cost.end() || c3 < it->second) {
                        cost[key] = c3;
                        table[key] = {rm, r0, rp};
                    }
                }
    }

    // digit whose value is nearest to q
    const Vec2& nearest(const std::vector<std::pair<QF, Vec2>>& vals, const QF& q) const {
        auto it = std::lower_bound(vals.begin(), vals.end(), q,
                                   [&](const auto& e, const QF& v) { return F.less(e.first, v); });
        if (it == vals.end()) return vals.back().second;
        if (it == vals.begin()) return it->second;
        auto prev = it - 1;
        return F.less(F.abs(F.sub(q, prev->first)), F.abs(F.sub(it->first, q))) ? prev->second : it->second;
    }

    QF pow(const QF& x, int n) const {
        QF r{1, 0};
        for (int i = 0; i < n; ++i) r = F.mul(r, x);
        return r;
    }

    bool lookup(const Vec2& v, std::map<int, Vec2>& out) const {
        if (!v[0].fits_slong_p() || !v[1].fits_slong_p()) return false;
        auto it = table.find({v[0].get_si(), v[1].get_si()});
        if (it == table.end()) return false;
        for (int k = 0; k < 2 * L + 1; ++k) {
            auto& r = it->second[k];
            if (r[0] != 0 || r[1] != 0) {
                auto& slot = out[k - L];
                slot[0] += r[0];
                slot[1] += r[1];
            }
        }
        return true;
    }

    RadixExpansion expand(const Vec2& v) const {
        std::map<int, Vec2> digits;
        if (!lookup(v, digits)) {
            Vec2 res = v;
            // expanding side, top-down over levels n..L+1
            QF xi = form(res, false);
            int n = L + 1;
            QF scale = pow(mu, n);
            while (F.less(F.mul(scale, dmax_plus), F.abs(xi))) {
                ++n;
                scale = F.mul(scale, mu);
            }
            std::vector<Mat2> pw{ident2()};
            for (int i = 1; i <= n; ++i) pw.push_back(mul2(pw.back(), base.A));
            std::vector<QF> cp{QF{1, 0}};
            for (int i = 1; i <= n; ++i) cp.push_back(F.mul(cp.back(), mu_conj));
            for (int i = n; i > L; --i) {
                QF q = F.mul(form(res, false), cp[i]);
                const Vec2& r = nearest(vals_plus, q);
                if (r[0] == 0 && r[1] == 0) continue;
                Vec2 ar = apply2(pw[i], r);
                res[0] -= ar[0];
                res[1] -= ar[1];
                digits[i] = r;
            }
            // contracting side, levels -m..-(L+1)
            QF eta = form(res, true);
            int m = L + 1;
            scale = pow(mu, m);
            while (F.less(F.mul(scale, dmax_minus), F.abs(eta))) {
                ++m;
                scale = F.mul(scale, mu);
            }
            Mat2 Ainv = inv2(base.A);
            std::vector<Mat2> nw{ident2()};
            for (int j = 1; j <= m; ++j) nw.push_back(mul2(nw.back(), Ainv));
            cp.assign(1, QF{1, 0});
            for (int j = 1; j <= m; ++j) cp.push_back(F.mul(cp.back(), mu_conj));
            for (int j = m; j > L; --j) {
                QF q = F.mul(form(res, true), cp[j]);
                const Vec2& r = nearest(vals_minus, q);
                if (r[0] == 0 && r[1] == 0) continue;
                Vec2 ar = apply2(nw[j], r);
                res[0] -= ar[0];
                res[1] -= ar[1];
                digits[-j] = r;
            }
            if (!lookup(res, digits))
                throw std::runtime_error("radix_expand: remainder (" + res[0].get_str() + "," + res[1].get_str() +
                                         ") not covered by the finishing table");
        }
        RadixExpansion e;
        for (auto it = digits.begin(); it != digits.end();)
            if (it->second[0] == 0 && it->second[1] == 0) it = digits.erase(it);
            else ++it;
        if (digits.empty()) return e;
        int lo = digits.begin()->first, hi = digits.rbegin()->first;
        e.low = lo;
        for (int i = lo; i <= hi; ++i) {
            auto it = digits.find(i);
            e.digits.push_back(it == digits.end() ? Vec2{0, 0} : it->second);
        }
        for (auto& r : e.digits)
            if (abs(r[0]) > bound || abs(r[1]) > bound) throw std::logic_error("digit out of bound");
        return e;
    }
};

std::mutex expander_mutex;

const Expander& expander_for(const HyperbolicBase& base, int bound) {
    static std::map<std::tuple<std::string, int>, std::unique_ptr<Expander>> cache;
    std::string key;
    for (auto& row : base.A)
        for (auto& x : row) key += x.get_str() + ",";
    std::lock_guard<std::mutex> g(expander_mutex);
    auto& slot = cache[{key, bound}];
    if (!slot) slot = std::make_unique<Expander>(base, bound);
    return *slot;
}

}  // namespace

HyperbolicBase::HyperbolicBase() {
    A[0][0] = 2;
    A[0][1] = 1;
    A[1][0] = 1;
    A[1][1] = 1;
}

HyperbolicBase::HyperbolicBase(const Mat2& a) : A(a) {
    if (A[0][0] * A[1][1] - A[0][1] * A[1][0] != 1) throw std::invalid_argument("hyperbolic base needs det 1");
    if (trace() <= 2) throw std::invalid_argument("hyperbolic base needs trace > 2");
}

RadixExpansion radix_expand(const Vec2& v, const HyperbolicBase& base, int digit_bound) {
    if (digit_bound < 2) throw std::invalid_argument("digit_bound must be at least 2");
    RadixExpansion e = expander_for(base, digit_bound).expand(v);
    if (radix_reconstruct(e, base) != v) throw std::logic_error("radix_expand: reconstruction mismatch");
    return e;
}

Vec2 radix_reconstruct(const RadixExpansion& e, const HyperbolicBase& base) {
    Vec2 acc{0, 0};
    // Horner from the top level down, then shift by A^low
    for (auto it = e.digits.rbegin(); it != e.digits.rend(); ++it) {
        acc = apply2(base.A, acc);
        acc[0] += (*it)[0];
        acc[1] += (*it)[1];
    }
    Mat2 shift = e.low >= 0 ? base.A : inv2(base.A);
    for (int i = 0; i < std::abs(e.low); ++i) acc = apply2(shift, acc);
    return acc;
}

bool lambda_pow_le(const HyperbolicBase& base, int k, const mpz_class& X) {
    Field F;
    mpz_class t = base.trace();
    F.D = t * t - 4;
    QF mu{mpq_class(t, 2), mpq_class(1, 2)}, r{1, 0};
    for (int i = 0; i < k; ++i) r = F.mul(r, mu);
    return F.sign(F.sub(QF{mpq_class(X), 0}, r)) >= 0;
}

std::vector<Sl2Factor> sl2_factors(const Mat2& M0) {
    if (M0[0][0] * M0[1][1] - M0[0][1] * M0[1][0] != 1) throw DomainError("sl2_factors needs determinant 1");
    Mat2 m = M0;
    std::vector<Sl2Factor> ops;  // left multiplications, in order
    auto U = [&](const mpz_class& k) {
        if (k == 0) return;
        for (int j = 0; j < 2; ++j) m[0][j] += k * m[1][j];
        ops.push_back({true, k});
    };
    auto Lo = [&](const mpz_class& k) {
        if (k == 0) return;
        for (int j = 0; j < 2; ++j) m[1][j] += k * m[0][j];
        ops.push_back({false, k});
    };
    while (m[1][0] != 0) {
        if (m[0][0] == 0) U(1);
        Lo(-fdiv(m[1][0], m[0][0]));
        if (m[1][0] == 0) break;
        U(-fdiv(m[0][0], m[1][0]));
    }
    if (m[0][0] == -1) {
        // -I = (U(1) L(-1) U(1))^2
        for (int r = 0; r < 2; ++r) {
            U(1);
            Lo(-1);
            U(1);
        }
    }
    U(-m[0][1]);
    // M = O1^-1 ... Ok^-1
    std::vector<Sl2Factor> out;
    for (auto& o : ops) {
        Sl2Factor f{o.upper, -o.k};
        if (!out.empty() && out.back().upper == f.upper) {
            out.back().k += f.k;
            if (out.back().k == 0) out.pop_back();
        } else {
            out.push_back(f);
        }
    }
    return out;
}

Mat2 sl2_product(const std::vector<Sl2Factor>& fs) {
    Mat2 m = ident2();
    for (auto& f : fs) {
        Mat2 e = ident2();
        (f.upper ? e[0][1] : e[1][0]) = f.k;
        m = mul2(m, e);
    }
    return m;
}

std::string variant_name(ShortcutVariant v) {
    switch (v) {
    case ShortcutVariant::plain: return "plain";
    case ShortcutVariant::gl_short: return "short_root";
    case ShortcutVariant::special_short: return "special_short";
    case ShortcutVariant::long_gl: return "long_root";
    case ShortcutVariant::long_special: return "special_long";
    case ShortcutVariant::tensor: return "tensor";
    }
    return "?";
}

namespace {

using Oriented = OrientedRoot;
Oriented oriented(HalfRoot r, HalfRoot c, int p) { return oriented_root(r, c, p); }

Word word_of_block(const std::vector<Sl2Factor>& fs, const Oriented& up, const Oriented& lo, int p) {
    Word w(p);
    for (auto& f : fs) {
        const Oriented& o = f.upper ? up : lo;
        w *= power_word(o.root, f.k * o.sign, p);
    }
    return w;
}

Word power_of(const Word& d, const Word& dinv, int n) {
    Word w(d.p);
    for (int i = 0; i < std::abs(n); ++i) w *= (n > 0 ? d : dinv);
    return w;
}

// D^low g(r_0) D g(r_1) ... D g(r_k) D^-(low+k)
Word ladder(const RadixExpansion& e, const Word& D, const Oriented& r1, const Oriented& r2, int p) {
    Word Dinv = D.inverse();
    Word w = power_of(D, Dinv, e.low);
    for (size_t i = 0; i < e.digits.size(); ++i) {
        if (i) w *= D;
        w *= power_word(r1.root, e.digits[i][0] * r1.sign, p);
        w *= power_word(r2.root, e.digits[i][1] * r2.sign, p);
    }
    if (!e.digits.empty()) w *= power_of(D, Dinv, -(e.low + static_cast<int>(e.digits.size()) - 1));
    return free_reduce(w);
}

void require_short(const Root& a, int p) {
    if (a.rank() != p) throw std::invalid_argument("root rank mismatch");
    if (a.is_long()) throw std::invalid_argument("short-root shortcut given a long root");
}

// special ladder without the central correction, for the root s-t with y at entry (s,t);
// evaluates to that element times e_2s(c)
Word special_raw(HalfRoot s, HalfRoot t, const mpz_class& y, int p, const HyperbolicBase& base, RadixExpansion& digits) {
    if (y == 0) return Word(p);
    // conjugation by X multiplies the z_{+-t} coordinates by X^-T, so X is A^-T on the block
    Mat2 AinvT = inv2(base.A);
    std::swap(AinvT[0][1], AinvT[1][0]);
    Word X = word_of_block(sl2_factors(AinvT), oriented(t, -t, p), oriented(-t, t, p), p);
    digits = radix_expand({y, 0}, base);
    return ladder(digits, X, oriented(s, t, p), oriented(s, -t, p), p);
}

}  // namespace

ShortcutPlan shortcut_gl(const Root& a, const mpz_class& x, int p, const HyperbolicBase& base) {
    require_short(a, p);
    if (p < 3) throw UnsupportedRank("GL-block shortcut needs p >= 3");
    ShortcutPlan plan{a, x, ShortcutVariant::gl_short, {}, Word(p)};
    if (x == 0) return plan;
    HalfRoot s = a.s(), t = a.t();
    int aux = 1;
    while (aux == s.index || aux == t.index) ++aux;
    HalfRoot u{1, aux};
    // d acts as A on (z_s, z_u)
    Word D = word_of_block(sl2_factors(base.A), oriented(s, u, p), oriented(u, s, p), p);
    plan.digits = radix_expand({x, 0}, base);
    plan.ladder = ladder(plan.digits, D, oriented(s, t, p), oriented(u, t, p), p);
    return plan;
}

ShortcutPlan shortcut_special(const Root& a, const mpz_class& x, int p, const HyperbolicBase& base) {
    require_short(a, p);
    if (p < 2) throw UnsupportedRank("shortcuts need p >= 2");
    ShortcutPlan plan{a, x, ShortcutVariant::special_short, {}, Word(p)};
    if (x == 0) return plan;
    HalfRoot s = a.s();
    plan.ladder = special_raw(s, a.t(), x, p, base, plan.digits);
    SpMatrix M = evaluate(plan.ladder);
    M.right_mul(a, -x);
    Root l = Root::long_root(s, p);
    mpz_class c = M.at(s, -s);
    if (!(M == elementary(l, c, p))) throw std::logic_error("special shortcut: error term is not central");
    if (c != 0) plan.ladder *= shortcut_long(l, -c, p, false, base).ladder;
    return plan;
}

ShortcutPlan shortcut_long(const Root& a, const mpz_class& x, int p, bool use_gl, const HyperbolicBase& base) {
    if (a.rank() != p) throw std::invalid_argument("root rank mismatch");
    if (!a.is_long()) throw std::invalid_argument("long-root shortcut given a short root");
    if (p < 2) throw UnsupportedRank("shortcuts need p >= 2");
    if (use_gl && p < 3) throw UnsupportedRank("GL-block long shortcut needs p >= 3");
    ShortcutPlan plan{a, x, use_gl ? ShortcutVariant::long_gl : ShortcutVariant::long_special, {}, Word(p)};
    if (x == 0) return plan;
    HalfRoot s = a.s();
    HalfRoot t{1, s.index == 1 ? 2 : 1};
    Root beta = Root::diff(s, t, p), gamma = Root::diff(s, -t, p);
    SpMatrix C = commutator(elementary(beta, 1, p), elementary(gamma, 1, p));
    mpz_class K = C.at(s, -s);
    if (!(C == elementary(a, K, p)) || abs(K) != 2) throw std::logic_error("unexpected commutator constant");
    mpz_class h = fdiv(x, 2);
    if (K < 0) h = -h;
    mpz_class r = x - K * h;
    if (h != 0) {
        Word inner(p);
        if (use_gl) {
            ShortcutPlan sp = shortcut_gl(beta, h, p, base);
            plan.digits = sp.digits;
            inner = sp.ladder;
        } else {
            // keep the central error on 2s, which commutes with e_gamma
            inner = special_raw(s, t, h * pattern_coeff(beta, s, t, p), p, base, plan.digits);
        }
        Word g(p, {{gamma, 1}});
        plan.ladder = commutator_word(inner, g);
    }
    plan.ladder *= power_word(a, r, p);
    plan.ladder = free_reduce(plan.ladder);
    return plan;
}

ShortcutPlan shortcut(const Root& a, const mpz_class& x, int p) {
    if (p < 2) throw UnsupportedRank("shortcuts need p >= 2");
    ShortcutPlan plan;
    if (a.is_long()) plan = shortcut_long(a, x, p, p >= 3);
    else plan = p >= 3 ? shortcut_gl(a, x, p) : shortcut_special(a, x, p);
    if (abs(x) <= plan.ladder.size()) {
        plan = ShortcutPlan{a, x, ShortcutVariant::plain, {}, power_word(a, x, p)};
    }
    return plan;
}

void append_shortcut(Word& w, const Root& a, const mpz_class& x) {
    if (x == 0) return;
    w *= shortcut(a, x, w.p).ladder;
}

ShortcutPlan shortcut_tensor(const TensorElem& V) {
    int p = V.frame.p;
    ShortcutPlan plan;
    plan.variant = ShortcutVariant::tensor;
    plan.ladder = Word(p);
    for (auto& [k, x] : V.coeffs) {
        Root a = Root::diff(k.first, k.second, p);
        append_shortcut(plan.ladder, a, x * pattern_coeff(a, k.first, k.second, p));
    }
    // the pairwise product differs from u_of(V) by an element of Z_S
    SpMatrix C = u_of_pairs(V).inverse() * u_of(V);
    SpMatrix check = SpMatrix::identity(p);
    for (auto& g : phi_set(PhiKind::Z, V.frame)) {
        auto e = elementary_pattern(g, p)[0];
        mpz_class y = C(e.row, e.col) * e.coeff;
        if (y == 0) continue;
        check.right_mul(g, y);
        append_shortcut(plan.ladder, g, y);
    }
    if (!(check == C)) throw std::logic_error("shortcut_tensor: correction is not in Z_S");
    return plan;
}

std::vector<LengthRow> length_profile(const Root& a, int p, const std::vector<mpz_class>& xs) {
    std::vector<LengthRow> rows;
    for (auto& x : xs) {
        size_t len = shortcut(a, x, p).ladder.size();
        mpz_class ax = abs(x) + 2;
        double lg = static_cast<double>(mpz_sizeinbase(ax.get_mpz_t(), 2) - 1) +
                    std::log2(mpf_class(ax).get_d() / std::ldexp(1.0, static_cast<int>(mpz_sizeinbase(ax.get_mpz_t(), 2) - 1)));
        rows.push_back({x, len, len / lg});
    }
    return rows;
}

std::string plan_to_json(const ShortcutPlan& plan) {
    nlohmann::json j;
    if (plan.variant != ShortcutVariant::tensor) {
        j["root"] = plan.root.str();
        j["x"] = plan.x.get_str();
    }
    j["variant"] = variant_name(plan.variant);
    j["low"] = plan.digits.low;
    nlohmann::json d = nlohmann::json::array();
    for (auto& r : plan.digits.digits) d.push_back({r[0].get_si(), r[1].get_si()});
    j["digits"] = d;
    j["length"] = plan.ladder.size();
    return j.dump();
}

}  // namespace symp

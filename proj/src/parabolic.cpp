#include "symp/parabolic.hpp"

#include <json.hpp>

namespace symp {

bool parabolic_membership(const SpMatrix& M, const SubgroupFrame& f) {
    int p = f.p;
    if (M.rank() != p) return false;
    for (auto h : all_half_roots(p)) {
        bool inS = f.in_S(h);
        bool other = !inS && !f.in_S(-h) && !f.in_T(h);
        if (!inS && !other) continue;
        for (auto r : all_half_roots(p)) {
            const mpz_class& v = M.at(r, h);
            if (inS && v != 0 && !f.in_S(r)) return false;
            if (other && v != (r == h ? 1 : 0)) return false;
        }
    }
    return true;
}

static SpMatrix block_only(const SpMatrix& M, const std::vector<HalfRoot>& X) {
    int p = M.rank();
    IntMatrix m = IntMatrix::identity(2 * p);
    for (auto a : X)
        for (auto b : X) m(a.pos(p), b.pos(p)) = M.at(a, b);
    return SpMatrix::from_matrix(std::move(m));
}

// the GL(S) element whose S block is A, completed on -S by the symplectic condition
static SpMatrix gl_from_S_block(const SpMatrix& M, const SubgroupFrame& f) {
    int p = f.p, k = static_cast<int>(f.S.size());
    RatMatrix A(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) A(i, j) = M.at(f.S[i], f.S[j]);
    // inverse by Gauss-Jordan over Q
    RatMatrix inv = RatMatrix::identity(k), a = A;
    for (int c = 0; c < k; ++c) {
        int piv = c;
        while (piv < k && a(piv, c) == 0) ++piv;
        if (piv == k) throw DomainError("S block is singular");
        for (int j = 0; j < k; ++j) {
            std::swap(a(c, j), a(piv, j));
            std::swap(inv(c, j), inv(piv, j));
        }
        mpq_class d = a(c, c);
        for (int j = 0; j < k; ++j) a(c, j) /= d, inv(c, j) /= d;
        for (int r = 0; r < k; ++r) {
            if (r == c || a(r, c) == 0) continue;
            mpq_class q = a(r, c);
            for (int j = 0; j < k; ++j) a(r, j) -= q * a(c, j), inv(r, j) -= q * inv(c, j);
        }
    }
    auto sigma = [](HalfRoot h) { return h.sign > 0 ? -1 : 1; };
    IntMatrix m = IntMatrix::identity(2 * p);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            HalfRoot si = f.S[i], sj = f.S[j];
            m(si.pos(p), sj.pos(p)) = M.at(si, sj);
            // B_{-a,-s'} = sigma(-a) (A^-T)_{a s'} sigma(-s')
            mpq_class b = inv(j, i) * sigma(-si) * sigma(-sj);
            if (b.get_den() != 1) throw DomainError("S block is not unimodular");
            m((-si).pos(p), (-sj).pos(p)) = b.get_num();
        }
    return SpMatrix::from_matrix(std::move(m));
}

BlockSplit project_blocks(const SpMatrix& M, const SubgroupFrame& f) {
    if (!parabolic_membership(M, f)) throw DomainError("matrix is not in P_{S,T}");
    SpMatrix d = gl_from_S_block(M, f);
    SpMatrix r = d.inverse() * M;
    SpMatrix e = block_only(r, f.T);
    SpMatrix n = e.inverse() * r;
    if (!in_N(n, f)) throw std::logic_error("project_blocks: remainder is not in N_{S,T}");
    TensorElem V = ab_of(n, f);
    SymElem q = uz_inverse(u_of(V).inverse() * n, f);
    BlockSplit b{d, e, V, q};
    if (!(reassemble(b) == M)) throw std::logic_error("project_blocks: reassembly mismatch");
    return b;
}

SpMatrix reassemble(const BlockSplit& b) { return b.gl_part * b.sp_part * u_of(b.n_tensor) * uz_of(b.n_sym); }

std::vector<Factor> gl_factors(const SpMatrix& G0, const SubgroupFrame& f) {
    int p = f.p, k = static_cast<int>(f.S.size());
    SpMatrix G = G0;
    std::vector<Factor> inv_ops;  // G0 = product of these
    auto row_add = [&](int i, int j, const mpz_class& c) {  // row S[i] += c row S[j]
        if (c == 0) return;
        OrientedRoot o = oriented_root(f.S[i], f.S[j], p);
        mpz_class x = c * o.sign;
        G.left_mul(o.root, x);
        inv_ops.push_back({o.root, -x});
    };
    auto A = [&](int i, int j) -> const mpz_class& { return G.at(f.S[i], f.S[j]); };
    for (int c = 0; c < k; ++c) {
        for (;;) {
            int best = -1;
            for (int r = c; r < k; ++r)
                if (A(r, c) != 0 && (best < 0 || abs(A(r, c)) < abs(A(best, c)))) best = r;
            if (best < 0) throw DomainError("GL block is singular");
            bool done = true;
            for (int r = c; r < k; ++r) {
                if (r == best || A(r, c) == 0) continue;
                mpz_class q = A(r, c) / A(best, c);  // truncating
                row_add(r, best, -q);
                if (A(r, c) != 0) done = false;
            }
            if (done) {
                if (best != c) {
                    row_add(c, best, 1);
                    row_add(best, c, -1);
                }
                break;
            }
        }
    }
    for (int c = k - 1; c >= 0; --c)
        for (int r = 0; r < c; ++r) row_add(r, c, -A(r, c) * A(c, c));  // A(c,c) = +-1
    // -1 on {+-s}: (U(1) L(-1) U(1))^2 with U at (s,-s), L at (-s,s)
    for (int c = 0; c < k; ++c) {
        if (A(c, c) == 1) continue;
        HalfRoot s = f.S[c];
        OrientedRoot U = oriented_root(s, -s, p), L = oriented_root(-s, s, p);
        for (int r = 0; r < 2; ++r)
            for (auto [o, v] : {std::pair{U, 1}, std::pair{L, -1}, std::pair{U, 1}}) {
                G.left_mul(o.root, v * o.sign);
                inv_ops.push_back({o.root, -v * o.sign});
            }
    }
    if (!G.is_identity()) throw std::logic_error("gl_factors: reduction did not reach the identity");
    // G0 = inv(op_1) inv(op_2) ... : ops were applied on the left in order
    if (!(factors_product(inv_ops, p) == G0)) throw std::logic_error("gl_factors: reconstruction mismatch");
    return inv_ops;
}

std::vector<Factor> n_factors(const SpMatrix& n, const SubgroupFrame& f) {
    int p = f.p;
    TensorElem V = ab_of(n, f);
    auto roots = phi_set(PhiKind::N, f);
    auto Z = phi_set(PhiKind::Z, f);
    auto is_Z = [&](const Root& a) { return std::find(Z.begin(), Z.end(), a) != Z.end(); };
    std::map<Root, mpz_class> x;
    for (auto& [k, v] : V.coeffs) {
        OrientedRoot o = oriented_root(k.first, k.second, p);
        x[o.root] += v * o.sign;
    }
    SpMatrix P = SpMatrix::identity(p);
    for (auto& a : roots)
        if (!is_Z(a) && x.count(a)) P.right_mul(a, x[a]);
    SpMatrix C = P.inverse() * n;
    if (!in_Z(C, f)) throw std::logic_error("n_factors: correction is not central");
    for (auto& a : Z) {
        auto e = elementary_pattern(a, p)[0];
        x[a] = C(e.row, e.col) * e.coeff;
    }
    std::vector<Factor> out;
    for (auto& a : roots)
        if (x.count(a) && x[a] != 0) out.push_back({a, x[a]});
    if (!(factors_product(out, p) == n)) throw std::logic_error("n_factors: product mismatch");
    return out;
}

static void append_any(Word& w, const Factor& fa) {
    if (w.p >= 2) append_shortcut(w, fa.root, fa.x);
    else w *= power_word(fa.root, fa.x, w.p);
}

OmegaResult omega_normal_form(const SpMatrix& M, const SubgroupFrame& f) {
    int p = f.p;
    BlockSplit b = project_blocks(M, f);
    OmegaResult r{Word(p), Word(p), Word(p), Word(p), b};
    for (auto& fa : gl_factors(b.gl_part, f)) append_any(r.d, fa);
    if (!f.T.empty() && !b.sp_part.is_identity()) {
        SubgroupFrame tf(p, {}, f.T);
        if (p >= 2) r.e = sp_decompose_short(b.sp_part, tf).second;
        else
            for (auto& fa : sp_decompose(b.sp_part, tf).factors) append_any(r.e, fa);
    }
    SpMatrix n = (b.gl_part * b.sp_part).inverse() * M;
    for (auto& fa : n_factors(n, f)) append_any(r.n, fa);
    r.word = r.d * r.e * r.n;
    if (!(evaluate(r.word) == M)) throw std::logic_error("omega_normal_form: word does not evaluate to M");
    return r;
}

std::string omega_report_json(const OmegaResult& r) {
    nlohmann::json j;
    j["length"] = r.word.size();
    j["length_d"] = r.d.size();
    j["length_e"] = r.e.size();
    j["length_n"] = r.n.size();
    j["gl_part"] = nlohmann::json::parse(format_matrix_json(r.split.gl_part.matrix()));
    j["sp_part"] = nlohmann::json::parse(format_matrix_json(r.split.sp_part.matrix()));
    j["n_tensor"] = nlohmann::json::parse(tensor_to_json(r.split.n_tensor));
    j["n_sym"] = nlohmann::json::parse(sym_to_json(r.split.n_sym));
    j["gl_length_bound"] = "informational";
    return j.dump();
}

}  // namespace symp

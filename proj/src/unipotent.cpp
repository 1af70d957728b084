#include "symp/unipotent.hpp"

#include <json.hpp>

namespace symp {

void TensorElem::add(HalfRoot s, HalfRoot t, const mpz_class& x) {
    if (!frame.in_S(s) || !frame.in_T(t)) throw std::invalid_argument("tensor key outside S x T");
    auto& c = coeffs[{s, t}];
    c += x;
    if (c == 0) coeffs.erase({s, t});
}

mpz_class TensorElem::get(HalfRoot s, HalfRoot t) const {
    auto it = coeffs.find({s, t});
    return it == coeffs.end() ? mpz_class(0) : it->second;
}

bool TensorElem::is_zero() const { return coeffs.empty(); }

TensorElem TensorElem::operator-() const {
    TensorElem out = *this;
    for (auto& [k, v] : out.coeffs) v = -v;
    return out;
}

TensorElem TensorElem::operator+(const TensorElem& o) const {
    TensorElem out = *this;
    for (auto& [k, v] : o.coeffs) out.add(k.first, k.second, v);
    return out;
}

bool TensorElem::operator==(const TensorElem& o) const { return coeffs == o.coeffs; }

Vec TensorElem::w_of(HalfRoot s) const {
    Vec w(2 * frame.p);
    for (auto& [k, v] : coeffs)
        if (k.first == s) w[k.second.pos(frame.p)] += v;
    return w;
}

static std::pair<HalfRoot, HalfRoot> sym_key(HalfRoot a, HalfRoot b) {
    return a <= b ? std::pair{a, b} : std::pair{b, a};
}

void SymElem::add(HalfRoot s, HalfRoot s2, const mpq_class& x) {
    if (!frame.in_S(s) || !frame.in_S(s2)) throw std::invalid_argument("sym key outside S");
    auto k = sym_key(s, s2);
    mpq_class y = x;
    y.canonicalize();
    auto& c = coeffs[k];
    c += y;
    if (c == 0) coeffs.erase(k);
}

mpq_class SymElem::get(HalfRoot s, HalfRoot s2) const {
    auto it = coeffs.find(sym_key(s, s2));
    return it == coeffs.end() ? mpq_class(0) : it->second;
}

bool SymElem::is_zero() const { return coeffs.empty(); }

SymElem SymElem::operator-() const {
    SymElem out = *this;
    for (auto& [k, v] : out.coeffs) v = -v;
    return out;
}

bool SymElem::operator==(const SymElem& o) const { return coeffs == o.coeffs; }

Vec basis_vec(HalfRoot h, int p) {
    Vec v(2 * p);
    v[h.pos(p)] = 1;
    return v;
}

// (J0 v)_i: J0 z_h = sigma(h) z_{-h}
static Vec apply_j0(const Vec& v) {
    int p = static_cast<int>(v.size()) / 2;
    Vec out(2 * p);
    for (int i = 0; i < p; ++i) {
        out[i] = v[p + i];
        out[p + i] = -v[i];
    }
    return out;
}

mpz_class omega(const Vec& v, const Vec& w) {
    Vec jw = apply_j0(w);
    mpz_class s = 0;
    for (size_t i = 0; i < v.size(); ++i) s += v[i] * jw[i];
    return s;
}

SpMatrix u_simple(const Vec& v, const Vec& w) {
    int n = static_cast<int>(v.size());
    // J0 w v^T J0 = (J0 w)(J0^T v)^T * (-1)... v^T J0 = -(J0 v)^T
    Vec jw = apply_j0(w), jv = apply_j0(v);
    IntMatrix m = IntMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (v[i] != 0 && w[j] != 0) m(i, j) += v[i] * w[j];
            if (jw[i] != 0 && jv[j] != 0) m(i, j) -= jw[i] * jv[j];
        }
    return SpMatrix::trusted(std::move(m));
}

SpMatrix u_of(const TensorElem& V) {
    int p = V.frame.p;
    SpMatrix M = SpMatrix::identity(p);
    for (auto s : V.frame.S) {
        Vec w = V.w_of(s);
        bool nz = false;
        for (auto& x : w) nz = nz || x != 0;
        if (nz) M = M * u_simple(basis_vec(s, p), w);
    }
    return M;
}

SpMatrix u_of_pairs(const TensorElem& V) {
    int p = V.frame.p;
    SpMatrix M = SpMatrix::identity(p);
    for (auto& [k, x] : V.coeffs) {
        Root a = Root::diff(k.first, k.second, p);
        M.right_mul(a, x * pattern_coeff(a, k.first, k.second, p));
    }
    return M;
}

SpMatrix uz_pair(const Vec& v, const Vec& v2) {
    int n = static_cast<int>(v.size());
    // (v2 v^T + v v2^T) J0 ; row vector x^T J0 = -(J0 x)^T
    Vec jv = apply_j0(v), jv2 = apply_j0(v2);
    IntMatrix m = IntMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) -= v2[i] * jv[j] + v[i] * jv2[j];
    return SpMatrix::trusted(std::move(m));
}

RatMatrix uz_rat(const SymElem& q) {
    int p = q.frame.p, n = 2 * p;
    RatMatrix m = RatMatrix::identity(n);
    for (auto& [k, c] : q.coeffs) {
        auto [a, b] = k;
        // (z_b z_a^T + z_a z_b^T) J0, and z_a^T J0 = -sigma... = entry at column pos(-a)
        // z_a^T J0 = (J0^T z_a)^T = -(J0 z_a)^T; J0 z_a = -z_{-a} for a = +[i], +z_{-a} for a = -[i]
        int sa = a.sign > 0 ? 1 : -1, sb = b.sign > 0 ? 1 : -1;
        m(b.pos(p), (-a).pos(p)) += c * sa;
        m(a.pos(p), (-b).pos(p)) += c * sb;
    }
    return m;
}

SpMatrix uz_of(const SymElem& q) {
    RatMatrix r = uz_rat(q);
    IntMatrix m(r.rows(), r.cols());
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) {
            if (r(i, j).get_den() != 1) throw std::invalid_argument("u_Z(q) is not integral");
            m(i, j) = r(i, j).get_num();
        }
    return SpMatrix::trusted(std::move(m));
}

static bool is_member_of_S_pos(const SubgroupFrame& f, int pos) {
    return f.in_S(half_root_at(pos, f.p));
}

bool in_Z(const SpMatrix& M, const SubgroupFrame& f) {
    int p = f.p;
    if (M.rank() != p) return false;
    for (int i = 0; i < 2 * p; ++i)
        for (int j = 0; j < 2 * p; ++j) {
            mpz_class d = M(i, j) - (i == j ? 1 : 0);
            if (d == 0) continue;
            if (!is_member_of_S_pos(f, i)) return false;
            HalfRoot hj = half_root_at(j, p);
            if (!f.in_S(-hj)) return false;
        }
    return is_symplectic(M.matrix());
}

static TensorElem read_ab(const SpMatrix& M, const SubgroupFrame& f) {
    TensorElem V(f);
    for (auto s : f.S)
        for (auto t : f.T) {
            const mpz_class& x = M.at(s, t);
            if (x != 0) V.add(s, t, x);
        }
    return V;
}

bool in_N(const SpMatrix& M, const SubgroupFrame& f) {
    if (M.rank() != f.p) return false;
    TensorElem V = read_ab(M, f);
    return in_Z(u_of(V).inverse() * M, f);
}

TensorElem ab_of(const SpMatrix& M, const SubgroupFrame& f) {
    if (!in_N(M, f)) throw DomainError("matrix is not in N_{S,T}");
    return read_ab(M, f);
}

SymElem uz_inverse(const SpMatrix& M, const SubgroupFrame& f) {
    if (!in_Z(M, f)) throw DomainError("matrix is not in Z_S");
    int p = f.p;
    SymElem q(f);
    for (auto s : f.S) {
        // w = (M - 1) J0 z_s, J0 z_s = jsign * z_{-s}
        int js = s.sign > 0 ? -1 : 1;
        int col = (-s).pos(p);
        for (auto s2 : f.S) {
            mpz_class w = js * M(s2.pos(p), col);
            if (w != 0) q.add(s, s2, mpq_class(-w, 2));
        }
    }
    return q;
}

SymElem sym_product(const Vec& v, const Vec& v2, const SubgroupFrame& f) {
    SymElem q(f);
    int p = f.p;
    for (auto a : f.S)
        for (auto b : f.S) {
            mpz_class c = v[a.pos(p)] * v2[b.pos(p)];
            if (c != 0) q.add(a, b, c);
        }
    return q;
}

static Vec mat_vec(const IntMatrix& m, const Vec& v) {
    Vec out(v.size());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (v[j] != 0) out[i] += m(i, j) * v[j];
    return out;
}

static Vec neg(const Vec& v) {
    Vec out = v;
    for (auto& x : out) x = -x;
    return out;
}

bool check_a_tensor(const Vec& v, const Vec& w) {
    return u_simple(v, w).inverse() == u_simple(neg(v), w);
}

bool check_a_sym(const SymElem& q) { return uz_of(q).inverse() == uz_of(-q); }

bool check_b_tensor(const SpMatrix& d, const Vec& v, const Vec& w) {
    return d * u_simple(v, w) * d.inverse() == u_simple(mat_vec(d.matrix(), v), w);
}

bool check_b_sym(const SpMatrix& d, const Vec& v, const Vec& v2, const SubgroupFrame& f) {
    (void)f;
    return d * uz_pair(v, v2) * d.inverse() == uz_pair(mat_vec(d.matrix(), v), mat_vec(d.matrix(), v2));
}

bool check_c(const SpMatrix& d, const Vec& v, const Vec& w) {
    Vec dw = mat_vec(d.inverse().matrix().transpose(), w);
    return d * u_simple(v, w) * d.inverse() == u_simple(v, dw);
}

bool check_d(const Vec& v, const Vec& w, const Vec& v2, const Vec& w2, const SubgroupFrame& f) {
    (void)f;
    mpz_class om = omega(w, w2);
    Vec sv = v;
    for (auto& x : sv) x *= om;
    return commutator(u_simple(v, w), u_simple(v2, w2)) == uz_pair(sv, v2);
}

std::string tensor_to_json(const TensorElem& V) {
    nlohmann::json j = nlohmann::json::object();
    for (auto& [k, x] : V.coeffs) j[Root::diff(k.first, k.second, V.frame.p).str()] = x.get_str();
    return j.dump();
}

TensorElem tensor_from_json(const std::string& text, const SubgroupFrame& f) {
    auto j = nlohmann::json::parse(text);
    TensorElem V(f);
    for (auto& [key, val] : j.items()) {
        Root r = parse_root(key, f.p);
        HalfRoot s = r.s(), t = r.t();
        if (!f.in_S(s)) std::swap(s, t), s = -s, t = -t;
        if (!f.in_S(s) || !f.in_T(t)) throw std::invalid_argument("root not of the form s-t: " + key);
        mpz_class x(val.is_string() ? val.get<std::string>() : std::to_string(val.get<long long>()));
        V.add(s, t, x);
    }
    return V;
}

std::string sym_to_json(const SymElem& q) {
    nlohmann::json j = nlohmann::json::object();
    for (auto& [k, x] : q.coeffs) j[Root::diff(k.first, -k.second, q.frame.p).str()] = x.get_str();
    return j.dump();
}

SymElem sym_from_json(const std::string& text, const SubgroupFrame& f) {
    auto j = nlohmann::json::parse(text);
    SymElem q(f);
    for (auto& [key, val] : j.items()) {
        Root r = parse_root(key, f.p);
        HalfRoot a = r.s(), b = -r.t();
        mpq_class x(val.is_string() ? val.get<std::string>() : std::to_string(val.get<long long>()));
        x.canonicalize();
        q.add(a, b, x);
    }
    return q;
}

}  // namespace symp

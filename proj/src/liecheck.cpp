#include "symp/liecheck.hpp"

#include <algorithm>
#include <sstream>

namespace symp {

bool Weight::is_zero() const {
    for (auto& x : d_part)
        if (x != 0) return false;
    for (int x : e_part)
        if (x != 0) return false;
    return true;
}

Weight Weight::operator+(const Weight& o) const {
    Weight w = *this;
    for (size_t i = 0; i < w.d_part.size(); ++i) w.d_part[i] += o.d_part[i];
    for (size_t i = 0; i < w.e_part.size(); ++i) w.e_part[i] += o.e_part[i];
    return w;
}

Weight Weight::operator-() const {
    Weight w = *this;
    for (auto& x : w.d_part) x = -x;
    for (auto& x : w.e_part) x = -x;
    return w;
}

std::string Weight::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < d_part.size(); ++i) os << (i ? "," : "") << d_part[i];
    os << ";";
    for (size_t i = 0; i < e_part.size(); ++i) os << (i ? "," : "") << e_part[i];
    os << ")";
    return os.str();
}

// value of the half root h as a functional on A
static Weight half_weight(HalfRoot h, const SubgroupFrame& f) {
    Weight w;
    auto Tp = f.T_plus();
    w.d_part.assign(f.S.size(), 0);
    w.e_part.assign(Tp.size(), 0);
    for (size_t i = 0; i < f.S.size(); ++i) {
        if (f.S[i] == h) w.d_part[i] += 1;
        if (f.S[i] == -h) w.d_part[i] -= 1;
    }
    for (size_t i = 0; i < Tp.size(); ++i) {
        if (Tp[i] == h) w.e_part[i] += 1;
        if (Tp[i] == -h) w.e_part[i] -= 1;
    }
    return w;
}

Weight weight_of(const Root& a, const SubgroupFrame& f) {
    Weight w = half_weight(a.s(), f) + -half_weight(a.t(), f);
    if (!w.d_part.empty()) {
        mpq_class mean = 0;
        for (auto& x : w.d_part) mean += x;
        mean /= static_cast<long>(w.d_part.size());
        for (auto& x : w.d_part) x -= mean;
    }
    return w;
}

int GradedNilpotentAlgebra::index_of(const Root& a) const {
    auto it = std::find(basis.begin(), basis.end(), a);
    return it == basis.end() ? -1 : static_cast<int>(it - basis.begin());
}

namespace {
struct Sparse {
    std::map<std::pair<int, int>, mpz_class> e;
};

Sparse pattern(const Root& a, int p) {
    Sparse s;
    for (auto& x : elementary_pattern(a, p)) s.e[{x.row, x.col}] += x.coeff;
    return s;
}

Sparse commutator_of(const Sparse& A, const Sparse& B) {
    Sparse out;
    for (auto& [ka, va] : A.e)
        for (auto& [kb, vb] : B.e) {
            if (ka.second == kb.first) out.e[{ka.first, kb.second}] += va * vb;
            if (kb.second == ka.first) out.e[{kb.first, ka.second}] -= va * vb;
        }
    for (auto it = out.e.begin(); it != out.e.end();)
        it = it->second == 0 ? out.e.erase(it) : std::next(it);
    return out;
}
}  // namespace

GradedNilpotentAlgebra build_algebra(const SubgroupFrame& f) {
    if (f.S.empty()) throw DomainError("build_algebra: S must be nonempty");
    GradedNilpotentAlgebra g;
    g.frame = f;
    g.basis = phi_set(PhiKind::N, f);
    int p = f.p, n = g.dim();
    std::vector<Sparse> X;
    for (auto& a : g.basis) {
        X.push_back(pattern(a, p));
        g.weights.push_back(weight_of(a, f));
    }
    g.bracket.assign(n, std::vector<LieVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Sparse c = commutator_of(X[i], X[j]);
            LieVec v;
            Sparse rebuilt;
            for (auto& [k, val] : c.e) {
                auto o = oriented_root(half_root_at(k.first, p), half_root_at(k.second, p), p);
                int idx = g.index_of(o.root);
                if (idx < 0) throw std::logic_error("build_algebra: bracket leaves the algebra");
                if (v.count(idx)) continue;
                auto first = elementary_pattern(o.root, p)[0];
                mpz_class lead = c.e.count({first.row, first.col}) ? c.e[{first.row, first.col}] : mpz_class(0);
                v[idx] = mpq_class(lead * first.coeff);
            }
            for (auto& [idx, coef] : v)
                for (auto& [k, val] : X[idx].e) rebuilt.e[k] += coef.get_num() * val;
            for (auto it = rebuilt.e.begin(); it != rebuilt.e.end();)
                it = it->second == 0 ? rebuilt.e.erase(it) : std::next(it);
            if (rebuilt.e != c.e) throw std::logic_error("build_algebra: commutator not in the span of the basis");
            for (auto it = v.begin(); it != v.end();)
                it = it->second == 0 ? v.erase(it) : std::next(it);
            g.bracket[i][j] = v;
        }
    return g;
}

static void axpy(LieVec& y, const mpq_class& a, const LieVec& x) {
    for (auto& [k, v] : x) {
        y[k] += a * v;
        if (y[k] == 0) y.erase(k);
    }
}

static LieVec bracket_vec(const GradedNilpotentAlgebra& g, const LieVec& x, const LieVec& y) {
    LieVec out;
    for (auto& [i, a] : x)
        for (auto& [j, b] : y) axpy(out, a * b, g.bracket[i][j]);
    return out;
}

// wedge/sym monomials as sparse maps on sorted index pairs
using PairVec = std::map<std::pair<int, int>, mpq_class>;

static void add_wedge(PairVec& v, int i, int j, const mpq_class& c) {
    if (i == j || c == 0) return;
    if (i < j) v[{i, j}] += c;
    else v[{j, i}] -= c;
}
static void add_sym(PairVec& v, int i, int j, const mpq_class& c) {
    if (c == 0) return;
    v[{std::min(i, j), std::max(i, j)}] += c;
}
static void clean(PairVec& v) {
    for (auto it = v.begin(); it != v.end();) it = it->second == 0 ? v.erase(it) : std::next(it);
}

// d3(X_i ^ X_j ^ X_k)
static PairVec d3(const GradedNilpotentAlgebra& g, int i, int j, int k) {
    PairVec out;
    auto term = [&](int a, int b, int c) {
        for (auto& [m, v] : g.bracket[a][b]) add_wedge(out, m, c, v);
    };
    term(i, j, k), term(j, k, i), term(k, i, j);
    clean(out);
    return out;
}

AlgebraChecks check_algebra(const GradedNilpotentAlgebra& g) {
    AlgebraChecks c;
    int n = g.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LieVec s = g.bracket[i][j];
            axpy(s, 1, g.bracket[j][i]);
            if (!s.empty()) c.antisymmetric = false;
            for (auto& [k, v] : g.bracket[i][j]) {
                (void)v;
                if (!(g.weights[k] == g.weights[i] + g.weights[j])) c.additive = false;
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                LieVec a = bracket_vec(g, g.bracket[i][j], {{k, 1}});
                if (!a.empty()) c.two_step = false;
                LieVec jac = a;
                axpy(jac, 1, bracket_vec(g, g.bracket[j][k], {{i, 1}}));
                axpy(jac, 1, bracket_vec(g, g.bracket[k][i], {{j, 1}}));
                if (!jac.empty()) c.jacobi = false;
                if (i < j && j < k) {
                    LieVec dd;
                    for (auto& [m, v] : d3(g, i, j, k)) axpy(dd, v, g.bracket[m.first][m.second]);
                    if (!dd.empty()) c.chain = false;
                }
            }
    return c;
}

Space parse_space(const std::string& s) {
    if (s == "tensor2") return Space::tensor2;
    if (s == "wedge2") return Space::wedge2;
    if (s == "wedge3") return Space::wedge3;
    if (s == "sym2") return Space::sym2;
    throw std::invalid_argument("unknown space " + s);
}

static std::map<Weight, std::vector<int>> by_weight(const GradedNilpotentAlgebra& g) {
    std::map<Weight, std::vector<int>> m;
    for (int i = 0; i < g.dim(); ++i) m[g.weights[i]].push_back(i);
    return m;
}

std::vector<std::vector<int>> zero_weight_component(Space space, const GradedNilpotentAlgebra& g) {
    auto W = by_weight(g);
    std::vector<std::vector<int>> out;
    int n = g.dim();
    if (space == Space::wedge3) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto it = W.find(-(g.weights[i] + g.weights[j]));
                if (it == W.end()) continue;
                for (int k : it->second)
                    if (k > j) out.push_back({i, j, k});
            }
        return out;
    }
    for (int i = 0; i < n; ++i) {
        auto it = W.find(-g.weights[i]);
        if (it == W.end()) continue;
        for (int j : it->second) {
            bool keep = space == Space::tensor2 || (space == Space::wedge2 ? i < j : i <= j);
            if (keep) out.push_back({i, j});
        }
    }
    return out;
}

// rank over Q of integer rows, fraction-free elimination
static int rank_of(std::vector<std::vector<mpz_class>> a) {
    if (a.empty()) return 0;
    int rows = static_cast<int>(a.size()), cols = static_cast<int>(a[0].size()), r = 0;
    mpz_class prev = 1;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

static mpz_class as_int(const mpq_class& q) {
    if (q.get_den() != 1) throw std::logic_error("liecheck: non-integral structure constant");
    return q.get_num();
}

int h2_zero_dim(const GradedNilpotentAlgebra& g) {
    auto W2 = zero_weight_component(Space::wedge2, g);
    auto W3 = zero_weight_component(Space::wedge3, g);
    std::map<std::pair<int, int>, int> col2;
    for (size_t k = 0; k < W2.size(); ++k) col2[{W2[k][0], W2[k][1]}] = static_cast<int>(k);
    std::map<int, int> col1;
    for (int i = 0; i < g.dim(); ++i)
        if (g.weights[i].is_zero()) col1[i] = static_cast<int>(col1.size());
    std::vector<std::vector<mpz_class>> D2, D3;
    for (auto& w : W2) {
        std::vector<mpz_class> row(col1.size(), 0);
        for (auto& [k, v] : g.bracket[w[0]][w[1]]) row[col1.at(k)] += as_int(v);
        D2.push_back(row);
    }
    for (auto& t : W3) {
        std::vector<mpz_class> row(W2.size(), 0);
        for (auto& [m, v] : d3(g, t[0], t[1], t[2])) row[col2.at(m)] += as_int(v);
        D3.push_back(row);
    }
    int dim = static_cast<int>(W2.size());
    return dim - (col1.empty() ? 0 : rank_of(D2)) - (W2.empty() ? 0 : rank_of(D3));
}

int kill_zero_dim(const GradedNilpotentAlgebra& g) {
    auto S2 = zero_weight_component(Space::sym2, g);
    if (S2.empty()) return 0;
    std::map<std::pair<int, int>, int> col;
    for (size_t k = 0; k < S2.size(); ++k) col[{S2[k][0], S2[k][1]}] = static_cast<int>(k);
    auto W = by_weight(g);
    std::vector<std::vector<mpz_class>> R;
    int n = g.dim();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            auto it = W.find(-(g.weights[x] + g.weights[y]));
            if (it == W.end()) continue;
            for (int z : it->second) {
                PairVec v;
                for (auto& [m, c] : g.bracket[x][y]) add_sym(v, m, z, c);
                for (auto& [m, c] : g.bracket[x][z]) add_sym(v, m, y, -c);
                clean(v);
                if (v.empty()) continue;
                std::vector<mpz_class> row(S2.size(), 0);
                for (auto& [m, c] : v) row[col.at(m)] += as_int(c);
                R.push_back(row);
            }
        }
    return static_cast<int>(S2.size()) - rank_of(R);
}

std::vector<Weight> principal_weights(const GradedNilpotentAlgebra& g) {
    auto W = by_weight(g);
    std::vector<Weight> out;
    for (auto& [w, idx] : W) {
        std::map<int, int> col;
        for (int i : idx) col[i] = static_cast<int>(col.size());
        std::vector<std::vector<mpz_class>> rows;
        for (int i = 0; i < g.dim(); ++i)
            for (int j = 0; j < g.dim(); ++j) {
                if (g.bracket[i][j].empty() || !(g.weights[i] + g.weights[j] == w)) continue;
                std::vector<mpz_class> r(col.size(), 0);
                for (auto& [k, v] : g.bracket[i][j]) r[col.at(k)] += as_int(v);
                rows.push_back(r);
            }
        if (static_cast<int>(idx.size()) > rank_of(rows)) out.push_back(w);
    }
    return out;
}

bool quasi_opposite(const Weight& a, const Weight& b) {
    if (a.is_zero() || b.is_zero()) return false;
    std::vector<mpq_class> x(a.d_part), y(b.d_part);
    for (int v : a.e_part) x.push_back(v);
    for (int v : b.e_part) y.push_back(v);
    mpq_class t = 0;
    for (size_t k = 0; k < y.size(); ++k)
        if (y[k] != 0) {
            t = x[k] / y[k];
            break;
        }
    if (t >= 0) return false;
    for (size_t k = 0; k < y.size(); ++k)
        if (x[k] != t * y[k]) return false;
    return true;
}

bool check_s4_identities(const GradedNilpotentAlgebra& g) {
    const auto& f = g.frame;
    int p = f.p;
    if (f.S.size() != 4 || f.T.empty()) throw DomainError("check_s4_identities needs #S = 4 and T nonempty");
    auto idx = [&](HalfRoot a, HalfRoot b) {
        int k = g.index_of(Root::diff(a, b, p));
        if (k < 0) throw std::logic_error("check_s4_identities: root outside PhiN");
        return k;
    };
    std::vector<int> perm{0, 1, 2, 3};
    do {
        HalfRoot s1 = f.S[perm[0]], s2 = f.S[perm[1]], s3 = f.S[perm[2]], s4 = f.S[perm[3]];
        for (auto t : f.T) {
            int a = idx(s1, -t), b = idx(s2, t), c = idx(s3, -s4), target = idx(s1, -s2);
            std::pair<int, int> key{std::min(target, c), std::max(target, c)};
            PairVec w = d3(g, a, b, c);
            if (w.size() != 1 || w.begin()->first != key) return false;
            PairVec k;
            for (auto& [m, v] : g.bracket[a][b]) add_sym(k, m, c, v);
            for (auto& [m, v] : g.bracket[a][c]) add_sym(k, m, b, -v);
            clean(k);
            if (k.size() != 1 || k.begin()->first != key) return false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

SubgroupFrame standard_frame(int nS, int nT_half) {
    std::vector<HalfRoot> S, T;
    for (int i = 1; i <= nS; ++i) S.push_back({1, i});
    for (int i = nS + 1; i <= nS + nT_half; ++i) T.push_back({1, i}), T.push_back({-1, i});
    return SubgroupFrame(nS + nT_half, S, T);
}

DctReport dct_report(const SubgroupFrame& f) {
    DctReport r;
    r.nS = static_cast<int>(f.S.size());
    r.nT = static_cast<int>(f.T.size());
    auto g = build_algebra(f);
    r.dim = g.dim();
    r.checks = check_algebra(g);
    auto pw = principal_weights(g);
    r.standard_solvable = std::none_of(pw.begin(), pw.end(), [](const Weight& w) { return w.is_zero(); });
    for (auto& a : pw)
        for (auto& b : pw)
            if (quasi_opposite(a, b)) r.quasi_opposite_principal = true;
    r.h2_0 = h2_zero_dim(g);
    r.kill_0 = kill_zero_dim(g);
    r.verdict = r.standard_solvable && !r.quasi_opposite_principal && r.h2_0 == 0 && r.kill_0 == 0;
    return r;
}

std::string dct_csv_header() {
    return "nS,nT,dim,standard_solvable,quasi_opposite_principal,h2_0,kill_0,jacobi,chain,verdict";
}

std::string dct_csv_row(const DctReport& r) {
    std::ostringstream os;
    os << r.nS << "," << r.nT << "," << r.dim << "," << r.standard_solvable << "," << r.quasi_opposite_principal << ","
       << r.h2_0 << "," << r.kill_0 << "," << r.checks.jacobi << "," << r.checks.chain << "," << r.verdict;
    return os.str();
}

}  // namespace symp

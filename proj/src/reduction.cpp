#include "symp/reduction.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace symp {

bool is_positive_root(const Root& a) {
    for (int c : a.coeffs())
        if (c != 0) return c > 0;
    return false;
}

std::vector<Root> positive_roots(int p) {
    std::vector<Root> out;
    for (auto& a : all_roots(p))
        if (is_positive_root(a)) out.push_back(a);
    return out;
}

void SiegelPoint::validate() const {
    if (p < 1 || static_cast<int>(a.size()) != p) throw DomainError("SiegelPoint: need p diagonal entries");
    if (eps <= 0 || eps >= 1) throw DomainError("SiegelPoint: eps must lie in (0,1)");
    for (auto& x : a)
        if (x <= 0) throw DomainError("SiegelPoint: a entries must be positive");
    for (int i = 0; i + 1 < p; ++i)
        if (!(a[i] > eps * a[i + 1])) throw DomainError("SiegelPoint: a_i > eps a_{i+1} fails at i=" + std::to_string(i + 1));
    if (!(a[p - 1] * a[p - 1] > eps)) throw DomainError("SiegelPoint: a_p > sqrt(eps) fails");
    for (auto& [r, x] : n_coords) {
        if (r.rank() != p || !is_positive_root(r)) throw DomainError("SiegelPoint: n coordinate on a non-positive root");
        if (abs(x) > n_box) throw DomainError("SiegelPoint: n coordinate outside the box");
    }
}

RatMatrix elementary_rat(const Root& a, const mpq_class& x, int p) {
    RatMatrix m = RatMatrix::identity(2 * p);
    for (auto& e : elementary_pattern(a, p)) m(e.row, e.col) += x * e.coeff;
    return m;
}

RatMatrix diag_sp(const std::vector<mpq_class>& a) { return DiagSp{a}.matrix(); }

RatMatrix n_matrix(const SiegelPoint& pt) {
    RatMatrix n = RatMatrix::identity(2 * pt.p);
    for (auto& r : positive_roots(pt.p)) {
        auto it = pt.n_coords.find(r);
        if (it != pt.n_coords.end() && it->second != 0) n = n * elementary_rat(r, it->second, pt.p);
    }
    return n;
}

RatMatrix siegel_matrix(const SiegelPoint& pt) {
    pt.validate();
    return n_matrix(pt) * diag_sp(pt.a);
}

// ---- enumeration ----

// order 1..p, 2p..p+1 makes n a upper triangular
static std::vector<int> tri_order(int p) {
    std::vector<int> o;
    for (int i = 0; i < p; ++i) o.push_back(i);
    for (int i = 2 * p - 1; i >= p; --i) o.push_back(i);
    return o;
}

void enumerate_short(const RatMatrix& x, const mpq_class& r, long box, const std::function<void(const IntVec&)>& f) {
    int n = x.rows();
    mpq_class r2 = r * r;
    std::vector<int> ord = tri_order(n / 2);
    bool tri = true;
    for (int i = 0; i < n && tri; ++i)
        for (int j = 0; j < i; ++j)
            if (x(ord[i], ord[j]) != 0) tri = false;
    for (int i = 0; i < n && tri; ++i)
        if (x(ord[i], ord[i]) == 0) tri = false;
    if (!tri) ord.clear(), ord.resize(n);
    if (!tri)
        for (int i = 0; i < n; ++i) ord[i] = i;

    std::vector<long> v(n, 0);
    IntVec out(n);
    // partial image columns, only meaningful for tri
    std::vector<mpq_class> col(n);
    auto emit = [&]() {
        bool nz = false;
        for (long t : v) nz = nz || t != 0;
        if (!nz) return;
        if (!tri) {
            mpq_class s = 0;
            for (int j = 0; j < n; ++j) {
                mpq_class c = 0;
                for (int i = 0; i < n; ++i)
                    if (v[i]) c += v[i] * x(i, j);
                s += c * c;
            }
            if (s > r2) return;
        }
        for (int i = 0; i < n; ++i) out[i] = v[i];
        f(out);
    };
    std::function<void(int, const mpq_class&)> rec = [&](int m, const mpq_class& partial) {
        if (m == n) return emit();
        int k = ord[m];
        long lo = -box, hi = box;
        mpq_class c = 0;
        if (tri) {
            for (int j = 0; j < m; ++j)
                if (v[ord[j]]) c += v[ord[j]] * x(ord[j], k);
            const mpq_class& d = x(k, k);
            double R = std::sqrt(std::max(0.0, mpq_class(r2 - partial).get_d()));
            double cen = -c.get_d() / d.get_d(), half = R / std::fabs(d.get_d());
            lo = std::max(lo, static_cast<long>(std::floor(std::max(cen - half, -1e18))) - 1);
            hi = std::min(hi, static_cast<long>(std::ceil(std::min(cen + half, 1e18))) + 1);
        }
        mpq_class val, np;
        for (long t = lo; t <= hi; ++t) {
            v[k] = t;
            if (tri) {
                val = t * x(k, k) + c;
                np = partial + val * val;
                if (np > r2) continue;
                rec(m + 1, np);
            } else {
                rec(m + 1, partial);
            }
        }
        v[k] = 0;
    };
    rec(0, mpq_class(0));
}

// ---- HNF with combination tracking ----

static int lead(const IntVec& v) {
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) return static_cast<int>(i);
    return -1;
}

bool lattice_contains(const LatticeBasis& b, IntVec v) {
    for (auto& row : b.rows) {
        int pc = lead(row), l = lead(v);
        if (l < 0) return true;
        if (l < pc) return false;
        if (l > pc) continue;
        if (v[pc] % row[pc] != 0) return false;
        mpz_class q = v[pc] / row[pc];
        for (size_t j = 0; j < v.size(); ++j) v[j] -= q * row[j];
    }
    return lead(v) < 0;
}

static void pad(std::vector<mpz_class>& c, size_t n) {
    if (c.size() < n) c.resize(n, 0);
}

static void insert_vector(LatticeBasis& b, const IntVec& v0) {
    size_t g = b.generators.size();
    b.generators.push_back(v0);
    IntVec v = v0;
    std::vector<mpz_class> cv(g + 1, 0);
    cv[g] = 1;
    for (size_t i = 0; i < b.rows.size(); ++i) {
        int l = lead(v);
        if (l < 0) break;
        IntVec& row = b.rows[i];
        auto& cr = b.combos[i];
        pad(cr, g + 1);
        int pc = lead(row);
        if (l < pc) {
            b.rows.insert(b.rows.begin() + i, v);
            b.combos.insert(b.combos.begin() + i, cv);
            v.assign(v.size(), 0);
            break;
        }
        if (l > pc) continue;
        mpz_class gg, s, t;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), row[pc].get_mpz_t(), v[pc].get_mpz_t());
        mpz_class a = row[pc] / gg, c = v[pc] / gg;
        IntVec nr(v.size()), nv(v.size());
        for (size_t j = 0; j < v.size(); ++j) {
            nr[j] = s * row[j] + t * v[j];
            nv[j] = a * v[j] - c * row[j];
        }
        std::vector<mpz_class> ncr(g + 1), ncv(g + 1);
        for (size_t j = 0; j <= g; ++j) {
            ncr[j] = s * cr[j] + t * cv[j];
            ncv[j] = a * cv[j] - c * cr[j];
        }
        row = nr, cr = ncr, v = nv, cv = ncv;
    }
    if (lead(v) >= 0) {
        b.rows.push_back(v);
        b.combos.push_back(cv);
    }
    // normalize: positive pivots, reduced above
    for (size_t i = 0; i < b.rows.size(); ++i) {
        pad(b.combos[i], g + 1);
        int pc = lead(b.rows[i]);
        if (b.rows[i][pc] < 0) {
            for (auto& e : b.rows[i]) e = -e;
            for (auto& e : b.combos[i]) e = -e;
        }
    }
    for (size_t i = 0; i < b.rows.size(); ++i) {
        int pc = lead(b.rows[i]);
        for (size_t k = 0; k < i; ++k) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), b.rows[k][pc].get_mpz_t(), b.rows[i][pc].get_mpz_t());
            if (q == 0) continue;
            for (size_t j = 0; j < b.rows[k].size(); ++j) b.rows[k][j] -= q * b.rows[i][j];
            for (size_t j = 0; j <= g; ++j) b.combos[k][j] -= q * b.combos[i][j];
        }
    }
}

LatticeBasis v_lattice(const RatMatrix& x, const mpq_class& r, long box) {
    LatticeBasis b;
    enumerate_short(x, r, box, [&](const IntVec& v) {
        ++b.qualifying;
        if (!lattice_contains(b, v)) insert_vector(b, v);
    });
    for (auto& c : b.combos) pad(c, b.generators.size());
    return b;
}

static mpq_class image_norm2(const IntVec& v, const RatMatrix& x) {
    mpq_class s = 0;
    for (int j = 0; j < x.cols(); ++j) {
        mpq_class c = 0;
        for (int i = 0; i < x.rows(); ++i)
            if (v[i] != 0) c += v[i] * x(i, j);
        s += c * c;
    }
    return s;
}

bool verify_lattice(const LatticeBasis& b, const RatMatrix& x, const mpq_class& r, long box) {
    int prev = -1;
    for (size_t i = 0; i < b.rows.size(); ++i) {
        int pc = lead(b.rows[i]);
        if (pc <= prev || b.rows[i][pc] <= 0) return false;
        for (size_t k = 0; k < i; ++k)
            if (b.rows[k][pc] < 0 || b.rows[k][pc] >= b.rows[i][pc]) return false;
        prev = pc;
        IntVec s(b.rows[i].size(), 0);
        for (size_t g = 0; g < b.generators.size(); ++g)
            for (size_t j = 0; j < s.size(); ++j) s[j] += b.combos[i][g] * b.generators[g][j];
        if (s != b.rows[i]) return false;
    }
    for (auto& g : b.generators)
        if (image_norm2(g, x) > r * r) return false;
    bool ok = true;
    enumerate_short(x, r, box, [&](const IntVec& v) { ok = ok && lattice_contains(b, v); });
    return ok;
}

std::vector<IntVec> tail_span(int p, int from) {
    std::vector<IntVec> out;
    for (int k = from; k <= 2 * p; ++k) {
        IntVec v(2 * p, 0);
        v[k - 1] = 1;
        out.push_back(v);
    }
    return out;
}

std::string verdict_name(RshortVerdict v) {
    switch (v) {
        case RshortVerdict::confirmed: return "confirmed";
        case RshortVerdict::refuted: return "refuted";
        default: return "outside_regime";
    }
}

static RshortResult compare_with(const SiegelPoint& pt, const mpq_class& r, int from, long box) {
    RshortResult res;
    res.predicted = tail_span(pt.p, from);
    res.found = v_lattice(siegel_matrix(pt), r, box);
    res.verdict = res.found.rows == res.predicted ? RshortVerdict::confirmed : RshortVerdict::refuted;
    return res;
}

RshortResult rshort_check(const SiegelPoint& pt, int i, const mpq_class& r, const mpq_class& C, long box) {
    pt.validate();
    int p = pt.p;
    if (i < 1 || i > p) return {};
    mpq_class next = i < p ? pt.a[i] : mpq_class(1 / pt.a[p - 1]);
    if (!(pt.a[i - 1] / C > r && r > next * C)) return {};
    return compare_with(pt, r, i + 1, box);
}

RshortResult rshort_check_b(const SiegelPoint& pt, const mpq_class& C, long box) {
    pt.validate();
    if (!(pt.a[pt.p - 1] > C)) return {};
    return compare_with(pt, 1, pt.p + 1, box);
}

// ---- sweep ----

static mpq_class unit_step(std::mt19937_64& rng) {
    mpq_class u(static_cast<long>(rng() % 64) + 65, 64);
    u.canonicalize();
    return u;
}

static void random_n(SiegelPoint& pt, std::mt19937_64& rng) {
    for (auto& r : positive_roots(pt.p)) {
        long k = static_cast<long>(rng() % 17) - 8;
        if (!k) continue;
        mpq_class x(k, 16);
        x.canonicalize();
        pt.n_coords[r] = x;
    }
}

SiegelPoint random_siegel_point(int p, const mpq_class& eps, std::mt19937_64& rng) {
    SiegelPoint pt;
    pt.p = p;
    pt.eps = eps;
    pt.a.assign(p, 1);
    pt.a[p - 1] = unit_step(rng);
    for (int j = p - 2; j >= 0; --j) pt.a[j] = pt.a[j + 1] * unit_step(rng);
    random_n(pt, rng);
    pt.validate();
    return pt;
}

SweepSummary rshort_sweep(int p, const mpq_class& eps, const mpq_class& C, int count, unsigned seed, long box) {
    SweepSummary s;
    std::mt19937_64 rng(seed);
    auto tally = [&](const RshortResult& res, const SiegelPoint& pt, const mpq_class& r) {
        if (res.verdict == RshortVerdict::confirmed) ++s.confirmed;
        if (res.verdict == RshortVerdict::refuted) ++s.refuted;
        if (res.verdict == RshortVerdict::outside_regime) ++s.outside;
        if (res.verdict != RshortVerdict::outside_regime && !verify_lattice(res.found, siegel_matrix(pt), r, box))
            ++s.bad_basis;
    };
    for (int i = 1; i <= p + 1; ++i)
        for (int k = 0; k < count; ++k) {
            SiegelPoint pt;
            pt.p = p;
            pt.eps = eps;
            pt.a.assign(p, 1);
            random_n(pt, rng);
            mpq_class r = 1;
            int top;  // a[top] is set, fill outwards from it
            if (i < p) {
                pt.a[i] = C * unit_step(rng);
                r = pt.a[i] * C * unit_step(rng);
                pt.a[i - 1] = r * C * unit_step(rng);
                top = i - 1;
                for (int j = i + 1; j < p; ++j) pt.a[j] = pt.a[j - 1] / unit_step(rng);
            } else if (i == p) {
                pt.a[p - 1] = C * C * unit_step(rng);
                r = unit_step(rng);
                top = p - 1;
            } else {
                pt.a[p - 1] = C * unit_step(rng);
                top = p - 1;
            }
            for (int j = top - 1; j >= 0; --j) pt.a[j] = pt.a[j + 1] * unit_step(rng);
            try {
                pt.validate();
            } catch (const DomainError&) {
                ++s.outside;
                continue;
            }
            if (i <= p) tally(rshort_check(pt, i, r, C, box), pt, r);
            else tally(rshort_check_b(pt, C, box), pt, 1);
        }
    return s;
}

mpq_class proof_start_C(int p, const mpq_class& eps) {
    // max |entry| of n over the coordinate box: all coordinates at the corner +1/2
    SiegelPoint corner;
    corner.p = p;
    corner.a.assign(p, 1);
    for (auto& r : positive_roots(p)) corner.n_coords[r] = corner.n_box;
    mpq_class e = 1;
    for (int i = 0; i < p; ++i) e /= eps;
    return 2 * p * e * n_matrix(corner).norm_inf();
}

mpq_class calibrate_C(int p, const mpq_class& eps, int count, unsigned seed, long box, mpq_class from) {
    if (from <= 0) from = proof_start_C(p, eps);
    mpq_class C0 = 1;
    while (C0 < from) C0 *= 2;
    for (mpq_class C = C0; C <= mpq_class(1L << 40); C *= 2) {
        auto s = rshort_sweep(p, eps, C, count, seed, box);
        if (s.refuted == 0 && s.bad_basis == 0 && s.outside == 0) return C;
    }
    throw std::runtime_error("calibrate_C: no passing C up to 2^40");
}

// ---- depth proxy ----

mpq_class log2_rational(const mpq_class& q) {
    if (q <= 0) throw DomainError("log2 of a non-positive number");
    mpfr_t x;
    mpfr_init2(x, 256);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
    mpfr_log2(x, x, MPFR_RNDN);
    mpfr_mul_2si(x, x, 32, MPFR_RNDN);
    mpfr_rint(x, x, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x, MPFR_RNDN);
    mpfr_clear(x);
    mpq_class out(z, mpz_class(1) << 32);
    out.canonicalize();
    return out;
}

mpq_class depth_proxy(const SiegelPoint& pt) {
    pt.validate();
    mpq_class best = pt.eps;
    for (int i = 0; i + 1 < pt.p; ++i) best = std::max(best, mpq_class(abs(log2_rational(pt.a[i] / pt.a[i + 1]))));
    best = std::max(best, mpq_class(abs(log2_rational(pt.a[pt.p - 1] * pt.a[pt.p - 1]))));
    return best;
}

// ---- triangulation ----

namespace {

struct Quad {
    long N;
    std::vector<mpq_class> H;
    std::vector<long> size;  // leaf size per unit cell
    const mpq_class& h(long x, long y) const { return H[static_cast<size_t>(y) * (N + 1) + x]; }
    long& cell(long x, long y) { return size[static_cast<size_t>(y) * N + x]; }
    long cell_at(long x, long y) const { return size[static_cast<size_t>(y) * N + x]; }
    void mark(long x0, long y0, long s) {
        for (long y = y0; y < y0 + s; ++y)
            for (long x = x0; x < x0 + s; ++x) cell(x, y) = s;
    }
};

struct Leaf {
    long x, y, s;
};

}  // namespace

Triangulation adaptive_triangulate(long N, const GridFn& hf) {
    if (N < 1 || (N & (N - 1)) != 0) throw DomainError("triangulate: N must be a power of two");
    Quad q{N, {}, std::vector<long>(static_cast<size_t>(N) * N, N)};
    q.H.reserve(static_cast<size_t>(N + 1) * (N + 1));
    for (long y = 0; y <= N; ++y)
        for (long x = 0; x <= N; ++x) {
            mpq_class v = hf(x, y);
            if (v < 1) throw DomainError("triangulate: h < 1 at (" + std::to_string(x) + "," + std::to_string(y) + ")");
            q.H.push_back(v);
        }
    for (long y = 0; y <= N; ++y)
        for (long x = 0; x <= N; ++x) {
            if (x < N && abs(q.h(x, y) - q.h(x + 1, y)) > 1) throw DomainError("triangulate: h is not 1-Lipschitz");
            if (y < N && abs(q.h(x, y) - q.h(x, y + 1)) > 1) throw DomainError("triangulate: h is not 1-Lipschitz");
        }

    // refine while some potential vertex of the cell has h below the cell size
    std::vector<Leaf> leaves;
    std::function<void(long, long, long)> build = [&](long x0, long y0, long s) {
        bool split = false;
        if (s >= 2) {
            long hs = s / 2;
            for (long dy = 0; dy <= s && !split; dy += hs)
                for (long dx = 0; dx <= s && !split; dx += hs)
                    if (q.h(x0 + dx, y0 + dy) < s) split = true;
        }
        if (!split) {
            leaves.push_back({x0, y0, s});
            q.mark(x0, y0, s);
            return;
        }
        long hs = s / 2;
        build(x0, y0, hs), build(x0 + hs, y0, hs), build(x0, y0 + hs, hs), build(x0 + hs, y0 + hs, hs);
    };
    build(0, 0, N);

    // 2:1 balance across edges
    auto unbalanced = [&](const Leaf& L) {
        long s = L.s;
        if (s < 4) return false;
        for (long k = 0; k < s; ++k) {
            if (L.y > 0 && q.cell_at(L.x + k, L.y - 1) < s / 2) return true;
            if (L.y + s < N && q.cell_at(L.x + k, L.y + s) < s / 2) return true;
            if (L.x > 0 && q.cell_at(L.x - 1, L.y + k) < s / 2) return true;
            if (L.x + s < N && q.cell_at(L.x + s, L.y + k) < s / 2) return true;
        }
        return false;
    };
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<Leaf> next;
        for (auto& L : leaves) {
            if (unbalanced(L)) {
                long hs = L.s / 2;
                for (auto [dx, dy] : {std::pair{0L, 0L}, {hs, 0L}, {0L, hs}, {hs, hs}}) {
                    next.push_back({L.x + dx, L.y + dy, hs});
                    q.mark(L.x + dx, L.y + dy, hs);
                }
                changed = true;
            } else {
                next.push_back(L);
            }
        }
        leaves.swap(next);
    }

    Triangulation t;
    t.N = N;
    std::map<std::pair<long, long>, int> index;
    auto vid = [&](long x, long y) {
        auto [it, fresh] = index.try_emplace({x, y}, static_cast<int>(t.vertices.size()));
        if (fresh) t.vertices.push_back({x, y});
        return it->second;
    };
    std::sort(leaves.begin(), leaves.end(), [](const Leaf& a, const Leaf& b) {
        return std::tie(a.y, a.x) < std::tie(b.y, b.x);
    });
    for (auto& L : leaves) {
        long s = L.s, hs = s / 2, x0 = L.x, y0 = L.y;
        // counter-clockwise boundary, hanging midpoints included
        std::vector<std::pair<long, long>> ring;
        std::vector<bool> hanging;
        auto add = [&](long x, long y, bool hang) { ring.push_back({x, y}), hanging.push_back(hang); };
        add(x0, y0, false);
        if (s >= 2 && y0 > 0 && q.cell_at(x0, y0 - 1) < s) add(x0 + hs, y0, true);
        add(x0 + s, y0, false);
        if (s >= 2 && x0 + s < N && q.cell_at(x0 + s, y0) < s) add(x0 + s, y0 + hs, true);
        add(x0 + s, y0 + s, false);
        if (s >= 2 && y0 + s < N && q.cell_at(x0, y0 + s) < s) add(x0 + hs, y0 + s, true);
        add(x0, y0 + s, false);
        if (s >= 2 && x0 > 0 && q.cell_at(x0 - 1, y0) < s) add(x0, y0 + hs, true);
        size_t m = ring.size(), k = 0;
        while (k < m && !hanging[k]) ++k;
        if (k == m) {
            int a = vid(x0, y0), b = vid(x0 + s, y0), c = vid(x0 + s, y0 + s), d = vid(x0, y0 + s);
            t.triangles.push_back({a, b, c});
            t.triangles.push_back({a, c, d});
            continue;
        }
        int apex = vid(ring[k].first, ring[k].second);
        for (size_t j = 1; j + 1 < m; ++j) {
            auto u = ring[(k + j) % m], w = ring[(k + j + 1) % m];
            t.triangles.push_back({apex, vid(u.first, u.second), vid(w.first, w.second)});
        }
    }
    return t;
}

TriangulationReport check_triangulation(const Triangulation& t, const GridFn& h) {
    TriangulationReport rep;
    long N = t.N;
    rep.triangle_count = t.triangles.size();
    std::map<std::pair<int, int>, int> edges;
    long twice_area = 0;
    bool positive = true;
    for (auto& tri : t.triangles) {
        auto P = [&](int k) { return t.vertices[tri[k]]; };
        auto [x0, y0] = P(0);
        auto [x1, y1] = P(1);
        auto [x2, y2] = P(2);
        long cr = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0);
        if (cr <= 0) positive = false;
        twice_area += cr;
        double per = 0, sq = 0;
        for (int k = 0; k < 3; ++k) {
            int a = tri[k], b = tri[(k + 1) % 3];
            edges[{std::min(a, b), std::max(a, b)}]++;
            auto [ax, ay] = t.vertices[a];
            auto [bx, by] = t.vertices[b];
            double d2 = static_cast<double>((ax - bx) * (ax - bx) + (ay - by) * (ay - by));
            per += std::sqrt(d2);
            sq += d2;
        }
        rep.energy += per * per + sq;
    }
    bool matched = true;
    for (auto& [e, c] : edges) {
        auto [ax, ay] = t.vertices[e.first];
        auto [bx, by] = t.vertices[e.second];
        bool boundary = (ax == bx && (ax == 0 || ax == N)) || (ay == by && (ay == 0 || ay == N));
        if (c != (boundary ? 1 : 2)) matched = false;
        mpz_class d2 = (ax - bx) * (ax - bx) + (ay - by) * (ay - by);
        for (auto [x, y] : {t.vertices[e.first], t.vertices[e.second]}) {
            mpq_class hv = h(x, y);
            mpq_class lo = std::min(mpq_class(hv * hv / 36), mpq_class(N * N, 4));
            if (lo > d2 || d2 > 2 * hv * hv) ++rep.bullet1_violations;
        }
    }
    rep.tiles = positive && matched && twice_area == 2 * N * N;
    double n2 = static_cast<double>(N) * N;
    rep.K = std::max(static_cast<double>(rep.triangle_count), rep.energy) / n2;
    return rep;
}

std::string triangulation_to_json(const Triangulation& t) {
    nlohmann::json j;
    j["N"] = t.N;
    j["vertices"] = nlohmann::json::array();
    for (auto [x, y] : t.vertices) j["vertices"].push_back({x, y});
    j["triangles"] = nlohmann::json::array();
    for (auto& tri : t.triangles) j["triangles"].push_back({tri[0], tri[1], tri[2]});
    return j.dump();
}

std::string triangulation_to_svg(const Triangulation& t) {
    double sc = 512.0 / static_cast<double>(t.N);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"532\" height=\"532\">\n";
    for (auto& tri : t.triangles) {
        os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"0.5\" points=\"";
        for (int k = 0; k < 3; ++k) {
            auto [x, y] = t.vertices[tri[k]];
            os << 10 + x * sc << "," << 522 - y * sc << (k < 2 ? " " : "");
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace symp

namespace symp {

GridFn cone_field(long N, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::array<long, 3>> cones;
    int m = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < m; ++j)
        cones.push_back({static_cast<long>(rng() % (N + 1)), static_cast<long>(rng() % (N + 1)),
                         1 + static_cast<long>(rng() % 4)});
    return [cones](long x, long y) {
        long best = 1L << 40;
        for (auto& c : cones) best = std::min(best, c[2] + std::max(std::labs(x - c[0]), std::labs(y - c[1])));
        return mpq_class(best);
    };
}

}  // namespace symp

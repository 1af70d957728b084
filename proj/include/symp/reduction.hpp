#pragma once

#include <array>
#include <functional>
#include <random>
#include <map>
#include <string>
#include <vector>

#include "symp/spmat.hpp"

namespace symp {

struct SiegelPoint {
    int p = 1;
    std::map<Root, mpq_class> n_coords;  // positive roots only
    std::vector<mpq_class> a;            // a_1 .. a_p
    mpq_class eps{1, 4};
    mpq_class n_box{1, 2};  // |n coordinate| <= n_box

    void validate() const;  // throws DomainError
};

bool is_positive_root(const Root& a);
std::vector<Root> positive_roots(int p);

RatMatrix elementary_rat(const Root& a, const mpq_class& x, int p);
RatMatrix diag_sp(const std::vector<mpq_class>& a);
RatMatrix n_matrix(const SiegelPoint& pt);
RatMatrix siegel_matrix(const SiegelPoint& pt);  // n a

// ---- V(x, r) ----

using IntVec = std::vector<mpz_class>;

struct LatticeBasis {
    std::vector<IntVec> rows;                // Hermite normal form, pivots positive
    std::vector<IntVec> generators;          // qualifying vectors that enlarged the lattice
    std::vector<std::vector<mpz_class>> combos;  // rows[i] = sum combos[i][j] generators[j]
    size_t qualifying = 0;                   // vectors enumerated with ||v x|| <= r
};

// calls f for every nonzero integer row vector v, |v_i| <= box, with ||v x||_2 <= r
void enumerate_short(const RatMatrix& x, const mpq_class& r, long box, const std::function<void(const IntVec&)>& f);
LatticeBasis v_lattice(const RatMatrix& x, const mpq_class& r, long box);
bool lattice_contains(const LatticeBasis& b, IntVec v);
// HNF shape, combination identities, and membership of every qualifying vector
bool verify_lattice(const LatticeBasis& b, const RatMatrix& x, const mpq_class& r, long box);
// HNF of the span of the standard vectors z_{from} .. z_{2p} (1-based)
std::vector<IntVec> tail_span(int p, int from);

enum class RshortVerdict { confirmed, refuted, outside_regime };
std::string verdict_name(RshortVerdict v);

struct RshortResult {
    RshortVerdict verdict = RshortVerdict::outside_regime;
    std::vector<IntVec> predicted;
    LatticeBasis found;
};

// part (a): a_i / C > r > a_{i+1} C, with a_{p+1} read as 1/a_p; predicts the last 2p - i vectors
RshortResult rshort_check(const SiegelPoint& pt, int i, const mpq_class& r, const mpq_class& C, long box);
// part (b): a_p > C, r = 1; predicts the last p vectors
RshortResult rshort_check_b(const SiegelPoint& pt, const mpq_class& C, long box);

struct SweepSummary {
    int confirmed = 0, refuted = 0, outside = 0, bad_basis = 0;
};
// count in-regime random points per regime (each i in 1..p and part (b)), seeded
SweepSummary rshort_sweep(int p, const mpq_class& eps, const mpq_class& C, int count, unsigned seed, long box);
// 2p eps^-p max|n| over the coordinate box
mpq_class proof_start_C(int p, const mpq_class& eps);
// smallest power of two >= from (default: proof_start_C) for which the sweep is clean
mpq_class calibrate_C(int p, const mpq_class& eps, int count, unsigned seed, long box, mpq_class from = 0);
SiegelPoint random_siegel_point(int p, const mpq_class& eps, std::mt19937_64& rng);

// max(eps, max over simple roots |sigma(log2 a)|), rounded to 2^-32
mpq_class depth_proxy(const SiegelPoint& pt);
mpq_class log2_rational(const mpq_class& q);  // rounded to a multiple of 2^-32

// ---- adaptive triangulation ----

struct Triangulation {
    long N = 1;
    std::vector<std::pair<long, long>> vertices;
    std::vector<std::array<int, 3>> triangles;
};

using GridFn = std::function<mpq_class(long, long)>;

// throws DomainError when N is not a power of two, h < 1 or h is not 1-Lipschitz on axis neighbours
Triangulation adaptive_triangulate(long N, const GridFn& h);
// min of 1..4 seeded Chebyshev cones c + max(|x-x0|,|y-y0|), c in 1..4; 1-Lipschitz, >= 1
GridFn cone_field(long N, unsigned seed);

struct TriangulationReport {
    bool tiles = false;           // areas add up, every interior edge shared twice
    long bullet1_violations = 0;  // edges breaking min(h/6, N/2) <= d <= sqrt2 h at either endpoint
    size_t triangle_count = 0;
    double energy = 0;  // sum of squared perimeters plus squared edge lengths
    double K = 0;       // max(triangle_count, energy) / N^2
};
TriangulationReport check_triangulation(const Triangulation& t, const GridFn& h);

std::string triangulation_to_json(const Triangulation& t);
std::string triangulation_to_svg(const Triangulation& t);

}  // namespace symp

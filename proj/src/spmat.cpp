#include "symp/spmat.hpp"

#include <json.hpp>

#include <ostream>
#include <sstream>

namespace symp {

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

IntMatrix j0(int p) {
    IntMatrix J(2 * p, 2 * p);
    for (int i = 0; i < p; ++i) {
        J(i, p + i) = 1;
        J(p + i, i) = -1;
    }
    return J;
}

RatMatrix j0_rat(int p) { return to_rational(j0(p)); }

template <class M>
static bool symplectic_impl(const M& m, const M& J) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        throw std::invalid_argument("is_symplectic needs a square even-dimensional matrix");
    return m.transpose() * J * m == J;
}

bool is_symplectic(const IntMatrix& m) {
    if (m.rows() % 2) throw std::invalid_argument("odd dimension");
    return symplectic_impl(m, j0(m.rows() / 2));
}

bool is_symplectic(const RatMatrix& m) {
    if (m.rows() % 2) throw std::invalid_argument("odd dimension");
    return symplectic_impl(m, j0_rat(m.rows() / 2));
}

// J0 z_h = sigma(h) z_{-h}: sigma = -1 for +[i], +1 for -[i]
static int jsign(HalfRoot h) { return h.sign > 0 ? -1 : 1; }

std::vector<ElemEntry> elementary_pattern(const Root& a, int p) {
    if (a.rank() != p) throw std::invalid_argument("root rank does not match matrix rank");
    HalfRoot s = a.s(), t = a.t();
    if (a.is_long()) return {{s.pos(p), (-s).pos(p), 1}};
    // v + (z_t^T v) z_s + (z_s^T J0 v) J0 z_t
    return {{s.pos(p), t.pos(p), 1}, {(-t).pos(p), (-s).pos(p), -jsign(s) * jsign(t)}};
}

SpMatrix SpMatrix::identity(int p) { return trusted(IntMatrix::identity(2 * p)); }

SpMatrix SpMatrix::from_matrix(IntMatrix m) {
    if (!is_symplectic(m)) throw DomainError("matrix is not symplectic");
    return trusted(std::move(m));
}

SpMatrix SpMatrix::trusted(IntMatrix m) {
    SpMatrix s;
    s.m_ = std::move(m);
    return s;
}

SpMatrix SpMatrix::inverse() const {
    // M^-1 = -J0 M^T J0; entrywise: (M^-1)(i,j) = -J(i,k) M(l,k) J(l,j)
    int p = rank(), n = dim();
    IntMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        HalfRoot hi = half_root_at(i, p);
        int ki = (-hi).pos(p);
        int si = jsign(-hi);  // J0 row i has entry at column ki: J0(i,ki) = jsign(-hi)
        for (int j = 0; j < n; ++j) {
            HalfRoot hj = half_root_at(j, p);
            int lj = (-hj).pos(p);
            int sj = jsign(hj);  // J0(lj, j) = jsign(hj)
            out(i, j) = m_(lj, ki);
            if (si * sj > 0) out(i, j) = -out(i, j);
        }
    }
    return trusted(std::move(out));
}

void SpMatrix::left_mul(const Root& a, const mpz_class& x) {
    if (x == 0) return;
    int n = dim();
    mpz_class c;
    for (auto e : elementary_pattern(a, rank())) {
        // row e.row += coeff*x*row e.col
        c = x * e.coeff;
        for (int j = 0; j < n; ++j)
            if (m_(e.col, j) != 0) m_(e.row, j) += c * m_(e.col, j);
    }
}

void SpMatrix::right_mul(const Root& a, const mpz_class& x) {
    if (x == 0) return;
    int n = dim();
    mpz_class c;
    for (auto e : elementary_pattern(a, rank())) {
        // col e.col += coeff*x*col e.row
        c = x * e.coeff;
        for (int i = 0; i < n; ++i)
            if (m_(i, e.row) != 0) m_(i, e.col) += c * m_(i, e.row);
    }
}

SpMatrix elementary(const Root& a, const mpz_class& x, int p) {
    IntMatrix m = IntMatrix::identity(2 * p);
    for (auto e : elementary_pattern(a, p)) m(e.row, e.col) += x * e.coeff;
    return SpMatrix::trusted(std::move(m));
}

SpMatrix commutator(const SpMatrix& a, const SpMatrix& b) { return a * b * a.inverse() * b.inverse(); }

RatMatrix DiagSp::matrix() const {
    int p = static_cast<int>(a.size());
    RatMatrix m(2 * p, 2 * p);
    for (int i = 0; i < p; ++i) {
        if (a[i] <= 0) throw std::invalid_argument("DiagSp entries must be positive");
        m(i, i) = a[i];
        m(p + i, p + i) = 1 / a[i];
    }
    return m;
}

int pattern_coeff(const Root& a, HalfRoot r, HalfRoot c, int p) {
    for (auto& e : elementary_pattern(a, p))
        if (e.row == r.pos(p) && e.col == c.pos(p)) return e.coeff;
    throw std::invalid_argument("root " + a.str() + " has no entry at (" + r.str() + "," + c.str() + ")");
}

OrientedRoot oriented_root(HalfRoot r, HalfRoot c, int p) {
    Root a = r == -c ? Root::long_root(r, p) : Root::diff(r, c, p);
    return {a, pattern_coeff(a, r, c, p)};
}

std::pair<Root, mpq_class> conjugate_by_diag(const DiagSp& D, const Root& a, const mpq_class& x) {
    if (static_cast<int>(D.a.size()) != a.rank()) throw std::invalid_argument("rank mismatch");
    mpq_class y = x;
    for (int i = 0; i < a.rank(); ++i) {
        int c = a.coeffs()[i];
        for (int k = 0; k < std::abs(c); ++k) y = c > 0 ? mpq_class(y * D.a[i]) : mpq_class(y / D.a[i]);
    }
    return {a, y};
}

std::string format_matrix(const IntMatrix& m) {
    std::ostringstream os;
    os << "p=" << m.rows() / 2 << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
        os << "\n";
    }
    return os.str();
}

IntMatrix parse_matrix(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    is >> header;
    if (header.rfind("p=", 0) != 0) throw std::invalid_argument("matrix file must start with p=<rank>");
    int p = std::stoi(header.substr(2));
    if (p < 1) throw std::invalid_argument("bad rank");
    IntMatrix m(2 * p, 2 * p);
    for (int i = 0; i < 2 * p; ++i)
        for (int j = 0; j < 2 * p; ++j) {
            std::string tok;
            if (!(is >> tok)) throw std::invalid_argument("matrix file truncated");
            if (m(i, j).set_str(tok, 10) != 0) throw std::invalid_argument("bad integer: " + tok);
        }
    std::string extra;
    if (is >> extra) throw std::invalid_argument("trailing data in matrix file");
    return m;
}

std::string format_matrix_json(const IntMatrix& m) {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < m.cols(); ++k) {
            if (m(i, k).fits_slong_p()) row.push_back(m(i, k).get_si());
            else row.push_back(m(i, k).get_str());
        }
        j.push_back(row);
    }
    return j.dump();
}

IntMatrix parse_matrix_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int n = static_cast<int>(j.size());
    if (n % 2) throw std::invalid_argument("odd dimension");
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(j[i].size()) != n) throw std::invalid_argument("matrix not square");
        for (int k = 0; k < n; ++k) {
            auto& v = j[i][k];
            if (v.is_string()) {
                if (m(i, k).set_str(v.get<std::string>(), 10) != 0) throw std::invalid_argument("bad integer");
            } else if (v.is_number_integer()) {
                m(i, k) = mpz_class(std::to_string(v.get<long long>()));
            } else {
                throw std::invalid_argument("matrix entries must be integers");
            }
        }
    }
    return m;
}

std::ostream& operator<<(std::ostream& os, const SpMatrix& m) { return os << format_matrix(m.matrix()); }

}  // namespace symp

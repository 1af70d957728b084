#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "symp/roots.hpp"

namespace symp {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int r, int c) : r_(r), c_(c), d_(static_cast<size_t>(r) * c) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }

    Matrix operator*(const Matrix& o) const {
        Matrix out(r_, o.c_);
        T tmp;
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                const T& a = (*this)(i, k);
                if (sgn(a) == 0) continue;
                for (int j = 0; j < o.c_; ++j) {
                    if (sgn(o(k, j)) == 0) continue;
                    tmp = a * o(k, j);
                    out(i, j) += tmp;
                }
            }
        return out;
    }
    Matrix operator+(const Matrix& o) const {
        Matrix out = *this;
        for (size_t i = 0; i < d_.size(); ++i) out.d_[i] += o.d_[i];
        return out;
    }
    Matrix operator-(const Matrix& o) const {
        Matrix out = *this;
        for (size_t i = 0; i < d_.size(); ++i) out.d_[i] -= o.d_[i];
        return out;
    }
    Matrix transpose() const {
        Matrix out(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
    bool is_identity() const {
        if (r_ != c_) return false;
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }
    // max |entry|
    T norm_inf() const {
        T best = 0;
        for (auto& x : d_)
            if (abs(x) > best) best = abs(x);
        return best;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<T> d_;
};

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;

RatMatrix to_rational(const IntMatrix& m);
IntMatrix j0(int p);
RatMatrix j0_rat(int p);

bool is_symplectic(const IntMatrix& m);
bool is_symplectic(const RatMatrix& m);

// the (row, col, coefficient) entries of e_alpha - 1
struct ElemEntry {
    int row, col, coeff;
};
std::vector<ElemEntry> elementary_pattern(const Root& a, int p);
// coefficient (+-1) of the pattern of a at entry (r, c); throws if a has no such entry
int pattern_coeff(const Root& a, HalfRoot r, HalfRoot c, int p);
// the root with an entry at (r, c), r != c, and the sign making e_root(sign*x) carry x there
struct OrientedRoot {
    Root root;
    int sign;
};
OrientedRoot oriented_root(HalfRoot r, HalfRoot c, int p);

// Integer symplectic matrix. Construction through from_matrix checks M^T J0 M = J0.
class SpMatrix {
public:
    SpMatrix() = default;
    static SpMatrix identity(int p);
    static SpMatrix from_matrix(IntMatrix m);  // throws DomainError if not symplectic
    static SpMatrix trusted(IntMatrix m);      // caller guarantees the invariant

    int rank() const { return m_.rows() / 2; }
    int dim() const { return m_.rows(); }
    const mpz_class& operator()(int i, int j) const { return m_(i, j); }
    const mpz_class& at(HalfRoot r, HalfRoot c) const { return m_(r.pos(rank()), c.pos(rank())); }
    const IntMatrix& matrix() const { return m_; }

    SpMatrix operator*(const SpMatrix& o) const { return trusted(m_ * o.m_); }
    SpMatrix inverse() const;  // -J0 M^T J0
    bool operator==(const SpMatrix& o) const { return m_ == o.m_; }
    bool is_identity() const { return m_.is_identity(); }
    mpz_class norm_inf() const { return m_.norm_inf(); }

    // M <- e_a(x) M and M <- M e_a(x), in place
    void left_mul(const Root& a, const mpz_class& x);
    void right_mul(const Root& a, const mpz_class& x);

private:
    IntMatrix m_;
};

SpMatrix elementary(const Root& a, const mpz_class& x, int p);
SpMatrix commutator(const SpMatrix& a, const SpMatrix& b);  // a b a^-1 b^-1

struct DiagSp {
    std::vector<mpq_class> a;
    RatMatrix matrix() const;
};
std::pair<Root, mpq_class> conjugate_by_diag(const DiagSp& D, const Root& a, const mpq_class& x);

// text format: "p=<rank>" then 2p rows of integers
std::string format_matrix(const IntMatrix& m);
IntMatrix parse_matrix(const std::string& text);
std::string format_matrix_json(const IntMatrix& m);
IntMatrix parse_matrix_json(const std::string& text);

std::ostream& operator<<(std::ostream& os, const SpMatrix& m);

}  // namespace symp

#pragma once

#include "skewform/rational.hpp"

#include <cstddef>
#include <vector>

namespace skewform {

/*
 * Dense matrix of exact rationals, row-major. Used both for elements of
 * the ambient matrix algebra and for coefficient blocks of alternating
 * forms (scalars are carried as 1x1 matrices so the form calculus has a
 * single coefficient type).
 */
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static RatMatrix identity(std::size_t n);
    static RatMatrix scalar1x1(const Rational& v);
    static RatMatrix elementary(std::size_t n, std::size_t i, std::size_t j);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    const std::vector<Rational>& entries() const { return e_; }

    bool is_zero() const;
    bool is_scalar() const { return rows_ == 1 && cols_ == 1; }

    RatMatrix transpose() const;
    Rational trace() const;

    RatMatrix& operator+=(const RatMatrix& o);
    RatMatrix& operator-=(const RatMatrix& o);
    friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
    friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
    RatMatrix operator-() const;
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rational& s, const RatMatrix& a);

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

// a*b - b*a; both square of the same size.
RatMatrix commutator(const RatMatrix& a, const RatMatrix& b);

// acc += (or -=) a*b, with 1x1 factors acting as scalars. In-place and
// allocation-free in steady state; the workhorse of the wedge kernel.
void addmul_product(RatMatrix& acc, const RatMatrix& a, const RatMatrix& b, bool negate);

}  // namespace skewform

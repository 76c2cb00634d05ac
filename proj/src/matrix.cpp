#include "skewform/matrix.hpp"

#include <stdexcept>

namespace skewform {

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::scalar1x1(const Rational& v) {
    RatMatrix m(1, 1);
    m.at(0, 0) = v;
    return m;
}

RatMatrix RatMatrix::elementary(std::size_t n, std::size_t i, std::size_t j) {
    RatMatrix m(n, n);
    m.at(i, j) = 1;
    return m;
}

bool RatMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero())
            return false;
    return true;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

Rational RatMatrix::trace() const {
    if (!is_square())
        throw std::invalid_argument("trace: matrix not square");
    Rational t;
    for (std::size_t i = 0; i < rows_; ++i)
        t += at(i, i);
    return t;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix add: shape mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i)
        e_[i] += o.e_[i];
    return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix sub: shape mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i)
        e_[i] -= o.e_[i];
    return *this;
}

RatMatrix RatMatrix::operator-() const {
    RatMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i)
        m.e_[i] = -e_[i];
    return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix mul: shape mismatch");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a.at(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Rational& bkj = b.at(k, j);
                if (!bkj.is_zero())
                    c.at(i, j) += aik * bkj;
            }
        }
    return c;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
    RatMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i)
        c.e_[i] = s * a.e_[i];
    return c;
}

RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) {
    return a * b - b * a;
}

void addmul_product(RatMatrix& acc, const RatMatrix& a, const RatMatrix& b, bool negate) {
    auto fma = [negate](Rational& slot, const Rational& x, const Rational& y) {
        if (negate)
            slot.submul(x, y);
        else
            slot.addmul(x, y);
    };
    if (a.is_scalar() && !b.is_scalar()) {
        const Rational& s = a.at(0, 0);
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                if (!b.at(r, c).is_zero())
                    fma(acc.at(r, c), s, b.at(r, c));
        return;
    }
    if (b.is_scalar() && !a.is_scalar()) {
        const Rational& s = b.at(0, 0);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                if (!a.at(r, c).is_zero())
                    fma(acc.at(r, c), a.at(r, c), s);
        return;
    }
    if (a.cols() != b.rows() || acc.rows() != a.rows() || acc.cols() != b.cols())
        throw std::invalid_argument("addmul_product: shape mismatch");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a.at(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b.at(k, j).is_zero())
                    fma(acc.at(i, j), aik, b.at(k, j));
        }
}

}  // namespace skewform

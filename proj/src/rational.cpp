#include "skewform/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace skewform {

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0)
        throw std::invalid_argument("Rational: zero denominator");
    q_.canonicalize();
}

Rational::Rational(const Int& num, const Int& den) : q_(num, den) {
    if (sgn(den) == 0)
        throw std::invalid_argument("Rational: zero denominator");
    q_.canonicalize();
}

Rational Rational::from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    q.canonicalize();
    Rational r;
    r.q_ = q;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

namespace {
mpq_class& scratch() {
    static thread_local mpq_class tmp;
    return tmp;
}
}  // namespace

void Rational::addmul(const Rational& a, const Rational& b) {
    mpq_class& tmp = scratch();
    mpq_mul(tmp.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    mpq_add(q_.get_mpq_t(), q_.get_mpq_t(), tmp.get_mpq_t());
}

void Rational::submul(const Rational& a, const Rational& b) {
    mpq_class& tmp = scratch();
    mpq_mul(tmp.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    mpq_sub(q_.get_mpq_t(), q_.get_mpq_t(), tmp.get_mpq_t());
}

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

Rational Rational::abs() const {
    Rational r;
    r.q_ = ::abs(q_);
    return r;
}

std::string Rational::str() const {
    return q_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.q_;
}

}  // namespace skewform

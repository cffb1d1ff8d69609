#include "ainerve/scalar.hpp"

namespace ain {

unsigned long Scalar::prime_ = 0;

void Scalar::set_prime(unsigned long p) {
  if (p == 1) throw math_error("modulus must be prime");
  if (p > 1) {
    mpz_class z(p);
    if (mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) throw math_error("modulus must be prime");
  }
  prime_ = p;
}

void Scalar::reduce() {
  if (prime_ == 0) return;
  mpz_class p(prime_);
  mpz_class num = q_.get_num() % p, den = q_.get_den() % p;
  if (den == 0) throw math_error("denominator vanishes mod p");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  num = (num * inv) % p;
  if (num < 0) num += p;
  q_ = mpq_class(num);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw math_error("division by zero");
  q_ /= o.q_;
  reduce();
  return *this;
}

Scalar Scalar::parse(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw math_error("bad scalar '" + s + "'");
  if (q.get_den() == 0) throw math_error("bad scalar '" + s + "'");
  return Scalar(q);
}

std::string Scalar::str() const { return q_.get_str(); }

bool is_zero(const Vec& v) {
  for (auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec& axpy(Vec& y, const Scalar& a, const Vec& x) {
  if (y.size() != x.size()) throw math_error("vector size mismatch");
  if (a.is_zero()) return y;
  for (size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
  return y;
}

Vec operator+(const Vec& a, const Vec& b) { Vec r = a; return axpy(r, Scalar(1), b); }
Vec operator-(const Vec& a, const Vec& b) { Vec r = a; return axpy(r, Scalar(-1), b); }
Vec operator*(const Scalar& a, const Vec& v) {
  Vec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = a * v[i];
  return r;
}

}  // namespace ain

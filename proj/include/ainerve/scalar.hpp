#pragma once
#include <gmpxx.h>
#include <string>
#include <vector>
#include <stdexcept>

namespace ain {

struct math_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact field element. Rational by default; when a prime modulus is set
// (process-wide, before any arithmetic) values are reduced into [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) { reduce(); }
  Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); reduce(); }

  static void set_prime(unsigned long p);  // 0 = rational mode
  static unsigned long prime() { return prime_; }
  static Scalar parse(const std::string& s);

  bool is_zero() const { return sgn(q_) == 0; }
  const mpq_class& raw() const { return q_; }
  std::string str() const;

  Scalar operator-() const { return Scalar(mpq_class(-q_)); }
  Scalar& operator+=(const Scalar& o) { q_ += o.q_; reduce(); return *this; }
  Scalar& operator-=(const Scalar& o) { q_ -= o.q_; reduce(); return *this; }
  Scalar& operator*=(const Scalar& o) { q_ *= o.q_; reduce(); return *this; }
  Scalar& operator/=(const Scalar& o);
  Scalar inv() const { Scalar one(1); one /= *this; return one; }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  void reduce();
  mpq_class q_;
  static unsigned long prime_;
};

inline Scalar sign(long e) { return Scalar((e % 2 == 0) ? 1 : -1); }

using Vec = std::vector<Scalar>;

bool is_zero(const Vec& v);
Vec& axpy(Vec& y, const Scalar& a, const Vec& x);  // y += a x
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& a, const Vec& v);

}  // namespace ain

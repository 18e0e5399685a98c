#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace stratifold {

using BigInt = boost::multiprecision::cpp_int;
// Coefficients in ascending degree.
using IntPoly = std::vector<BigInt>;

IntPoly cyclotomic_polynomial(int n);
// Minimal polynomial of 2cos(pi/L), monic, degree phi(2L)/2.
IntPoly minimal_polynomial(int L);
std::string format_poly(const IntPoly& p, char var = 'y');

// Z[theta] with theta = 2cos(pi/L); elements are integer polynomials in
// theta reduced modulo the minimal polynomial. 2cos(pi/m) is an algebraic
// integer for every m | L, so no denominators ever appear.
class CosineField {
 public:
  using Elem = std::vector<BigInt>;  // length degree()

  explicit CosineField(int L);

  int L() const { return L_; }
  int degree() const { return static_cast<int>(psi_.size()) - 1; }
  const IntPoly& psi() const { return psi_; }
  double theta() const { return theta_; }

  Elem zero() const;
  Elem one() const;
  Elem from_int(long v) const;
  // 2cos(pi/m); m must divide L.
  Elem two_cos_pi_over(int m) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;
  double to_double(const Elem& a) const;
  // Reduces an arbitrary-degree polynomial in theta.
  Elem reduce(IntPoly p) const;

 private:
  int L_;
  IntPoly psi_;
  double theta_;
};

class Matrix3 {
 public:
  using Elem = CosineField::Elem;

  Matrix3() = default;
  static Matrix3 identity(const CosineField& f);

  Elem& at(int i, int j) { return m_[i][j]; }
  const Elem& at(int i, int j) const { return m_[i][j]; }

  Matrix3 mul(const Matrix3& o, const CosineField& f) const;
  bool is_identity(const CosineField& f) const;
  bool equals(const Matrix3& o) const { return m_ == o.m_; }
  std::array<std::array<double, 3>, 3> to_double(const CosineField& f) const;

 private:
  std::array<std::array<Elem, 3>, 3> m_;
};

}  // namespace stratifold

#include "stratifold/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "stratifold/errors.hpp"

namespace stratifold {

namespace {

void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

// Exact division by a monic polynomial.
IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() - 1 < dn) throw Error(ErrorKind::InvariantViolation, "polynomial division degree");
  IntPoly q(num.size() - dn, BigInt(0));
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (const auto& r : num) {
    if (r != 0) throw Error(ErrorKind::InvariantViolation, "inexact polynomial division");
  }
  return q;
}

}  // namespace

IntPoly cyclotomic_polynomial(int n) {
  static std::map<int, IntPoly> cache;
  if (n < 1) throw Error(ErrorKind::InvariantViolation, "cyclotomic index must be positive");
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  IntPoly p(static_cast<std::size_t>(n) + 1, BigInt(0));
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
  }
  cache.emplace(n, p);
  return p;
}

IntPoly minimal_polynomial(int L) {
  if (L < 1) throw Error(ErrorKind::InvariantViolation, "minimal_polynomial needs L >= 1");
  if (L == 1) return {BigInt(2), BigInt(1)};  // theta = -2
  const IntPoly phi = cyclotomic_polynomial(2 * L);
  const std::size_t k = (phi.size() - 1) / 2;
  // x^-k Phi(x) = a_k + sum_j a_{k+j} (x^j + x^-j), and x^j + x^-j = T_j(y)
  // with T_0 = 2, T_1 = y, T_{j+1} = y T_j - T_{j-1}.
  IntPoly t_prev{BigInt(2)}, t_cur{BigInt(0), BigInt(1)};
  IntPoly psi(k + 1, BigInt(0));
  psi[0] = phi[k];
  for (std::size_t j = 1; j <= k; ++j) {
    const BigInt& a = phi[k + j];
    for (std::size_t i = 0; i < t_cur.size(); ++i) psi[i] += a * t_cur[i];
    IntPoly next = poly_mul({BigInt(0), BigInt(1)}, t_cur);
    for (std::size_t i = 0; i < t_prev.size(); ++i) next[i] -= t_prev[i];
    t_prev = std::move(t_cur);
    t_cur = std::move(next);
  }
  trim(psi);
  return psi;
}

std::string format_poly(const IntPoly& p, char var) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    const BigInt& c = p[i];
    if (c == 0) continue;
    BigInt a = c < 0 ? BigInt(-c) : c;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << '-';
    first = false;
    if (i == 0 || a != 1) out << a;
    if (i >= 1) out << var;
    if (i >= 2) out << '^' << i;
  }
  if (first) out << '0';
  return out.str();
}

CosineField::CosineField(int L)
    : L_(L), psi_(minimal_polynomial(L)), theta_(2.0 * std::cos(std::numbers::pi / L)) {}

CosineField::Elem CosineField::zero() const { return Elem(degree(), BigInt(0)); }

CosineField::Elem CosineField::one() const { return from_int(1); }

CosineField::Elem CosineField::from_int(long v) const {
  Elem e = zero();
  if (degree() > 0) e[0] = v;
  return e;
}

CosineField::Elem CosineField::reduce(IntPoly p) const {
  const std::size_t d = static_cast<std::size_t>(degree());
  for (std::size_t i = p.size(); i-- > d;) {
    const BigInt c = p[i];
    if (c == 0) continue;
    // psi is monic: theta^d = -(psi_0 + ... + psi_{d-1} theta^{d-1}).
    for (std::size_t j = 0; j <= d; ++j) p[i - d + j] -= c * psi_[j];
  }
  p.resize(d, BigInt(0));
  return p;
}

CosineField::Elem CosineField::two_cos_pi_over(int m) const {
  if (m < 1 || L_ % m != 0) throw Error(ErrorKind::InvariantViolation, "2cos(pi/m) needs m | L");
  const int j = L_ / m;
  IntPoly t_prev{BigInt(2)}, t_cur{BigInt(0), BigInt(1)};
  if (j == 0) return reduce(t_prev);
  for (int i = 1; i < j; ++i) {
    IntPoly next = poly_mul({BigInt(0), BigInt(1)}, t_cur);
    for (std::size_t s = 0; s < t_prev.size(); ++s) next[s] -= t_prev[s];
    t_prev = std::move(t_cur);
    t_cur = std::move(next);
  }
  return reduce(t_cur);
}

CosineField::Elem CosineField::add(const Elem& a, const Elem& b) const {
  Elem out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

CosineField::Elem CosineField::sub(const Elem& a, const Elem& b) const {
  Elem out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

CosineField::Elem CosineField::mul(const Elem& a, const Elem& b) const {
  if (degree() == 0) return {};
  return reduce(poly_mul(a, b));
}

bool CosineField::is_zero(const Elem& a) const {
  for (const auto& c : a) {
    if (c != 0) return false;
  }
  return true;
}

double CosineField::to_double(const Elem& a) const {
  double acc = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * theta_ + a[i].convert_to<double>();
  return acc;
}

Matrix3 Matrix3::identity(const CosineField& f) {
  Matrix3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.m_[i][j] = i == j ? f.one() : f.zero();
  }
  return m;
}

Matrix3 Matrix3::mul(const Matrix3& o, const CosineField& f) const {
  Matrix3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      IntPoly acc(static_cast<std::size_t>(std::max(1, 2 * f.degree() - 1)), BigInt(0));
      for (int k = 0; k < 3; ++k) {
        const auto& a = m_[i][k];
        const auto& b = o.m_[k][j];
        for (std::size_t s = 0; s < a.size(); ++s) {
          if (a[s] == 0) continue;
          for (std::size_t t = 0; t < b.size(); ++t) acc[s + t] += a[s] * b[t];
        }
      }
      out.m_[i][j] = f.reduce(std::move(acc));
    }
  }
  return out;
}

bool Matrix3::is_identity(const CosineField& f) const {
  const auto one = f.one();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j ? m_[i][j] != one : !f.is_zero(m_[i][j])) return false;
    }
  }
  return true;
}

std::array<std::array<double, 3>, 3> Matrix3::to_double(const CosineField& f) const {
  std::array<std::array<double, 3>, 3> out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = f.to_double(m_[i][j]);
  }
  return out;
}

}  // namespace stratifold

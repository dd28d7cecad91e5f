#include "pumb/poly.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace pmb {

namespace {

struct MonomialTable {
  std::vector<std::array<int, 3>> monos;           // ordered by total degree
  std::vector<int> index;                          // (i*(D+1)+j)*(D+1)+k -> id
  int deg;
};

const MonomialTable& table(int deg) {
  static std::array<MonomialTable, Poly3::kMaxDeg + 1> tabs;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int d = 0; d <= Poly3::kMaxDeg; ++d) {
      MonomialTable& t = tabs[d];
      t.deg = d;
      t.index.assign((d + 1) * (d + 1) * (d + 1), -1);
      for (int total = 0; total <= d; ++total)
        for (int i = total; i >= 0; --i)
          for (int j = total - i; j >= 0; --j) {
            int k = total - i - j;
            t.index[(i * (d + 1) + j) * (d + 1) + k] =
                static_cast<int>(t.monos.size());
            t.monos.push_back({i, j, k});
          }
    }
  });
  return tabs[deg];
}

}  // namespace

Poly3::Poly3(int deg) : deg_(deg) {
  if (deg < 0 || deg > kMaxDeg) throw Error(Err::InvalidArg, "Poly3: bad degree");
  c_.assign(table(deg).monos.size(), 0.0);
}

int Poly3::index_of(int deg, int i, int j, int k) {
  const MonomialTable& t = table(deg);
  if (i < 0 || j < 0 || k < 0 || i + j + k > deg) return -1;
  return t.index[(i * (deg + 1) + j) * (deg + 1) + k];
}

const std::vector<std::array<int, 3>>& Poly3::monomials(int deg) {
  return table(deg).monos;
}

double& Poly3::at(int i, int j, int k) {
  int id = index_of(deg_, i, j, k);
  if (id < 0) throw Error(Err::InvalidArg, "Poly3::at: exponent out of range");
  return c_[id];
}

double Poly3::at(int i, int j, int k) const {
  int id = index_of(deg_, i, j, k);
  return id < 0 ? 0.0 : c_[id];
}

double Poly3::eval(const Vec3& u) const {
  // Horner-free monomial sum with cached powers; polynomials are tiny.
  double p1[kMaxDeg + 1], p2[kMaxDeg + 1], p3[kMaxDeg + 1];
  p1[0] = p2[0] = p3[0] = 1.0;
  for (int d = 1; d <= deg_; ++d) {
    p1[d] = p1[d - 1] * u[0];
    p2[d] = p2[d - 1] * u[1];
    p3[d] = p3[d - 1] * u[2];
  }
  const auto& monos = table(deg_).monos;
  double s = 0.0;
  for (std::size_t n = 0; n < c_.size(); ++n) {
    if (c_[n] != 0.0) s += c_[n] * p1[monos[n][0]] * p2[monos[n][1]] * p3[monos[n][2]];
  }
  return s;
}

Poly3 Poly3::diff(int var) const {
  Poly3 r(deg_);
  const auto& monos = table(deg_).monos;
  for (std::size_t n = 0; n < c_.size(); ++n) {
    if (c_[n] == 0.0) continue;
    std::array<int, 3> m = monos[n];
    int e = m[var];
    if (e == 0) continue;
    m[var] -= 1;
    r.c_[index_of(deg_, m[0], m[1], m[2])] += e * c_[n];
  }
  return r;
}

Poly3 Poly3::truncated(int deg) const {
  Poly3 r(deg);
  const auto& monos = table(deg_).monos;
  for (std::size_t n = 0; n < c_.size(); ++n) {
    const auto& m = monos[n];
    int id = index_of(deg, m[0], m[1], m[2]);
    if (id >= 0) r.c_[id] = c_[n];
  }
  return r;
}

Poly3 Poly3::operator+(const Poly3& o) const {
  if (o.deg_ != deg_) throw Error(Err::InvalidArg, "Poly3: degree mismatch");
  Poly3 r(*this);
  for (std::size_t n = 0; n < c_.size(); ++n) r.c_[n] += o.c_[n];
  return r;
}

Poly3 Poly3::operator-(const Poly3& o) const {
  if (o.deg_ != deg_) throw Error(Err::InvalidArg, "Poly3: degree mismatch");
  Poly3 r(*this);
  for (std::size_t n = 0; n < c_.size(); ++n) r.c_[n] -= o.c_[n];
  return r;
}

Poly3 Poly3::operator*(double s) const {
  Poly3 r(*this);
  for (double& v : r.c_) v *= s;
  return r;
}

Poly3& Poly3::operator+=(const Poly3& o) {
  if (o.deg_ != deg_) throw Error(Err::InvalidArg, "Poly3: degree mismatch");
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
  return *this;
}

Poly3 Poly3::mul(const Poly3& o) const {
  if (o.deg_ != deg_) throw Error(Err::InvalidArg, "Poly3: degree mismatch");
  Poly3 r(deg_);
  const auto& monos = table(deg_).monos;
  for (std::size_t p = 0; p < c_.size(); ++p) {
    if (c_[p] == 0.0) continue;
    const auto& mp = monos[p];
    int dp = mp[0] + mp[1] + mp[2];
    for (std::size_t q = 0; q < o.c_.size(); ++q) {
      if (o.c_[q] == 0.0) continue;
      const auto& mq = monos[q];
      if (dp + mq[0] + mq[1] + mq[2] > deg_) continue;
      r.c_[index_of(deg_, mp[0] + mq[0], mp[1] + mq[1], mp[2] + mq[2])] +=
          c_[p] * o.c_[q];
    }
  }
  return r;
}

Poly3 Poly3::compose(const std::array<Poly3, 3>& inner) const {
  // Build powers of the inner polynomials incrementally by total degree.
  Poly3 r(deg_);
  std::array<std::vector<Poly3>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].reserve(deg_ + 1);
    Poly3 one(deg_);
    one.at(0, 0, 0) = 1.0;
    pw[v].push_back(one);
    for (int e = 1; e <= deg_; ++e) pw[v].push_back(pw[v][e - 1].mul(inner[v]));
  }
  const auto& monos = table(deg_).monos;
  for (std::size_t n = 0; n < c_.size(); ++n) {
    if (c_[n] == 0.0) continue;
    const auto& m = monos[n];
    Poly3 term = pw[0][m[0]].mul(pw[1][m[1]]).mul(pw[2][m[2]]);
    r += term * c_[n];
  }
  return r;
}

Poly3 Poly3::reciprocal() const {
  double c0 = c_[0];
  if (c0 == 0.0) throw Error(Err::InvalidArg, "Poly3::reciprocal: zero constant term");
  Poly3 x(*this);
  x.c_[0] = 0.0;
  x = x * (1.0 / c0);
  Poly3 acc(deg_);
  acc.at(0, 0, 0) = 1.0;
  Poly3 sum = acc;
  for (int n = 0; n < deg_; ++n) {
    acc = acc.mul(x) * (-1.0);
    sum += acc;
  }
  return sum * (1.0 / c0);
}

double Poly3::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace pmb

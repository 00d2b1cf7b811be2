#include "torvan/ktheory.hpp"

#include <sstream>

namespace torvan {

namespace {

// Coefficients of t^e = (1-u)^e modulo u^{n+1}, e possibly negative.
std::vector<long long> power_in_u(int e, int n) {
  std::vector<long long> c(n + 1, 0);
  if (e >= 0) {
    long long binom = 1;
    for (int k = 0; k <= n; ++k) {
      if (k > e) break;
      c[k] = (k % 2 == 0) ? binom : -binom;
      binom = binom * (e - k) / (k + 1);
    }
  } else {
    long long m = -e;  // (1-u)^{-m} = sum_k C(m+k-1, k) u^k
    long long binom = 1;
    for (int k = 0; k <= n; ++k) {
      c[k] = binom;
      binom = binom * (m + k) / (k + 1);
    }
  }
  return c;
}

}  // namespace

KClass kclass_projective(const ZPoly& kpoly, int n) {
  KClass k;
  k.projective = true;
  k.n = n;
  k.basis_coords.assign(n + 1, 0);
  for (const auto& [e, v] : kpoly.coeffs()) {
    auto c = power_in_u(e, n);
    for (int i = 0; i <= n; ++i) k.basis_coords[i] += v * c[i];
  }
  // Canonical t-representative: sum of coords * (1-t)^k.
  ZPoly one_minus_t = ZPoly::from_int(1) - ZPoly::t_power(1);
  ZPoly acc;
  ZPoly pw = ZPoly::from_int(1);
  for (int i = 0; i <= n; ++i) {
    acc = acc + ZPoly::from_int(k.basis_coords[i]) * pw;
    pw = pw * one_minus_t;
  }
  k.tpoly = acc;
  return k;
}

KClass kclass_cone(const ZPoly& kpoly) {
  KClass k;
  k.projective = false;
  k.tpoly = kpoly;
  return k;
}

bool operator==(const KClass& a, const KClass& b) {
  if (a.projective != b.projective) return false;
  if (a.projective) return a.n == b.n && a.basis_coords == b.basis_coords;
  return a.tpoly == b.tpoly;
}

std::string KClass::str() const {
  std::ostringstream os;
  os << tpoly.str();
  if (projective) {
    os << "  [";
    for (std::size_t i = 0; i < basis_coords.size(); ++i) {
      if (i) os << ", ";
      os << basis_coords[i];
    }
    os << "] in (1-t)-basis mod (1-t)^" << (n + 1);
  }
  return os.str();
}

KClass kclass_of_module(const Presentation& m, std::optional<int> projective_n) {
  ZPoly np = k_polynomial(m);
  if (projective_n) return kclass_projective(np, *projective_n);
  return kclass_cone(np);
}

KClass euler_tor_sum(const Presentation& e, const Presentation& f, const GroupElement& g,
                     const ActionSpec& action, int i_max, std::optional<int> projective_n) {
  Presentation gf = translate_module(f, g, action);
  std::vector<HomologyModule> tors = tor(e, gf, i_max);
  ZPoly acc;
  for (int i = 0; i <= i_max; ++i) {
    ZPoly ki = k_polynomial(tors[i].pres);
    acc = (i % 2 == 0) ? acc + ki : acc - ki;
  }
  if (projective_n) return kclass_projective(acc, *projective_n);
  return kclass_cone(acc);
}

}  // namespace torvan
